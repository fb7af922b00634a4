#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kgrid/volume.hpp"

namespace kgrid {

enum class SuiteScale { small, full };

/// One benchmark configuration: a centered digital ball in a given image.
/// Expected counts of 0 mean "no reference value, check cross-method
/// agreement only".
struct BenchCase {
    std::string name;
    std::vector<std::uint64_t> sizes;
    std::uint64_t radius = 0;
    std::uint64_t expected_spels = 0;
    std::uint64_t expected_surfels = 0;
};

/// The ball suite: six reference rows at full scale, the rows that fit a CI
/// budget (both 128-cubed rows plus a small 4D case) at small scale.
std::vector<BenchCase> ball_suite(SuiteScale scale);

struct MethodTiming {
    std::string method;
    std::uint64_t surfels = 0;
    double seconds = 0.0;
    double ns_per_surfel = 0.0;
};

struct BenchRecord {
    BenchCase config;
    std::uint64_t spels = 0;
    double generate_seconds = 0.0;
    std::vector<MethodTiming> methods;
    bool counts_match = true;  ///< methods agree and reference counts hit
};

/// Generates the case's ball and runs every boundary method on it.
BenchRecord run_case(const BenchCase& c);

std::vector<BenchRecord> run_suite(SuiteScale scale);

/// Aligned text table, one row per (case, method).
std::string render_table(const std::vector<BenchRecord>& records);

/// CSV with a header row, one data row per (case, method).
std::string render_csv(const std::vector<BenchRecord>& records);

}  // namespace kgrid
