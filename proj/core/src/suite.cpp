#include "kgrid/suite.hpp"

#include <chrono>
#include <cstdio>
#include <utility>

#include "kgrid/tracking.hpp"

namespace kgrid {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<std::uint64_t> centered(const std::vector<std::uint64_t>& sizes) {
    std::vector<std::uint64_t> c(sizes);
    for (auto& v : c) v /= 2;
    return c;
}

Cell first_spel(const VolumeImage& image) {
    std::uint64_t found = 0;
    bool any = false;
    image.spels.for_each_code([&](std::uint64_t code) {
        if (!any) {
            found = code;
            any = true;
        }
    });
    return Cell{found};
}

MethodTiming time_method(const std::string& name, const VolumeImage& image) {
    const Space& s = image.space;
    MethodTiming t;
    t.method = name;
    const auto t0 = Clock::now();
    if (name == "scan-a") {
        t.surfels = scan_full(s, image.spels).cardinality();
    } else if (name == "scan-b") {
        const auto box = spel_bounds(s, image.spels);
        if (!box) {
            t.surfels = 0;
        } else {
            t.surfels = scan_box(s, image.spels, box->first, box->second).cardinality();
        }
    } else {
        const SignedCell start = find_start_bel(s, image.spels, first_spel(image));
        const BelAdjacency adj = BelAdjacency::all_interior(s.dimension());
        if (name == "track-a") {
            t.surfels = track_any(s, image.spels, start, adj).bel_count();
        } else if (name == "track-b") {
            t.surfels = track_closed(s, image.spels, start, adj).bel_count();
        } else {
            t.surfels = track_closed_tail(s, image.spels, start, adj).bel_count();
        }
    }
    t.seconds = seconds_since(t0);
    if (t.surfels > 0) t.ns_per_surfel = t.seconds * 1e9 / static_cast<double>(t.surfels);
    return t;
}

std::string format_double(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

}  // namespace

std::vector<BenchCase> ball_suite(SuiteScale scale) {
    if (scale == SuiteScale::small) {
        return {
            {"ball-128-r30", {128, 128, 128}, 30, 113081, 16926},
            {"ball-128-r60", {128, 128, 128}, 60, 904089, 67734},
            {"ball-64x4-r10", {64, 64, 64, 64}, 10, 0, 0},
        };
    }
    return {
        {"ball-4096sq-r2000", {4096, 4096}, 2000, 12566345, 16004},
        {"ball-128-r30", {128, 128, 128}, 30, 113081, 16926},
        {"ball-128-r60", {128, 128, 128}, 60, 904089, 67734},
        {"ball-256-r120", {256, 256, 256}, 120, 7236577, 271350},
        {"ball-512-r240", {512, 512, 512}, 240, 57902533, 1085502},
        {"ball-64x4-r30", {64, 64, 64, 64}, 30, 4000425, 904648},
    };
}

BenchRecord run_case(const BenchCase& c) {
    BenchRecord rec;
    rec.config = c;

    std::vector<std::uint64_t> maxes(c.sizes);
    for (auto& v : maxes) --v;
    const Space space(maxes);

    const auto t0 = Clock::now();
    const VolumeImage image = digital_ball(space, centered(c.sizes), c.radius);
    rec.generate_seconds = seconds_since(t0);
    rec.spels = image.spels.cardinality();

    for (const char* m : {"scan-a", "scan-b", "track-a", "track-b", "track-c"})
        rec.methods.push_back(time_method(m, image));

    rec.counts_match = true;
    if (c.expected_spels != 0 && rec.spels != c.expected_spels) rec.counts_match = false;
    for (const MethodTiming& t : rec.methods) {
        if (t.surfels != rec.methods.front().surfels) rec.counts_match = false;
        if (c.expected_surfels != 0 && t.surfels != c.expected_surfels)
            rec.counts_match = false;
    }
    return rec;
}

std::vector<BenchRecord> run_suite(SuiteScale scale) {
    std::vector<BenchRecord> out;
    for (const BenchCase& c : ball_suite(scale)) out.push_back(run_case(c));
    return out;
}

std::string render_table(const std::vector<BenchRecord>& records) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"case", "radius", "spels", "method", "surfels", "seconds", "ns/surfel",
                    "counts"});
    for (const BenchRecord& r : records) {
        for (const MethodTiming& t : r.methods) {
            rows.push_back({r.config.name, std::to_string(r.config.radius),
                            std::to_string(r.spels), t.method, std::to_string(t.surfels),
                            format_double(t.seconds, 3), format_double(t.ns_per_surfel, 1),
                            r.counts_match ? "ok" : "MISMATCH"});
        }
    }
    std::vector<std::size_t> width(rows.front().size(), 0);
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out += row[i];
            if (i + 1 < row.size()) out.append(width[i] - row[i].size() + 2, ' ');
        }
        out += '\n';
    }
    return out;
}

std::string render_csv(const std::vector<BenchRecord>& records) {
    std::string out = "case,radius,spels,method,surfels,seconds,ns_per_surfel,counts_ok\n";
    for (const BenchRecord& r : records) {
        for (const MethodTiming& t : r.methods) {
            out += r.config.name;
            out += ',';
            out += std::to_string(r.config.radius);
            out += ',';
            out += std::to_string(r.spels);
            out += ',';
            out += t.method;
            out += ',';
            out += std::to_string(t.surfels);
            out += ',';
            out += format_double(t.seconds, 6);
            out += ',';
            out += format_double(t.ns_per_surfel, 1);
            out += ',';
            out += r.counts_match ? "1" : "0";
            out += '\n';
        }
    }
    return out;
}

}  // namespace kgrid
