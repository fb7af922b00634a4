#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "kgrid/boundary.hpp"
#include "kgrid/charset.hpp"
#include "kgrid/space.hpp"
#include "kgrid/tracking.hpp"
#include "kgrid/volume.hpp"

namespace {

const kgrid::Space& cube256() {
    static const kgrid::Space s({255, 255, 255});
    return s;
}

void BM_SignedFacePair(benchmark::State& state) {
    const kgrid::Space& s = cube256();
    const kgrid::SignedCell spel = s.make_spel(kgrid::Sign::positive, {100, 101, 102});
    int axis = 0;
    for (auto _ : state) {
        auto pair = kgrid::lower_boundary_along(s, spel, axis);
        benchmark::DoNotOptimize(pair);
        axis = (axis + 1) % 3;
    }
}
BENCHMARK(BM_SignedFacePair);

void BM_CharSetAddContains(benchmark::State& state) {
    const kgrid::Space& s = cube256();
    kgrid::LutCharSet set(s, kgrid::CellFamily::spels(s));
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> d(0, 255);
    std::vector<kgrid::Cell> cells;
    for (int i = 0; i < 1024; ++i) cells.push_back(s.make_spel({d(rng), d(rng), d(rng)}));
    std::size_t i = 0;
    for (auto _ : state) {
        const kgrid::Cell c = cells[i++ & 1023];
        set.add(c);
        benchmark::DoNotOptimize(set.contains(c));
    }
}
BENCHMARK(BM_CharSetAddContains);

void BM_DirectAdjacentMove(benchmark::State& state) {
    const kgrid::Space& s = cube256();
    const kgrid::VolumeImage image = kgrid::digital_ball(s, {128, 128, 128}, 40);
    const kgrid::SignedCell bel =
        kgrid::find_start_bel(s, image.spels, s.make_spel({128, 128, 128}));
    int axis = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            kgrid::direct_adjacent_bel(s, image.spels, bel, axis, true));
        axis = axis == 1 ? 2 : 1;
    }
}
BENCHMARK(BM_DirectAdjacentMove);

void BM_TrackClosedBall(benchmark::State& state) {
    const kgrid::Space s({63, 63, 63});
    const kgrid::VolumeImage image = kgrid::digital_ball(s, {32, 32, 32}, 20);
    const kgrid::SignedCell start =
        kgrid::find_start_bel(s, image.spels, s.make_spel({32, 32, 32}));
    const kgrid::BelAdjacency adj = kgrid::BelAdjacency::all_interior(3);
    for (auto _ : state) {
        auto r = kgrid::track_closed(s, image.spels, start, adj);
        benchmark::DoNotOptimize(r.surfels.cardinality());
    }
    state.SetItemsProcessed(state.iterations() *
                            static_cast<std::int64_t>(kgrid::track_closed(
                                s, image.spels, start, adj).bel_count()));
}
BENCHMARK(BM_TrackClosedBall);

void BM_ScanFullBall(benchmark::State& state) {
    const kgrid::Space s({63, 63, 63});
    const kgrid::VolumeImage image = kgrid::digital_ball(s, {32, 32, 32}, 20);
    for (auto _ : state) {
        auto r = kgrid::scan_full(s, image.spels);
        benchmark::DoNotOptimize(r.cardinality());
    }
}
BENCHMARK(BM_ScanFullBall);

void BM_ComplementSpels(benchmark::State& state) {
    const kgrid::Space& s = cube256();
    kgrid::LutCharSet set(s, kgrid::CellFamily::spels(s));
    for (auto _ : state) {
        set.complement_in_place();
        benchmark::DoNotOptimize(set.words().data());
    }
    state.SetBytesProcessed(state.iterations() *
                            static_cast<std::int64_t>(set.size_bytes()));
}
BENCHMARK(BM_ComplementSpels);

}  // namespace

BENCHMARK_MAIN();
