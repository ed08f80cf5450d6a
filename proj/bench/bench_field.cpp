// SPDX-License-Identifier: Apache-2.0
//
// Serial reference vs OpenMP field-grid evaluation.

#include <benchmark/benchmark.h>

#include "nfbeam/bessel.hpp"
#include "nfbeam/field.hpp"

namespace {

using namespace nfbeam;

struct Setup {
    UlaConfig cfg = UlaConfig::half_wavelength(1024, 140e9);
    Excitation exc = bessel_phases(cfg, BesselDesign::from_degrees(0.0, 20.0));
    OcclusionModel occ{RectObstacle(0.14, -0.14, 0.10, 0.57)};

    GridSpec grid(std::size_t n) const {
        GridSpec g;
        g.x_min = -1.0;
        g.x_max = 1.0;
        g.y_min = 0.01;
        g.y_max = 2.0;
        g.nx = n;
        g.ny = n;
        return g;
    }
};

void BM_FieldGridSerial(benchmark::State& state) {
    const Setup s;
    const GridSpec g = s.grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(field_grid_serial(s.cfg, s.exc, g, s.occ));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(g.nx * g.ny));
}

void BM_FieldGridOpenMP(benchmark::State& state) {
    const Setup s;
    const GridSpec g = s.grid(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(field_grid(s.cfg, s.exc, g, s.occ));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(g.nx * g.ny));
}

}  // namespace

BENCHMARK(BM_FieldGridSerial)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FieldGridOpenMP)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
