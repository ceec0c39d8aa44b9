// Serial vs OpenMP mesh solves of the truncated systems on Example-1 style data.

#include "slinv/forward.hpp"
#include "slinv/glsystem.hpp"
#include "slinv/recovery.hpp"
#include "slinv/spectral.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

namespace {

using namespace slinv;

struct Fixture {
    spectral::SpectralDataset data;
    double omega{0.0};
};

const Fixture& fixture()
{
    static const Fixture f = [] {
        const auto s = forward::solve_forward({potentials::sin2x(), 1.0, 0.5, forward::RightBoundary::robin, 201});
        spectral::SpectralDataset d;
        d.rho = s.rho;
        d.alpha = s.alpha;
        const auto shifted = spectral::shift_to_zero(d);
        const auto model = spectral::fit_model(shifted);
        return Fixture{spectral::augment_with_asymptotics(shifted, model, 5000), model.omega()};
    }();
    return f;
}

void run(benchmark::State& state, glsystem::Execution mode)
{
    const auto& f = fixture();
    auto mesh = recovery::chebyshev_lobatto(0.0, 0.55 * std::numbers::pi, static_cast<int>(state.range(0)) + 1);
    mesh.erase(mesh.begin());
    glsystem::MeshOptions opt;
    opt.execution = mode;
    for (auto _ : state) {
        auto slices = glsystem::solve_on_mesh(mesh, f.data, f.omega, opt);
        benchmark::DoNotOptimize(slices.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_MeshSerial(benchmark::State& state) { run(state, glsystem::Execution::serial); }
void BM_MeshParallel(benchmark::State& state) { run(state, glsystem::Execution::parallel); }

} // namespace

BENCHMARK(BM_MeshSerial)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MeshParallel)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
