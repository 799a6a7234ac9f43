#include <benchmark/benchmark.h>

#include "morikit/chambers.hpp"
#include "morikit/linalg.hpp"

namespace {

using namespace morikit;

HilbertModel degree_two_surface(int n) {
    MatI pic(1, 1);
    pic(0, 0) = 2;
    return from_k3_hilbert(pic, Int(n), VecI{Int(1)});
}

void bm_enumerate(benchmark::State& state) {
    HilbertModel hm = degree_two_surface(2);
    const VecI h{Int(-1), Int(5), Int(-1)};
    const ExtendedAlgebraicLattice e = hm.model.with_polarization(h);
    EnumerationBudget budget{Rat(state.range(0)), 8, 8};
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_theorem_set(e, budget).classes.size());
    }
}
BENCHMARK(bm_enumerate)->Arg(30)->Arg(120)->Arg(480);

void bm_dual_cone(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    std::vector<VecI> gens;
    // deterministic pseudo-random generators via a fixed LCG
    unsigned long long seed = 0x243f6a8885a308d3ull;
    auto next = [&seed]() {
        seed = seed * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<long long>(seed >> 40) % 19 - 9;
    };
    for (int i = 0; i < 2 * dim; ++i) {
        VecI g(dim);
        for (int j = 0; j < dim; ++j) g[j] = Int(next());
        gens.push_back(g);
    }
    for (auto _ : state) {
        const RationalCone c = cone_from_rays(dim, gens);
        benchmark::DoNotOptimize(dual_cone(c).rays.size());
    }
}
BENCHMARK(bm_dual_cone)->Arg(3)->Arg(4)->Arg(5);

void bm_smith(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    MatI m(n, n);
    unsigned long long seed = 0x13198a2e03707344ull;
    auto next = [&seed]() {
        seed = seed * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<long long>(seed >> 40) % 21 - 10;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = Int(next());
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(smith_normal_form(m).d.rows());
    }
}
BENCHMARK(bm_smith)->Arg(4)->Arg(6)->Arg(8);

} // namespace

BENCHMARK_MAIN();
