// Acceptance gate: ten pass/fail checks covering the advertised guarantees,
// each with its time budget pinned in code. Run via ctest or directly; the
// exit code is the number of failed criteria.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "morikit/chambers.hpp"
#include "morikit/cones.hpp"
#include "morikit/enumerate.hpp"
#include "morikit/lattice.hpp"
#include "morikit/markman.hpp"
#include "test_support.hpp"

using namespace morikit;
using tsupport::bud;

namespace {

struct Criterion {
    std::string label;
    double limit_seconds;
    std::function<bool(std::string&)> run;
};

bool expect(bool ok, const std::string& what, std::string& why) {
    if (!ok && why.empty()) why = what;
    return ok;
}

// ---- 1: extended lattice constants ----
bool c1(std::string& why) {
    const Lattice m = build_standard("mukai");
    bool ok = true;
    ok &= expect(m.rank() == 24, "rank != 24", why);
    ok &= expect(m.determinant() == 1, "determinant != 1", why);
    ok &= expect(m.signature() == std::pair<int, int>(4, 20), "signature != (4,20)", why);
    ok &= expect(m.is_even(), "not even", why);
    return ok;
}

// ---- 2: derived constants across the model grid ----
bool c2(std::string& why) {
    const std::vector<MatI> pics{MatI{{2}}, MatI{{4}}, MatI{{2, 0}, {0, -2}}};
    bool ok = true;
    for (const MatI& pic : pics) {
        VecI hk3(pic.rows(), Int(0));
        hk3[0] = 1;
        for (int n = 2; n <= 10; ++n) {
            const auto hm = from_k3_hilbert(pic, Int(n), hk3);
            ok &= expect(hm.model.pair(hm.delta, hm.model.v()) == 0,
                         "delta not orthogonal to v", why);
            ok &= expect(hm.model.pair(hm.delta, hm.delta) == -2 * (n - 1),
                         "delta square != -2(n-1)", why);
            ok &= expect(hm.model.v_sq() == 2 * n - 2, "v square != 2n-2", why);
        }
    }
    return ok;
}

// ---- 3: lower bound on the square of enumerated curve classes ----
bool c3(std::string& why) {
    struct Fixture {
        ExtendedAlgebraicLattice e;
        EnumerationBudget b;
    };
    std::vector<Fixture> fixtures;
    fixtures.push_back({tsupport::n2deg2(), bud(Rat(30))});
    fixtures.push_back({tsupport::pic2(), bud(Rat(12))});
    {
        const auto hm = from_k3_hilbert(MatI{{4}}, 3, VecI{1});
        const auto e = hm.model.with_polarization(VecI{-1, 5, -2});
        fixtures.push_back({e, EnumerationBudget::defaults_for(e)});
    }
    {
        const auto hm = from_k3_hilbert(MatI{{2}}, 5, VecI{1});
        const auto e = hm.model.with_polarization(VecI{-1, 5, -4});
        fixtures.push_back({e, EnumerationBudget::defaults_for(e)});
    }
    bool ok = true;
    bool attained = false;
    for (const auto& fx : fixtures) {
        const Rat floor = Rat(-(fx.e.n() + 3), 2);
        const auto ts = enumerate_theorem_set(fx.e, fx.b);
        ok &= expect(!ts.classes.empty(), "empty enumeration", why);
        for (const auto& tc : ts.classes) {
            ok &= expect(tc.r.q >= floor, "class below the square bound", why);
            if (tc.r.q == floor && tc.a_sq == -2 && abs(tc.av) == fx.e.n() - 1)
                attained = true;
        }
    }
    ok &= expect(attained, "no equality witness with a^2=-2, |av|=n-1", why);
    return ok;
}

// ---- 4: branch-and-bound equals the literal box scan ----
bool c4(std::string& why) {
    bool ok = true;
    for (const int n : {2, 3, 5}) {
        const auto hm = from_k3_hilbert(MatI{{2}}, Int(n), VecI{1});
        const auto e = hm.model.with_polarization(VecI{Int(-1), Int(5), Int(1 - n)});
        const auto budget = EnumerationBudget::defaults_for(e);
        const auto ts = enumerate_theorem_set(e, budget);
        std::vector<VecI> in_box;
        for (const auto& tc : ts.classes) {
            bool inside = true;
            for (const auto& c : tc.a)
                if (c > budget.coeff_bound || c < -budget.coeff_bound) inside = false;
            if (inside) in_box.push_back(tc.a);
        }
        const auto oracle = box_oracle(e, budget.coeff_bound, budget.height_bound);
        std::vector<VecI> oracle_a;
        for (const auto& tc : oracle) oracle_a.push_back(tc.a);
        ok &= expect(in_box == oracle_a,
                     "mismatch against the box oracle at n=" + std::to_string(n), why);
        ok &= expect(!oracle_a.empty(), "empty oracle region", why);
    }
    return ok;
}

// ---- 5: duality is an involution on canonical cones ----
bool c5(std::string& why) {
    std::mt19937_64 rng(20260817);
    bool ok = true;
    for (int t = 0; t < 100; ++t) {
        const int dim = 2 + (t % 4);
        const auto gens = tsupport::random_generators(rng, dim, true);
        const RationalCone c = cone_from_rays(dim, gens);
        if (dual_cone(dual_cone(c)) != c) {
            ok = expect(false, "dual of dual differs at trial " + std::to_string(t), why);
        }
    }
    return ok;
}

// ---- 6: reflections are integral involutive isometries ----
bool c6(std::string& why) {
    bool ok = true;
    const auto hm3 = from_k3_hilbert(MatI{{4}}, 3, VecI{1});
    ok &= expect(!reflection(hm3.model, hm3.delta).has_value(),
                 "square -4 divisibility-1 reflection must be rejected", why);

    struct Fixture {
        ExtendedAlgebraicLattice e;
        EnumerationBudget b;
    };
    const std::vector<Fixture> fixtures{
        {tsupport::n2deg2(), bud(Rat(30))},
        {tsupport::pic2(), bud(Rat(12))},
        {hm3.model.with_polarization(VecI{-1, 5, -2}),
         EnumerationBudget::defaults_for(hm3.model)}};
    std::size_t seen = 0;
    for (const auto& fx : fixtures) {
        const MatI& g = fx.e.lattice().gram();
        for (const VecI& cls : exceptional_candidates(fx.e, fx.b)) {
            ++seen;
            const auto r = reflection(fx.e, cls);
            if (!r) {
                ok = expect(false, "candidate without integral reflection", why);
                continue;
            }
            ok &= expect(reflect(*r, cls) == negate(cls), "class not negated", why);
            ok &= expect(r->matrix * r->matrix ==
                             MatI::identity(fx.e.rank()),
                         "not an involution", why);
            ok &= expect(r->matrix.transposed() * g * r->matrix == g,
                         "pairing not preserved", why);
            for (const VecI& w : fx.e.lattice().orthogonal_complement({cls}))
                ok &= expect(reflect(*r, w) == w, "complement moved", why);
        }
    }
    ok &= expect(seen >= 4, "too few exceptional candidates exercised", why);
    return ok;
}

// ---- 7: iterated reflection lands in the movable region ----
bool c7(std::string& why) {
    const auto e = tsupport::n2deg2();
    const auto b = bud(Rat(30));
    const auto walls = exceptional_candidates(e, b);
    const VecR h = to_rational(e.h());
    bool ok = true;

    std::mt19937_64 rng(907);
    int tested = 0;
    while (tested < 200) {
        const Rat x(tsupport::rand_int(rng, -80, 80), tsupport::rand_int(rng, 1, 9));
        const Rat y(tsupport::rand_int(rng, 1, 80), tsupport::rand_int(rng, 1, 9));
        const VecR amb{x, y, x}; // x * delta + y * h_S
        if (e.q_pair(amb, amb) <= 0 || e.q_pair(amb, h) <= 0) continue;
        ++tested;
        const auto path = reflect_into_movable(e, amb, b);
        ok &= expect(path.inside, "walk did not land inside", why);
        ok &= expect(path.steps <= b.word_bound, "word bound exceeded", why);
        for (const auto& w : walls)
            ok &= expect(e.q_pair(path.point, to_rational(w)) >= 0,
                         "landing point outside a wall", why);
        bool started_inside = true;
        for (const auto& w : walls)
            if (e.q_pair(amb, to_rational(w)) < 0) started_inside = false;
        if (started_inside) {
            ok &= expect(path.steps == 0 && path.point == amb,
                         "region point not fixed", why);
        } else {
            ok &= expect(path.steps >= 1, "moved point reported as fixed", why);
        }
        if (!ok) break;
    }
    return ok;
}

// ---- 8: nef chamber, mori rays, and pairings agree ----
bool c8(std::string& why) {
    bool ok = true;
    for (const auto& e : {tsupport::n2deg2(), tsupport::pic2()}) {
        const auto budget = bud(Rat(e.rank() == 3 ? 30 : 12));
        const auto nc = nef_cone(e, budget);
        const auto mc = mori_cone(e, budget);
        const auto md = movable_chambers(e, budget);
        bool found = false;
        for (const auto& ch : md.chambers) {
            if (!ch.contains_h) continue;
            found = true;
            ok &= expect(ch.cone == nc.cone, "nef chamber differs from nef cone", why);
        }
        ok &= expect(found, "no chamber contains the polarization", why);
        const MatI& g = mc.gram;
        for (const auto& d : nc.cone.rays)
            for (const auto& r : mc.polyhedral.rays)
                ok &= expect(dot(d, mat_vec(g, r)) >= 0, "negative nef/mori pairing", why);
        for (const auto& f : nc.cone.facets) {
            bool tight = false;
            for (const auto& r : mc.polyhedral.rays)
                if (primitive_vector(mat_vec(g, r)) == f) tight = true;
            ok &= expect(tight, "nef facet without a supporting curve ray", why);
        }
    }
    return ok;
}

// ---- 9: effective cones of the baseline surfaces ----
bool c9(std::string& why) {
    const auto b = bud(Rat(20));
    const auto rank1 = k3_pseudoeffective(MatI{{2}}, VecI{1}, b);
    const auto split = k3_pseudoeffective(MatI{{2, 0}, {0, -2}}, VecI{1, 0}, b);
    bool ok = true;
    ok &= expect(rank1.complete && rank1.rays == std::vector<VecI>{VecI{1}},
                 "rank-1 cone is not the polarization ray", why);
    ok &= expect(split.complete &&
                     split.rays == std::vector<VecI>{VecI{1, -1}, VecI{1, 1}},
                 "split rank-2 cone is not the isotropic pair", why);
    return ok;
}

// ---- 10: repeated runs are byte-identical ----
bool c10(std::string& why) {
    const std::string cmd_base = std::string("\"") + MORIKIT_BIN +
                                 "\" mori -c \"" + MORIKIT_CONFIG_DIR +
                                 "/hilbert_n2_deg2.json\" --deterministic";
    auto run_to = [&](const std::string& path) {
        const std::string cmd = cmd_base + " > " + path + " 2>&1";
        return std::system(cmd.c_str());
    };
    const int s1 = run_to("acceptance_run1.json");
    const int s2 = run_to("acceptance_run2.json");
    bool ok = expect(s1 == 0 && s2 == 0, "cli exited nonzero", why);
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = slurp("acceptance_run1.json");
    const std::string b = slurp("acceptance_run2.json");
    ok &= expect(!a.empty(), "empty output", why);
    ok &= expect(a == b, "outputs differ between runs", why);
    ok &= expect(a.find("\"schema\": \"morikit/1\"") != std::string::npos,
                 "schema marker missing", why);
    std::remove("acceptance_run1.json");
    std::remove("acceptance_run2.json");
    return ok;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"extended lattice constants (rank 24, det 1, signature (4,20), even)", 1.0, c1},
        {"derived model constants for n in 2..10 over three Picard lattices", 1.0, c2},
        {"curve-class square bound q(R) >= -(n+3)/2 with equality witness", 10.0, c3},
        {"enumeration equals the box oracle on rank-3 models, n in {2,3,5}", 60.0, c4},
        {"dual_cone is an involution on 100 random cones, dims 2-5", 10.0, c5},
        {"exceptional reflections: integral involutive isometries", 5.0, c6},
        {"200 positive-cone points reflect into the movable region", 10.0, c7},
        {"nef chamber equals nef cone; facets tight; pairings nonnegative", 10.0, c8},
        {"K3 pseudoeffective baselines (rank 1 and split rank 2)", 5.0, c9},
        {"byte-identical deterministic CLI runs", 5.0, c10},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        std::string why;
        const auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (secs > c.limit_seconds) {
            ok = false;
            if (why.empty())
                why = "exceeded " + std::to_string(c.limit_seconds) + "s";
        }
        char line[512];
        std::snprintf(line, sizeof(line), "[%s] %zu. %s (%.2fs)",
                      ok ? "PASS" : "FAIL", i + 1, c.label.c_str(), secs);
        std::cout << line;
        if (!ok && !why.empty()) std::cout << " -- " << why;
        std::cout << "\n";
        if (!ok) ++failures;
    }
    std::cout << (failures == 0 ? "acceptance: all criteria passed"
                                : "acceptance: " + std::to_string(failures) +
                                      " criteria failed")
              << "\n";
    return failures;
}
