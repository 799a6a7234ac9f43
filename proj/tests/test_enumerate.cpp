#include <doctest.h>

#include <algorithm>
#include <random>

#include "morikit/enumerate.hpp"
#include "test_support.hpp"

using namespace morikit;

namespace {

std::vector<VecI> lifts(const std::vector<TheoremClass>& cs) {
    std::vector<VecI> out;
    for (const auto& tc : cs) out.push_back(tc.a);
    return out;
}

// brute-force short vector search over a coordinate box
std::vector<VecI> short_vectors_box(const MatR& gram, const Rat& bound, long box) {
    const int n = static_cast<int>(gram.rows());
    std::vector<VecI> out;
    std::vector<long> c(n, -box);
    while (true) {
        VecI x(n);
        bool zero = true;
        for (int i = 0; i < n; ++i) {
            x[i] = c[i];
            if (c[i] != 0) zero = false;
        }
        if (!zero && dot(to_rational(x), mat_vec(gram, to_rational(x))) <= bound)
            out.push_back(x);
        int i = 0;
        while (i < n && c[i] == box) c[i++] = -box;
        if (i == n) break;
        ++c[i];
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

} // namespace

TEST_CASE("majorant dominates the form and is positive definite") {
    for (const auto& e : {tsupport::n2deg2(), tsupport::pic2()}) {
        const MatR m = majorant(e);
        REQUIRE(m.rows() == e.rank());
        CHECK(is_positive_definite(m));
        std::mt19937_64 rng(59);
        for (int t = 0; t < 40; ++t) {
            VecI x(e.rank());
            for (auto& v : x) v = tsupport::rand_int(rng, -7, 7);
            const Rat mx = dot(to_rational(x), mat_vec(m, to_rational(x)));
            // M(x) + q(x) = 2 q(projection onto span(v,h)) >= 0
            CHECK(Rat(e.pair(x, x)) >= -mx);
        }
    }
}

TEST_CASE("short vector walk agrees with box search") {
    // x^2 + y^2 <= 4 has twelve nonzero solutions
    const auto disc = short_vectors(MatR{{Rat(1), Rat(0)}, {Rat(0), Rat(1)}}, Rat(4));
    CHECK(disc.size() == 12);

    std::mt19937_64 rng(61);
    for (int t = 0; t < 6; ++t) {
        const int n = 2 + (t % 2);
        MatI b(n, n);
        do {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) b(i, j) = tsupport::rand_int(rng, -3, 3);
        } while (det_bareiss(b) == 0);
        MatI g = b * b.transposed();
        const MatR gr = to_rational(g);
        const Rat bound(10 + 3 * t);
        auto got = short_vectors(gr, bound);
        for (const auto& x : got)
            CHECK(dot(to_rational(x), mat_vec(gr, to_rational(x))) <= bound);
        // compare on the intersection of regions: the walk restricted to
        // the box must equal the box scan restricted to the bound
        std::vector<VecI> got_boxed;
        for (const auto& x : got) {
            bool ok = true;
            for (const auto& c : x)
                if (c > 25 || c < -25) ok = false;
            if (ok) got_boxed.push_back(x);
        }
        std::sort(got_boxed.begin(), got_boxed.end(), lex_less);
        const auto want = short_vectors_box(gr, bound, 25);
        CHECK(got_boxed == want);
    }
}

TEST_CASE("theorem set on the flagship fixture is the frozen seven") {
    const auto e = tsupport::n2deg2();
    const auto ts = enumerate_theorem_set(e, tsupport::bud(Rat(30)));
    CHECK(ts.complete);
    CHECK(ts.on_wall.empty());
    REQUIRE(ts.classes.size() == 7);

    const std::vector<VecI> expect_a{
        VecI{0, 0, 1}, VecI{1, 0, 0},  VecI{1, 0, 1}, VecI{-2, 1, -1},
        VecI{-1, 1, -2}, VecI{1, 1, 2}, VecI{2, 1, 1}};
    CHECK(lifts(ts.classes) == expect_a);

    const std::vector<Rat> expect_h{Rat(1), Rat(1),  Rat(2), Rat(7),
                                    Rat(7), Rat(13), Rat(13)};
    const std::vector<Rat> expect_q{Rat(-1, 2), Rat(-1, 2), Rat(-2),
                                    Rat(-5, 2), Rat(-5, 2), Rat(-5, 2),
                                    Rat(-5, 2)};
    for (std::size_t i = 0; i < 7; ++i) {
        CAPTURE(i);
        CHECK(ts.classes[i].height == expect_h[i]);
        CHECK(ts.classes[i].r.q == expect_q[i]);
        CHECK(ts.classes[i].a_sq >= -2);
        CHECK(2 * abs(ts.classes[i].av) <= e.v_sq());
        CHECK(e.q_pair(to_rational(e.h()), ts.classes[i].r.coords) ==
              ts.classes[i].height);
        CHECK((2 * Int(2) - 2) % ts.classes[i].r.denominator == 0);
    }
    // the two curve classes used everywhere downstream
    CHECK(ts.classes[0].r.coords == VecR{Rat(1, 2), Rat(0), Rat(1, 2)});
    CHECK(ts.classes[3].r.coords == VecR{Rat(-3, 2), Rat(1), Rat(-3, 2)});
}

TEST_CASE("completeness certificate flips exactly at the horizon") {
    const auto e = tsupport::n2deg2();
    CHECK(enumerate_theorem_set(e, tsupport::bud(Rat(13))).complete);
    const auto below = enumerate_theorem_set(e, tsupport::bud(Rat(12)));
    CHECK_FALSE(below.complete);
    CHECK(below.classes.size() == 5); // the two height-13 classes drop out
}

TEST_CASE("length bound holds with the worked equality witness") {
    const auto e = tsupport::n2deg2();
    const auto ts = enumerate_theorem_set(e, tsupport::bud(Rat(30)));
    const Rat floor = Rat(-(e.n() + 3), 2);
    bool attained = false;
    for (const auto& tc : ts.classes) {
        CHECK(tc.r.q >= floor);
        if (tc.r.q == floor && tc.a_sq == -2 && abs(tc.av) == e.n() - 1)
            attained = true;
    }
    CHECK(attained);
}

TEST_CASE("box oracle agrees with the enumeration on shared regions") {
    for (const int n : {2, 3, 5}) {
        CAPTURE(n);
        const auto hm = from_k3_hilbert(MatI{{2}}, Int(n), VecI{1});
        // 5 h_S - delta, written out in the (r, h_S, s) basis
        const VecI amp{Int(-1), Int(5), Int(1 - n)};
        const auto e = hm.model.with_polarization(amp);
        const auto budget = EnumerationBudget::defaults_for(e);
        const auto ts = enumerate_theorem_set(e, budget);
        std::vector<VecI> in_box;
        for (const auto& tc : ts.classes) {
            bool ok = true;
            for (const auto& c : tc.a)
                if (c > budget.coeff_bound || c < -budget.coeff_bound) ok = false;
            if (ok) in_box.push_back(tc.a);
        }
        const auto boxed = box_oracle(e, budget.coeff_bound, budget.height_bound);
        CHECK(in_box == lifts(boxed));
        CHECK_FALSE(boxed.empty());
    }
}

TEST_CASE("negative extremal rays of the fixture") {
    const auto e = tsupport::n2deg2();
    const auto nr = negative_extremal_rays(e, tsupport::bud(Rat(30)));
    CHECK(nr.complete);
    CHECK(nr.on_wall.empty());
    REQUIRE(nr.rays.size() == 2);
    // least positive representative on each extremal ray
    CHECK(nr.rays[0].a == VecI{0, 0, 1});
    CHECK(nr.rays[0].height == 1);
    CHECK(nr.rays[1].a == VecI{-2, 1, -1});
    CHECK(nr.rays[1].height == 7);
    // the height-13 classes lie strictly inside the cone of these two
    CHECK(nr.rays[0].r.coords == VecR{Rat(1, 2), Rat(0), Rat(1, 2)});
    CHECK(nr.rays[1].r.coords == VecR{Rat(-3, 2), Rat(1), Rat(-3, 2)});
}

TEST_CASE("polarization on a wall is reported, not silently dropped") {
    // the K3 class itself pairs to zero with the half-diagonal curve
    const auto hm = from_k3_hilbert(MatI{{2}}, 2, VecI{1});
    const auto ts = enumerate_theorem_set(hm.model, tsupport::bud(Rat(30)));
    CHECK_FALSE(ts.on_wall.empty());
}

TEST_CASE("k3 pseudoeffective cones") {
    const auto b = tsupport::bud(Rat(20));

    const auto rank1 = k3_pseudoeffective(MatI{{2}}, VecI{1}, b);
    CHECK(rank1.complete);
    CHECK(rank1.rays == std::vector<VecI>{VecI{1}});

    const auto split = k3_pseudoeffective(MatI{{2, 0}, {0, -2}}, VecI{1, 0}, b);
    CHECK(split.complete);
    CHECK(split.rays == std::vector<VecI>{VecI{1, -1}, VecI{1, 1}});

    const auto skew = k3_pseudoeffective(MatI{{2, 1}, {1, -2}}, VecI{1, 0}, b);
    CHECK(skew.complete);
    CHECK(skew.rays == std::vector<VecI>{VecI{0, 1}, VecI{1, -1}});

    // rank 3 is budget-truncated: flags honest, rays still valid classes
    const MatI pic3{{2, 0, 0}, {0, -2, 0}, {0, 0, -2}};
    const auto big = k3_pseudoeffective(pic3, VecI{1, 0, 0}, b);
    CHECK_FALSE(big.complete);
    const Lattice pl(pic3);
    for (const auto& r : big.rays) {
        CHECK(content(r) == 1);
        CHECK(pl.pair(r, VecI{1, 0, 0}) >= 0);
    }
    CHECK_FALSE(big.rays.empty());
}
