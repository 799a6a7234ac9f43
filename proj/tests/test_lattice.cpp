#include <doctest.h>

#include <random>

#include "morikit/lattice.hpp"
#include "morikit/linalg.hpp"
#include "test_support.hpp"

using namespace morikit;

TEST_CASE("hyperbolic plane constants") {
    const Lattice u = build_standard("U");
    CHECK(u.rank() == 2);
    CHECK(u.is_even());
    CHECK(u.determinant() == -1);
    CHECK(u.signature() == std::pair<int, int>(1, 1));
    CHECK(u.pair(VecI{1, 0}, VecI{0, 1}) == 1);
    CHECK(u.pair(VecI{1, 0}, VecI{1, 0}) == 0);
}

TEST_CASE("negative E8 constants") {
    const Lattice e8 = build_standard("E8_minus");
    CHECK(e8.rank() == 8);
    CHECK(e8.is_even());
    CHECK(e8.determinant() == 1);
    CHECK(e8.signature() == std::pair<int, int>(0, 8));
    for (std::size_t i = 0; i < 8; ++i) {
        VecI ei(8, Int(0));
        ei[i] = 1;
        CHECK(e8.pair(ei, ei) == -2);
    }
}

TEST_CASE("extended lattice: rank 24, unimodular, signature (4,20), even") {
    const Lattice mukai = build_standard("mukai");
    CHECK(mukai.rank() == 24);
    CHECK(mukai.determinant() == 1);
    CHECK(mukai.signature() == std::pair<int, int>(4, 20));
    CHECK(mukai.is_even());
}

TEST_CASE("unknown standard lattice name") {
    try {
        build_standard("leech");
        FAIL("expected unknown_lattice");
    } catch (const input_error& e) {
        CHECK(e.code() == "unknown_lattice");
    }
}

TEST_CASE("pairing is bilinear and symmetric") {
    const Lattice mukai = build_standard("mukai");
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        VecI x(24), y(24), z(24);
        for (int i = 0; i < 24; ++i) {
            x[i] = tsupport::rand_int(rng, -5, 5);
            y[i] = tsupport::rand_int(rng, -5, 5);
            z[i] = tsupport::rand_int(rng, -5, 5);
        }
        CHECK(mukai.pair(x, y) == mukai.pair(y, x));
        VecI xy(24);
        for (int i = 0; i < 24; ++i) xy[i] = x[i] + 3 * y[i];
        CHECK(mukai.pair(xy, z) == mukai.pair(x, z) + 3 * mukai.pair(y, z));
        CHECK(mukai.pair(x, x) % 2 == 0); // even lattice
    }
}

TEST_CASE("direct sum block structure") {
    const Lattice s = direct_sum(build_standard("U"), build_standard("E8_minus"));
    CHECK(s.rank() == 10);
    CHECK(s.signature() == std::pair<int, int>(1, 9));
    CHECK(s.gram()(0, 1) == 1);
    CHECK(s.gram()(0, 2) == 0);
    CHECK(s.gram()(2, 0) == 0);
}

TEST_CASE("primitivize and content") {
    CHECK(primitivize(VecI{4, -6, 2}) == VecI{2, -3, 1});
    CHECK(primitivize(VecI{0, 5, 0}) == VecI{0, 1, 0});
    CHECK(content(VecI{4, -6, 2}) == 2);
    CHECK(content(VecI{0, 0, 0}) == 0);
    CHECK(is_primitive(VecI{2, -3, 1}));
    CHECK_FALSE(is_primitive(VecI{2, -4, 2}));
    CHECK_THROWS_AS(primitivize(VecI{0, 0}), input_error);
}

TEST_CASE("orthogonal complement is saturated and canonical") {
    const Lattice u = build_standard("U");
    // (2,0)-perp equals (1,0)-perp: saturation
    const auto c1 = u.orthogonal_complement({VecI{1, 0}});
    const auto c2 = u.orthogonal_complement({VecI{2, 0}});
    CHECK(c1 == c2);
    REQUIRE(c1.size() == 1);
    CHECK(u.pair(c1[0], VecI{1, 0}) == 0);

    const Lattice m = build_standard("mukai");
    VecI e0(24, Int(0)), e1(24, Int(0));
    e0[0] = 1;
    e1[1] = 1;
    const auto cm = m.orthogonal_complement({e0, e1});
    // complement of a hyperbolic plane in a unimodular lattice has rank 22
    CHECK(cm.size() == 22);
    for (const auto& w : cm) {
        CHECK(m.pair(w, e0) == 0);
        CHECK(m.pair(w, e1) == 0);
    }
}

TEST_CASE("degenerate gram is rejected with its code") {
    const Lattice bad(MatI{{2, 2}, {2, 2}});
    try {
        bad.signature();
        FAIL("expected gram_degenerate");
    } catch (const validation_error& e) {
        CHECK(e.code() == "gram_degenerate");
    }
}

TEST_CASE("hermite rows canonicalize the row span") {
    const MatI a{{2, 4, 6}, {1, 1, 1}};
    const MatI h = hermite_rows(a);
    CHECK(h == hermite_rows(h)); // idempotent
    // row operations do not change the span
    MatI b = a;
    b.add_row(0, 1, Int(-3));
    b.swap_rows(0, 1);
    CHECK(hermite_rows(b) == h);
    // pivots positive, entries above pivots reduced
    CHECK(h(0, 0) > 0);
}

TEST_CASE("smith normal form: divisibility chain and transforms") {
    const MatI a{{2, 4}, {6, 8}};
    const auto s = smith_normal_form(a);
    CHECK(s.d(0, 0) == 2);
    CHECK(s.d(1, 1) == 4);
    CHECK(s.u * a * s.v == s.d);
    CHECK((det_bareiss(s.u) == 1 || det_bareiss(s.u) == -1));
    CHECK((det_bareiss(s.v) == 1 || det_bareiss(s.v) == -1));

    std::mt19937_64 rng(23);
    for (int t = 0; t < 12; ++t) {
        const int n = 3 + (t % 3);
        MatI m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = tsupport::rand_int(rng, -6, 6);
        const auto r = smith_normal_form(m);
        CHECK(r.u * m * r.v == r.d);
        for (int i = 0; i + 1 < n; ++i) {
            CHECK(r.d(i, i) >= 0);
            if (r.d(i + 1, i + 1) != 0) {
                REQUIRE(r.d(i, i) != 0);
                CHECK(r.d(i + 1, i + 1) % r.d(i, i) == 0);
            }
        }
    }
}

TEST_CASE("saturated integer kernel") {
    const auto k = integer_kernel_saturated(MatI{{2, 4}});
    REQUIRE(k.size() == 1);
    CHECK(content(k[0]) == 1);
    CHECK(2 * k[0][0] + 4 * k[0][1] == 0);
}

TEST_CASE("exact elimination: solve, inverse, kernel, determinant") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 10; ++t) {
        MatR a(3, 3);
        MatI ai(3, 3);
        do {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    ai(i, j) = tsupport::rand_int(rng, -5, 5);
                    a(i, j) = Rat(ai(i, j));
                }
        } while (det_bareiss(ai) == 0);
        const auto inv = inverse(a);
        REQUIRE(inv.has_value());
        CHECK(*inv * a == MatR::identity(3));
        const VecR b{Rat(1), Rat(-2), Rat(7, 3)};
        const auto x = solve(a, b);
        REQUIRE(x.has_value());
        CHECK(mat_vec(a, *x) == b);
        CHECK(kernel_basis(a).empty());
        // cofactor expansion cross-check of the Bareiss determinant
        const Int cof = ai(0, 0) * (ai(1, 1) * ai(2, 2) - ai(1, 2) * ai(2, 1)) -
                        ai(0, 1) * (ai(1, 0) * ai(2, 2) - ai(1, 2) * ai(2, 0)) +
                        ai(0, 2) * (ai(1, 0) * ai(2, 1) - ai(1, 1) * ai(2, 0));
        CHECK(det_bareiss(ai) == cof);
    }
    // inconsistent system
    CHECK_FALSE(solve(MatR{{Rat(1), Rat(1)}, {Rat(1), Rat(1)}}, VecR{Rat(0), Rat(1)})
                    .has_value());
    // kernel of a rank-1 map
    const auto k = kernel_basis(MatR{{Rat(1), Rat(2), Rat(3)}});
    CHECK(k.size() == 2);
    for (const auto& v : k) CHECK(dot(VecR{Rat(1), Rat(2), Rat(3)}, v) == 0);
}

TEST_CASE("ldlt reconstructs the form") {
    std::mt19937_64 rng(37);
    for (int t = 0; t < 8; ++t) {
        const int n = 2 + (t % 3);
        MatI b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b(i, j) = tsupport::rand_int(rng, -4, 4);
        MatI g = b * b.transposed();
        for (int i = 0; i < n; ++i) g(i, i) += 1; // ensure positive definite
        const MatR gr = to_rational(g);
        REQUIRE(is_positive_definite(gr));
        const Ldlt f = ldlt(gr);
        // evaluate q(y) through the factorization on a few vectors
        for (int s = 0; s < 4; ++s) {
            VecR y(n);
            for (int i = 0; i < n; ++i) y[i] = Rat(tsupport::rand_int(rng, -3, 3));
            Rat direct = dot(y, mat_vec(gr, y));
            Rat viaf(0);
            for (int i = 0; i < n; ++i) {
                Rat w = y[i];
                for (int j = i + 1; j < n; ++j) w += f.m(i, j) * y[j];
                viaf += f.d[i] * w * w;
            }
            CHECK(direct == viaf);
        }
    }
}

TEST_CASE("lll reduction is unimodular and shrinks the first vector") {
    const MatR g{{Rat(5), Rat(4)}, {Rat(4), Rat(5)}};
    const MatI u = lll_reduce_gram(g);
    CHECK((det_bareiss(u) == 1 || det_bareiss(u) == -1));
    MatR red = to_rational(u) * g * to_rational(u.transposed());
    CHECK(red(0, 0) == 2); // shortest value of 5x^2+8xy+5y^2
    CHECK(red.is_symmetric());

    std::mt19937_64 rng(41);
    for (int t = 0; t < 6; ++t) {
        const int n = 3;
        MatI b(n, n);
        do {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) b(i, j) = tsupport::rand_int(rng, -6, 6);
        } while (det_bareiss(b) == 0);
        const MatR gr = to_rational(b * b.transposed());
        const MatI v = lll_reduce_gram(gr);
        CHECK((det_bareiss(v) == 1 || det_bareiss(v) == -1));
        const MatR rg = to_rational(v) * gr * to_rational(v.transposed());
        CHECK(rg.is_symmetric());
        CHECK(is_positive_definite(rg));
    }
}

TEST_CASE("signature of rational symmetric forms") {
    CHECK(signature_of(MatR{{Rat(1), Rat(0)}, {Rat(0), Rat(-3, 2)}}) ==
          std::pair<int, int>(1, 1));
    CHECK(signature_of(to_rational(build_standard("mukai").gram())) ==
          std::pair<int, int>(4, 20));
    CHECK_FALSE(is_positive_definite(MatR{{Rat(1), Rat(2)}, {Rat(2), Rat(1)}}));
    CHECK(is_positive_definite(MatR{{Rat(2), Rat(1)}, {Rat(1), Rat(2)}}));
}

TEST_CASE("integer and rational scalar helpers") {
    CHECK(floor_div(Int(7), Int(2)) == 3);
    CHECK(floor_div(Int(-7), Int(2)) == -4);
    CHECK(floor_div(Int(7), Int(-2)) == -4);
    CHECK(rat_floor(Rat(-3, 2)) == -2);
    CHECK(rat_ceil(Rat(-3, 2)) == -1);
    CHECK(rat_floor(Rat(4)) == 4);
    CHECK(rat_round(Rat(5, 2)) == 3); // halves round up
    CHECK(rat_round(Rat(-5, 2)) == -2);
    CHECK(rat_round(Rat(7, 3)) == 2);
    CHECK(rat_round(Rat(-7, 3)) == -2);
    CHECK(isqrt_floor(Int(48)) == 6);
    CHECK(isqrt_ceil(Int(48)) == 7);
    CHECK(isqrt_floor(Int(49)) == 7);
    CHECK(is_square(Int(144)));
    CHECK_FALSE(is_square(Int(143)));
    Int root;
    CHECK(is_square(Int(169), root));
    CHECK(root == 13);
    const Rat ub = sqrt_upper_bound(Rat(2));
    CHECK(ub * ub >= 2);
    CHECK(sqrt_upper_bound(Rat(9, 4)) == Rat(3, 2));
}

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("5") == Rat(5));
    CHECK(parse_rational("-6/4") == Rat(-3, 2));
    CHECK(parse_rational("2/4") == Rat(1, 2));
    CHECK(format_rational(Rat(-3, 2)) == "-3/2");
    CHECK(format_rational(Rat(7)) == "7");
    CHECK(format_rational(parse_rational("22/7")) == "22/7");
    CHECK_THROWS_AS(parse_rational(""), input_error);
    CHECK_THROWS_AS(parse_rational("1/0"), input_error);
    CHECK_THROWS_AS(parse_rational("1.5"), input_error);
    CHECK_THROWS_AS(parse_rational("x"), input_error);
}
