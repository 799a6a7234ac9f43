#include "morikit/quadsolve.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include "morikit/lattice.hpp"

namespace morikit {

BinaryForm binary_form(const MatI& gram2) {
    if (gram2.rows() != 2 || gram2.cols() != 2 || !gram2.is_symmetric())
        throw input_error("dimension_mismatch", "binary form needs a 2x2 Gram");
    return BinaryForm{gram2(0, 0), gram2(0, 1), gram2(1, 1)};
}

std::vector<VecI> rational_isotropic_rays(const MatI& gram2) {
    BinaryForm f = binary_form(gram2);
    std::vector<VecI> rays;
    auto push = [&](Int x, Int y) {
        if (x == 0 && y == 0) return;
        VecI r{std::move(x), std::move(y)};
        r = primitive_vector(r);
        for (const auto& s : rays)
            if (s == r || s == negate(r)) return;
        rays.push_back(std::move(r));
    };
    if (f.a == 0) {
        push(1, 0); // q(1,0) = a = 0
        // q = y (2 b x + c y); second ray from the linear factor
        if (f.b != 0) push(-f.c, 2 * f.b);
        return rays;
    }
    Int root;
    if (!is_square(f.disc(), root)) return {};
    // a x^2 + 2 b x y + c y^2 = a^{-1} ((a x + (b - root) y)(a x + (b + root) y))
    push(-(f.b - root), f.a);
    push(-(f.b + root), f.a);
    return rays;
}

std::pair<Int, Int> pell_fundamental(const Int& d) {
    if (d <= 0 || is_square(d))
        throw input_error("pell_square_disc",
                          "Pell equation needs a positive non-square D");
    // continued fraction of sqrt(D): period yields the fundamental unit
    Int a0 = isqrt_floor(d);
    Int m = 0, dk = 1, a = a0;
    Int h_prev = 1, h = a0; // numerators
    Int k_prev = 0, k = 1;  // denominators
    while (h * h - d * k * k != 1) {
        m = dk * a - m;
        dk = (d - m * m) / dk;
        a = (a0 + m) / dk;
        Int h_next = a * h + h_prev;
        Int k_next = a * k + k_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    return {h, k};
}

std::optional<MatI> fundamental_automorph(const MatI& gram2) {
    BinaryForm f = binary_form(gram2);
    Int disc = f.disc();
    if (disc <= 0 || is_square(disc)) return std::nullopt;
    auto [x1, y1] = pell_fundamental(disc);
    // t^2 - disc s^2 = 4 with t = 2 x1, s = 2 y1; automorph of
    // a x^2 + 2b xy + c y^2 (classical formula, determinant 1):
    MatI g(2, 2);
    g(0, 0) = x1 - f.b * y1;
    g(0, 1) = -f.c * y1;
    g(1, 0) = f.a * y1;
    g(1, 1) = x1 + f.b * y1;
    // trace 2 x1 > 0 with det 1: both eigenvalues positive
    return g;
}

Int matrix_order_mod(const MatI& m, const Int& modulus) {
    if (modulus < 1) throw input_error("bad_modulus", "modulus must be positive");
    if (modulus == 1) return 1;
    auto reduce = [&](const MatI& x) {
        MatI y = x;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                y(i, j) %= modulus;
                if (y(i, j) < 0) y(i, j) += modulus;
            }
        return y;
    };
    MatI id = reduce(MatI::identity(2));
    MatI acc = reduce(m);
    Int order = 1;
    // |GL_2(Z/N)| < N^4 bounds the order
    Int cap = modulus * modulus * modulus * modulus;
    while (!(acc == id)) {
        acc = reduce(acc * m);
        ++order;
        if (order > cap)
            throw mk_error("internal_invariant",
                           "automorph order search exceeded group bound");
    }
    return order;
}

std::optional<Rat> pell_height_window(const MatI& gram2, const VecI& h2,
                                      const Rat& value, const Int& modulus) {
    if (value >= 0)
        throw input_error("bad_value", "height window is for negative squares");
    auto gamma = fundamental_automorph(gram2);
    if (!gamma) return std::nullopt;

    Lattice l{gram2};
    Int qh = l.pair(h2, h2);
    if (qh <= 0)
        throw input_error("h_not_positive", "window needs a positive polarization");

    BinaryForm f = binary_form(gram2);
    auto [x1, y1] = pell_fundamental(f.disc());
    // eigenvalue x1 + y1 sqrt(disc) <= x1 + y1 * ceil(sqrt(disc))
    Rat lambda = Rat(x1 + y1 * isqrt_ceil(f.disc()));

    Int e = matrix_order_mod(*gamma, modulus);
    // lambda^e, exact rational power
    Rat lam_e = 1;
    for (Int i = 0; i < e; ++i) lam_e *= lambda;

    // height window: lambda_e * sqrt(q(h) * |value|) / 2
    Rat bound = lam_e * sqrt_upper_bound(Rat(qh) * (-value)) / 2;
    return bound;
}

std::vector<VecI> split_form_solutions(const MatI& gram2, const Int& value) {
    if (value == 0)
        throw input_error("bad_value", "split solver needs a nonzero value");
    auto iso = rational_isotropic_rays(gram2);
    if (iso.size() != 2)
        throw input_error("pell_square_disc",
                          "split solver needs a split (square-discriminant) form");
    Lattice l{gram2};
    const VecI& w1 = iso[0];
    const VecI& w2 = iso[1];
    Int w12 = l.pair(w1, w2);
    if (w12 == 0)
        throw mk_error("internal_invariant", "independent isotropic rays pair to 0");

    // q(u) * w12 = 2 * (w1,u) * (w2,u); enumerate divisor splittings of the
    // product and solve the two linear pairings for u.
    Int prod2 = value * w12;
    if (prod2 % 2 != 0) return {}; // 2 l1 l2 is always even
    Int p = prod2 / 2;             // = (w1,u) * (w2,u), nonzero
    if (p == 0) return {};

    MatR pairings(2, 2);
    VecI gw1 = mat_vec(gram2, w1), gw2 = mat_vec(gram2, w2);
    for (std::size_t j = 0; j < 2; ++j) {
        pairings(0, j) = Rat(gw1[j]);
        pairings(1, j) = Rat(gw2[j]);
    }

    std::vector<VecI> out;
    Int abs_p = boost::multiprecision::abs(p);
    for (Int d = 1; d * d <= abs_p; ++d) {
        if (abs_p % d != 0) continue;
        Int halves[2] = {d, abs_p / d};
        for (const Int& l1_abs : halves) {
            for (int s1 = -1; s1 <= 1; s1 += 2) {
                Int l1 = s1 * l1_abs;
                Int l2 = p / l1;
                auto u = solve(pairings, VecR{Rat(l1), Rat(l2)});
                if (!u) continue;
                bool integral = true;
                VecI ui(2);
                for (std::size_t i = 0; i < 2; ++i) {
                    if (den((*u)[i]) != 1) { integral = false; break; }
                    ui[i] = num((*u)[i]);
                }
                if (!integral) continue;
                if (l.pair(ui, ui) != value) continue;
                bool dup = false;
                for (const auto& w : out)
                    if (w == ui) { dup = true; break; }
                if (!dup) out.push_back(std::move(ui));
            }
            if (halves[0] == halves[1]) break;
        }
    }
    return out;
}

} // namespace morikit
