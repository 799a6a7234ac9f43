#include "morikit/enumerate.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "morikit/cones.hpp"
#include "morikit/errors.hpp"
#include "morikit/linalg.hpp"
#include "morikit/quadsolve.hpp"

namespace morikit {

namespace {

Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

Int pair_in(const MatI& g, const VecI& x, const VecI& y) {
    return dot(x, mat_vec(g, y));
}

VecI exact_int(const VecR& x, const char* what) {
    auto [ints, denom] = clear_denominators(x);
    if (denom != 1) throw mk_error("internal_invariant", what);
    return ints;
}

VecI h2_int_coords(const ExtendedAlgebraicLattice& e, const VecI& ambient) {
    auto c = h2_coordinates(e, to_rational(ambient));
    if (!c)
        throw mk_error("internal_invariant", "vector escaped the divisor sublattice");
    return exact_int(*c, "saturated basis must give integral coordinates");
}

// 2 q(<x,w>-part) - q(x) for a single positive vector w: positive definite
// whenever w spans the positive part of a signature (1, r-1) form.
MatR dominant_form(const MatI& g, const VecI& w, const Int& wsq) {
    const std::size_t r = g.rows();
    const VecI gw = mat_vec(g, w);
    MatR m(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            m(i, j) = Rat(2 * gw[i] * gw[j], wsq) - Rat(g(i, j));
    if (!is_positive_definite(m))
        throw mk_error("internal_invariant", "dominant form is not positive definite");
    return m;
}

// ---- Fincke-Pohst walk ----

struct ShortVectorWalker {
    const Ldlt& l;
    const MatI& u;
    std::size_t r;
    VecI y;
    std::vector<VecI> out;

    template <class Pred>
    static Int expand(Pred ok) {
        // largest k >= 0 with ok(k), given ok(0); doubling plus bisection
        if (!ok(Int(1))) return 0;
        Int lo = 1, hi = 2;
        while (ok(hi)) {
            lo = hi;
            hi <<= 1;
        }
        while (hi - lo > 1) {
            Int mid = (lo + hi) >> 1;
            (ok(mid) ? lo : hi) = mid;
        }
        return lo;
    }

    void descend(int i, const Rat& rem) {
        if (i < 0) {
            if (is_zero(y)) return;
            VecI x(r, Int(0));
            for (std::size_t j = 0; j < r; ++j) {
                if (y[j] == 0) continue;
                for (std::size_t k = 0; k < r; ++k) x[k] += u(j, k) * y[j];
            }
            out.push_back(std::move(x));
            return;
        }
        const std::size_t si = static_cast<std::size_t>(i);
        Rat t(0);
        for (std::size_t j = si + 1; j < r; ++j)
            if (y[j] != 0) t += l.m(si, j) * Rat(y[j]);
        const Rat budget = rem / l.d[si];
        auto fits = [&](const Int& yv) {
            Rat s = Rat(yv) + t;
            return s * s <= budget;
        };
        const Int c = rat_round(-t);
        if (!fits(c)) return; // the nearest integer already misses: level empty
        const Int down = expand([&](const Int& k) { return fits(c - k); });
        const Int up = expand([&](const Int& k) { return fits(c + k); });
        for (Int yv = c - down; yv <= c + up; ++yv) {
            y[si] = yv;
            Rat s = Rat(yv) + t;
            descend(i - 1, rem - l.d[si] * s * s);
        }
        y[si] = 0;
    }
};

// shared predicate: the enumeration and the box oracle must agree on it
std::optional<TheoremClass> qualify(const ExtendedAlgebraicLattice& e, const VecI& a,
                                    const std::optional<Rat>& height_cap) {
    const Int asq = e.pair(a, a);
    if (asq < -2) return std::nullopt;
    const Int av = e.pair(a, e.v());
    if (2 * iabs(av) > e.v_sq()) return std::nullopt;
    if (Rat(asq) >= Rat(av * av, e.v_sq())) return std::nullopt; // q(theta_dual) >= 0
    const Int ha = e.pair(e.h(), a);
    if (ha <= 0) return std::nullopt;
    if (height_cap && Rat(ha) > *height_cap) return std::nullopt;
    TheoremClass tc;
    tc.a = a;
    tc.a_sq = asq;
    tc.av = av;
    tc.r = e.theta_dual(a);
    tc.height = Rat(ha);
    return tc;
}

bool class_order(const TheoremClass& x, const TheoremClass& y) {
    if (x.height != y.height) return x.height < y.height;
    return lex_less(x.a, y.a);
}

// ---- rank 2 completeness certificate ----

// Does u (in divisor-basis coordinates) lift to an ambient class a with
// theta_dual(a) = u / v^2 and pair(a, v) = av? Needs (u + av*v) in v^2 L.
bool lifts_to_ambient(const ExtendedAlgebraicLattice& e, const VecI& u_h2, const Int& av) {
    const VecR u_amb = from_h2_coordinates(e, to_rational(u_h2));
    const Rat vsq(e.v_sq());
    for (std::size_t k = 0; k < u_amb.size(); ++k) {
        Rat t = (u_amb[k] + Rat(av * e.v()[k])) / vsq;
        if (den(t) != 1) return false;
    }
    return true;
}

// Certified height horizon for ambient rank 3 (divisor rank 2): beyond the
// returned bound no qualifying class can start a new extremal direction.
// Works with u = v^2 * theta_dual(a), an integral vector of the divisor
// lattice with q(u) = v^4 a^2 - v^2 (a,v)^2, constrained mod v^2.
Rat rank2_height_horizon(const ExtendedAlgebraicLattice& e) {
    const MatI& g2 = e.h2_alg_gram();
    const VecI hc = h2_int_coords(e, e.h());
    const Int vsq = e.v_sq();
    const BinaryForm form = binary_form(g2);
    const bool split = is_square(form.disc());

    Rat horizon(0);
    for (Int av = 0; 2 * av <= vsq; ++av) {
        for (Int asq = -2; Rat(asq) < Rat(av * av, vsq); asq += 2) {
            const Int qu = vsq * vsq * asq - vsq * av * av; // strictly negative
            if (split) {
                // finite solution list: take the exact maximal height
                for (const VecI& sol : split_form_solutions(g2, qu)) {
                    const Int hu = pair_in(g2, hc, sol);
                    if (hu == 0) continue;
                    const VecI up = hu > 0 ? sol : negate(sol);
                    if (!lifts_to_ambient(e, up, av) && !lifts_to_ambient(e, up, -av))
                        continue;
                    horizon = std::max(horizon, Rat(iabs(hu), vsq));
                }
            } else {
                auto w = pell_height_window(g2, hc, Rat(qu), vsq);
                if (!w)
                    throw mk_error("internal_invariant",
                                   "hyperbolic plane without automorph");
                horizon = std::max(horizon, *w / Rat(vsq));
            }
        }
    }
    return horizon;
}

int det_sign2(const VecI& a, const VecI& b) {
    return sign(Int(a[0] * b[1] - a[1] * b[0]));
}

// Widest candidate on one side of h inside an open half plane: farther from
// h means the orientation of (current, challenger) matches the side.
std::optional<std::size_t> widest_on_side(const std::vector<VecI>& dirs, const VecI& hc,
                                          int side) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
        if (det_sign2(hc, dirs[i]) != side) continue;
        if (!best || det_sign2(dirs[*best], dirs[i]) == side) best = i;
    }
    return best;
}

// isotropic directions with 0 < pairing(w, u) <= cap, primitive, deduplicated
std::vector<VecI> isotropic_directions(const MatI& g, const VecI& w, const Int& wsq,
                                       const Rat& cap) {
    std::vector<VecI> iso;
    if (cap <= 0) return iso;
    const MatR m = dominant_form(g, w, wsq);
    for (const VecI& u : short_vectors(m, 2 * cap * cap / Rat(wsq))) {
        if (pair_in(g, u, u) != 0) continue;
        const Int wu = pair_in(g, w, u);
        if (wu <= 0 || Rat(wu) > cap) continue;
        iso.push_back(primitive_vector(u));
    }
    std::sort(iso.begin(), iso.end(), lex_less);
    iso.erase(std::unique(iso.begin(), iso.end()), iso.end());
    return iso;
}

// drop every direction that is a nonnegative combination of the others and
// the given cone seeds; one deterministic sweep in list order
void discard_redundant(std::vector<std::size_t>& keep, const std::vector<VecI>& dirs,
                       const std::vector<VecI>& seeds, int dim) {
    for (std::size_t pos = 0; pos < keep.size();) {
        std::vector<VecI> gens = seeds;
        for (std::size_t other : keep)
            if (other != keep[pos]) gens.push_back(dirs[other]);
        if (cone_contains(cone_from_rays(dim, gens), dirs[keep[pos]]))
            keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(pos));
        else
            ++pos;
    }
}

} // namespace

MatR majorant(const ExtendedAlgebraicLattice& e) {
    const MatI& g = e.lattice().gram();
    const std::size_t r = g.rows();
    const VecI gv = mat_vec(g, e.v());
    const VecI gh = mat_vec(g, e.h());
    const Int hsq = e.pair(e.h(), e.h());
    MatR m(r, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            m(i, j) = Rat(2 * gv[i] * gv[j], e.v_sq()) + Rat(2 * gh[i] * gh[j], hsq) -
                      Rat(g(i, j));
    if (!is_positive_definite(m))
        throw mk_error("internal_invariant", "majorant form is not positive definite");
    return m;
}

std::vector<VecI> short_vectors(const MatR& gram, const Rat& bound) {
    if (!gram.is_symmetric())
        throw input_error("gram_not_symmetric",
                          "short vector enumeration needs a symmetric Gram matrix");
    if (!is_positive_definite(gram))
        throw input_error("not_positive_definite",
                          "short vector enumeration needs a positive definite form");
    if (bound < 0) return {};
    const MatI u = lll_reduce_gram(gram);
    const MatR ur = to_rational(u);
    const MatR reduced = ur * gram * ur.transposed();
    const Ldlt l = ldlt(reduced);
    ShortVectorWalker w{l, u, gram.rows(), VecI(gram.rows(), Int(0)), {}};
    w.descend(static_cast<int>(gram.rows()) - 1, bound);
    std::sort(w.out.begin(), w.out.end(), lex_less);
    return w.out;
}

TheoremSet enumerate_theorem_set(const ExtendedAlgebraicLattice& e,
                                 const EnumerationBudget& budget) {
    const Rat b = budget.height_bound;
    if (b <= 0)
        throw input_error("bad_budget", "height_bound must be positive",
                          {"budget.height_bound"});

    const Int hsq = e.pair(e.h(), e.h());
    // any qualifying class a with pair(h,a) <= b satisfies
    // majorant(a) <= (n-1) + 2 b^2 / h^2 + 2
    const Rat cap = Rat(e.n() - 1) + 2 * b * b / Rat(hsq) + 2;

    TheoremSet out;
    for (const VecI& a : short_vectors(majorant(e), cap)) {
        const Int ha = e.pair(e.h(), a);
        if (ha == 0) {
            // qualifies except for strict positivity: a wall through h
            const Int asq = e.pair(a, a);
            if (asq < -2) continue;
            const Int av = e.pair(a, e.v());
            if (2 * iabs(av) > e.v_sq()) continue;
            if (Rat(asq) >= Rat(av * av, e.v_sq())) continue;
            const VecI na = negate(a);
            out.on_wall.push_back(lex_less(a, na) ? a : na);
            continue;
        }
        if (auto tc = qualify(e, a, b)) {
            // projected squares never fall below the length bound
            if (tc->r.q < Rat(-(e.n() + 3), 2))
                throw mk_error("internal_invariant", "curve class below the length bound");
            out.classes.push_back(std::move(*tc));
        }
    }
    std::sort(out.classes.begin(), out.classes.end(), class_order);
    std::sort(out.on_wall.begin(), out.on_wall.end(), lex_less);
    out.on_wall.erase(std::unique(out.on_wall.begin(), out.on_wall.end()),
                      out.on_wall.end());

    if (e.rank() == 2) {
        // divisor rank 1: the lattice is positive definite, no negative
        // classes exist at any height
        out.complete = true;
    } else if (e.rank() == 3) {
        out.complete = rank2_height_horizon(e) <= b;
    } else {
        out.complete = false;
    }
    return out;
}

std::vector<TheoremClass> box_oracle(const ExtendedAlgebraicLattice& e,
                                     const Int& coeff_bound,
                                     const std::optional<Rat>& height_cap) {
    if (coeff_bound < 1)
        throw input_error("bad_budget", "coeff_bound must be at least 1",
                          {"budget.coeff_bound"});
    const std::size_t r = e.rank();
    Int total = 1;
    for (std::size_t i = 0; i < r; ++i) {
        total *= 2 * coeff_bound + 1;
        if (total > 50'000'000)
            throw unsupported_error("box_too_large",
                                    "box oracle region exceeds the scan budget");
    }

    std::vector<TheoremClass> out;
    VecI a(r, -coeff_bound);
    while (true) {
        if (!is_zero(a)) {
            if (auto tc = qualify(e, a, height_cap)) out.push_back(std::move(*tc));
        }
        std::size_t i = 0;
        while (i < r && a[i] == coeff_bound) {
            a[i] = -coeff_bound;
            ++i;
        }
        if (i == r) break;
        ++a[i];
    }
    std::sort(out.begin(), out.end(), class_order);
    return out;
}

NegativeRays negative_extremal_rays(const ExtendedAlgebraicLattice& e,
                                    const EnumerationBudget& budget) {
    const TheoremSet ts = enumerate_theorem_set(e, budget);
    NegativeRays out;
    out.complete = ts.complete;
    out.on_wall = ts.on_wall;

    // one representative per ray: the least class in (height, lex) order
    std::map<VecI, TheoremClass> groups;
    for (const TheoremClass& tc : ts.classes) {
        VecI dir = primitive_vector(tc.r.coords);
        groups.emplace(std::move(dir), tc); // classes arrive sorted: first wins
    }
    if (groups.empty()) return out;

    std::vector<VecI> dirs;
    std::vector<TheoremClass> reps;
    for (auto& [dir, tc] : groups) {
        dirs.push_back(dir);
        reps.push_back(tc);
    }

    const int m = static_cast<int>(e.rank()) - 1;
    std::vector<std::size_t> keep;
    if (m == 2) {
        // hyperbolic plane: only the widest ray on each side of h survives
        const VecI hc = h2_int_coords(e, e.h());
        std::vector<VecI> dirs2;
        dirs2.reserve(dirs.size());
        for (const VecI& d : dirs) dirs2.push_back(h2_int_coords(e, d));
        for (int side : {+1, -1})
            if (auto i = widest_on_side(dirs2, hc, side)) keep.push_back(*i);
    } else {
        // higher rank: discard directions inside the cone of the others
        // together with rational points of the positive cone (h and the
        // isotropic directions in the search window). Conservative: kept
        // rays are candidates, not certified extremal.
        const VecI hc = h2_int_coords(e, e.h());
        const Int hsq = e.pair(e.h(), e.h());
        std::vector<VecI> dirs2;
        dirs2.reserve(dirs.size());
        for (const VecI& d : dirs) dirs2.push_back(h2_int_coords(e, d));
        std::vector<VecI> seeds =
            isotropic_directions(e.h2_alg_gram(), hc, hsq,
                                 budget.height_bound * Rat(e.v_sq()));
        seeds.push_back(primitive_vector(hc));
        keep.resize(dirs.size());
        for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
        discard_redundant(keep, dirs2, seeds, m);
    }

    for (std::size_t i : keep) out.rays.push_back(reps[i]);
    std::sort(out.rays.begin(), out.rays.end(), class_order);
    return out;
}

K3EffectiveCone k3_pseudoeffective(const MatI& pic_gram, const VecI& h,
                                   const EnumerationBudget& budget) {
    const Lattice lat(pic_gram);
    if (!lat.is_even())
        throw validation_error("gram_not_even", "K3 Picard lattice must be even",
                               {"model.k3.gram"});
    const auto sig = lat.signature();
    if (sig.first != 1 || sig.second != static_cast<int>(lat.rank()) - 1)
        throw validation_error("wrong_signature",
                               "K3 Picard lattice must have signature (1, rank-1)",
                               {"model.k3.gram"});
    if (h.size() != lat.rank())
        throw input_error("dimension_mismatch", "polarization has wrong length",
                          {"model.k3.polarization"});
    const Int hsq = lat.pair(h, h);
    if (hsq <= 0)
        throw validation_error("h_not_positive",
                               "polarization must have positive square",
                               {"model.k3.polarization"});

    K3EffectiveCone out;
    const std::size_t r = lat.rank();

    if (r == 1) {
        out.rays = {primitive_vector(h)};
        out.complete = true;
        return out;
    }

    if (r == 2) {
        // exact: collect every (-2)-class with positive degree up to the
        // certified horizon, then keep the widest per side; a side without
        // (-2)-classes is bounded by its light cone edge, exact only when
        // that edge is rational
        std::vector<VecI> neg;
        const BinaryForm form = binary_form(pic_gram);
        if (is_square(form.disc())) {
            for (const VecI& u : split_form_solutions(pic_gram, Int(-2)))
                if (pair_in(pic_gram, h, u) > 0) neg.push_back(u);
        } else {
            auto w = pell_height_window(pic_gram, h, Rat(-2), Int(1));
            if (!w)
                throw mk_error("internal_invariant",
                               "hyperbolic plane without automorph");
            const MatR m = dominant_form(pic_gram, h, hsq);
            for (const VecI& u : short_vectors(m, 2 * (*w) * (*w) / Rat(hsq) + 2)) {
                if (pair_in(pic_gram, u, u) != -2) continue;
                const Int hu = pair_in(pic_gram, h, u);
                if (hu > 0 && Rat(hu) <= *w) neg.push_back(u);
            }
        }
        std::sort(neg.begin(), neg.end(), lex_less);
        neg.erase(std::unique(neg.begin(), neg.end()), neg.end());

        std::vector<VecI> iso;
        for (VecI ray : rational_isotropic_rays(pic_gram)) {
            const Int hr = pair_in(pic_gram, h, ray);
            if (hr == 0)
                throw mk_error("internal_invariant",
                               "isotropic ray orthogonal to the polarization");
            if (hr < 0) ray = negate(ray);
            iso.push_back(std::move(ray));
        }

        out.complete = true;
        for (int side : {+1, -1}) {
            if (auto i = widest_on_side(neg, h, side)) {
                out.rays.push_back(neg[*i]);
            } else if (auto j = widest_on_side(iso, h, side)) {
                out.rays.push_back(iso[*j]);
            } else {
                out.complete = false; // irrational boundary on this side
            }
        }
        std::sort(out.rays.begin(), out.rays.end(), lex_less);
        return out;
    }

    // rank >= 3: budget-truncated candidate scan
    const Rat b = budget.height_bound;
    if (b <= 0)
        throw input_error("bad_budget", "height_bound must be positive",
                          {"budget.height_bound"});
    std::vector<VecI> dirs;
    const MatR m = dominant_form(pic_gram, h, hsq);
    for (const VecI& u : short_vectors(m, 2 * b * b / Rat(hsq) + 2)) {
        const Int q = pair_in(pic_gram, u, u);
        if (q != -2 && q != 0) continue;
        const Int hu = pair_in(pic_gram, h, u);
        if (hu <= 0 || Rat(hu) > b) continue;
        dirs.push_back(primitive_vector(u));
    }
    std::sort(dirs.begin(), dirs.end(), lex_less);
    dirs.erase(std::unique(dirs.begin(), dirs.end()), dirs.end());

    std::vector<std::size_t> keep(dirs.size());
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
    const std::vector<VecI> seeds = {primitive_vector(h)};
    discard_redundant(keep, dirs, seeds, static_cast<int>(r));
    for (std::size_t i : keep) out.rays.push_back(dirs[i]);
    out.complete = false;
    return out;
}

} // namespace morikit
