#include "morikit/cones.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>

#include "morikit/errors.hpp"
#include "morikit/linalg.hpp"

namespace morikit {

namespace {

// Tight-constraint incidence sets, one bit per processed constraint.
using Bits = std::vector<std::uint64_t>;

void bit_set(Bits& b, std::size_t i) {
    std::size_t w = i >> 6;
    if (w >= b.size()) b.resize(w + 1, 0);
    b[w] |= std::uint64_t(1) << (i & 63);
}

Bits bits_and(const Bits& a, const Bits& b) {
    Bits r(std::min(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] & b[i];
    return r;
}

bool bits_subset(const Bits& a, const Bits& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t bw = i < b.size() ? b[i] : 0;
        if (a[i] & ~bw) return false;
    }
    return true;
}

struct DDRay {
    VecI v;
    Bits tight;
};

std::vector<VecI> canonical_directions(int dim, const std::vector<VecI>& vs) {
    std::vector<VecI> out;
    out.reserve(vs.size());
    for (const auto& v : vs) {
        if (static_cast<int>(v.size()) != dim)
            throw input_error("dimension_mismatch", "cone vector has wrong length");
        if (is_zero(v)) continue;
        out.push_back(primitive_vector(v));
    }
    std::sort(out.begin(), out.end(), lex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<VecI> integerize(const std::vector<VecR>& vs) {
    std::vector<VecI> out;
    out.reserve(vs.size());
    for (const auto& v : vs)
        if (!is_zero(v)) out.push_back(primitive_vector(v));
    return out;
}

// Canonical representative of a ray direction modulo the lineality space:
// orthogonal projection off span(lin), primitivized. Makes the output depend
// only on the cone, not on which representatives the insertion order built.
VecI reduce_ray_mod_lineality(const VecI& r, const std::vector<VecI>& lin) {
    if (lin.empty()) return primitive_vector(r);
    const std::size_t m = lin.size(), n = r.size();
    MatR gram(m, m);
    VecR rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) gram(i, j) = Rat(dot(lin[i], lin[j]));
        rhs[i] = Rat(dot(lin[i], r));
    }
    auto z = solve(gram, rhs);
    if (!z)
        throw mk_error("internal_invariant", "lineality basis is not independent");
    VecR out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = Rat(r[k]);
        for (std::size_t i = 0; i < m; ++i) out[k] -= (*z)[i] * Rat(lin[i][k]);
    }
    return primitive_vector(out);
}

std::vector<VecI> with_lineality_pairs(const DualDescription& d) {
    std::vector<VecI> out = d.rays;
    for (const auto& l : d.lineality) {
        out.push_back(l);
        out.push_back(negate(l));
    }
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

} // namespace

DualDescription dual_description(int ambient_dim, const std::vector<VecI>& constraints) {
    if (ambient_dim <= 0)
        throw input_error("dimension_mismatch", "ambient dimension must be positive");
    const auto cons = canonical_directions(ambient_dim, constraints);

    std::vector<VecI> lineality;
    lineality.reserve(ambient_dim);
    for (int i = 0; i < ambient_dim; ++i) {
        VecI e(ambient_dim, Int(0));
        e[i] = 1;
        lineality.push_back(std::move(e));
    }
    std::vector<DDRay> rays;

    for (std::size_t ic = 0; ic < cons.size(); ++ic) {
        const VecI& a = cons[ic];

        std::size_t pivot = lineality.size();
        for (std::size_t i = 0; i < lineality.size(); ++i)
            if (dot(lineality[i], a) != 0) {
                pivot = i;
                break;
            }

        if (pivot < lineality.size()) {
            // The constraint cuts the lineality space: one basis direction
            // turns into a ray, everything else is shifted onto the
            // hyperplane a = 0 along it. Earlier constraints all vanish on
            // the pivot, so tight sets survive the shift untouched.
            const VecI lp = lineality[pivot];
            const Int d = dot(lp, a);
            std::vector<VecI> new_lin;
            new_lin.reserve(lineality.size() - 1);
            for (std::size_t i = 0; i < lineality.size(); ++i) {
                if (i == pivot) continue;
                const Int c = dot(lineality[i], a);
                VecI w(ambient_dim);
                for (int k = 0; k < ambient_dim; ++k)
                    w[k] = d * lineality[i][k] - c * lp[k];
                new_lin.push_back(primitive_vector(w));
            }
            lineality = std::move(new_lin);
            for (auto& r : rays) {
                const Int c = dot(r.v, a);
                VecI w(ambient_dim);
                for (int k = 0; k < ambient_dim; ++k) w[k] = d * r.v[k] - c * lp[k];
                if (d < 0) w = negate(w); // keep a positive multiple mod lp
                r.v = primitive_vector(w);
                bit_set(r.tight, ic);
            }
            DDRay r0;
            r0.v = d > 0 ? lp : negate(lp);
            for (std::size_t j = 0; j < ic; ++j) bit_set(r0.tight, j);
            rays.push_back(std::move(r0));
            continue;
        }

        // Lineality already lies on the hyperplane: classic double
        // description step on the rays.
        std::vector<Int> val(rays.size());
        std::vector<std::size_t> pos, zer, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(rays[i].v, a);
            if (val[i] > 0)
                pos.push_back(i);
            else if (val[i] == 0)
                zer.push_back(i);
            else
                neg.push_back(i);
        }
        if (neg.empty()) {
            for (std::size_t i : zer) bit_set(rays[i].tight, ic);
            continue;
        }

        std::vector<DDRay> created;
        for (std::size_t p : pos) {
            for (std::size_t n : neg) {
                Bits t = bits_and(rays[p].tight, rays[n].tight);
                // combinatorial adjacency: no third ray tight on everything
                // both p and n are tight on
                bool adjacent = true;
                for (std::size_t s = 0; s < rays.size(); ++s) {
                    if (s == p || s == n) continue;
                    if (bits_subset(t, rays[s].tight)) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;
                VecI w(ambient_dim);
                for (int k = 0; k < ambient_dim; ++k)
                    w[k] = val[p] * rays[n].v[k] - val[n] * rays[p].v[k];
                if (is_zero(w)) continue;
                DDRay r;
                r.v = primitive_vector(w);
                bit_set(t, ic);
                r.tight = std::move(t);
                created.push_back(std::move(r));
            }
        }

        std::vector<DDRay> next;
        next.reserve(pos.size() + zer.size() + created.size());
        for (std::size_t i : pos) next.push_back(std::move(rays[i]));
        for (std::size_t i : zer) {
            bit_set(rays[i].tight, ic);
            next.push_back(std::move(rays[i]));
        }
        for (auto& r : created) next.push_back(std::move(r));
        rays = std::move(next);
    }

    DualDescription out;
    if (lineality.size() == static_cast<std::size_t>(ambient_dim)) {
        // untouched standard basis: no constraint survived canonicalization
        out.lineality = std::move(lineality);
    } else if (!lineality.empty()) {
        // The walk produces some integral spanning set of the lineality
        // space, but the lattice it generates depends on the insertion
        // order. Saturate (kernel of the kernel) so the basis is canonical
        // for the subspace and every row is primitive.
        MatI lm(lineality.size(), ambient_dim);
        for (std::size_t i = 0; i < lineality.size(); ++i) lm.set_row(i, lineality[i]);
        const auto perp = integer_kernel_saturated(lm);
        MatI pm(perp.size(), ambient_dim);
        for (std::size_t i = 0; i < perp.size(); ++i) pm.set_row(i, perp[i]);
        out.lineality = integer_kernel_saturated(pm);
    }
    out.rays.reserve(rays.size());
    for (const auto& r : rays)
        out.rays.push_back(reduce_ray_mod_lineality(r.v, out.lineality));
    std::sort(out.rays.begin(), out.rays.end(), lex_less);
    return out;
}

RationalCone cone_from_rays(int ambient_dim, const std::vector<VecI>& generators) {
    RationalCone c;
    c.ambient_dim = ambient_dim;
    c.facets = with_lineality_pairs(dual_description(ambient_dim, generators));
    c.rays = with_lineality_pairs(dual_description(ambient_dim, c.facets));
    return c;
}

RationalCone cone_from_rays(int ambient_dim, const std::vector<VecR>& generators) {
    return cone_from_rays(ambient_dim, integerize(generators));
}

RationalCone cone_from_inequalities(int ambient_dim, const std::vector<VecI>& normals) {
    return dual_cone(cone_from_rays(ambient_dim, normals));
}

RationalCone cone_from_inequalities(int ambient_dim, const std::vector<VecR>& normals) {
    return cone_from_inequalities(ambient_dim, integerize(normals));
}

RationalCone dual_cone(const RationalCone& c) {
    RationalCone d;
    d.ambient_dim = c.ambient_dim;
    d.rays = c.facets;
    d.facets = c.rays;
    return d;
}

bool cone_contains(const RationalCone& c, const VecR& x) {
    if (static_cast<int>(x.size()) != c.ambient_dim)
        throw input_error("dimension_mismatch", "point has wrong length");
    for (const auto& f : c.facets) {
        Rat s(0);
        for (std::size_t k = 0; k < x.size(); ++k) s += Rat(f[k]) * x[k];
        if (s < 0) return false;
    }
    return true;
}

bool cone_contains(const RationalCone& c, const VecI& x) {
    if (static_cast<int>(x.size()) != c.ambient_dim)
        throw input_error("dimension_mismatch", "point has wrong length");
    for (const auto& f : c.facets)
        if (dot(f, x) < 0) return false;
    return true;
}

bool cone_contains_strictly(const RationalCone& c, const VecR& x) {
    if (static_cast<int>(x.size()) != c.ambient_dim)
        throw input_error("dimension_mismatch", "point has wrong length");
    for (const auto& f : c.facets) {
        Rat s(0);
        for (std::size_t k = 0; k < x.size(); ++k) s += Rat(f[k]) * x[k];
        if (s <= 0) return false;
    }
    return true;
}

VecI relative_interior_point(const RationalCone& c) {
    VecI p(c.ambient_dim, Int(0));
    for (const auto& r : c.rays)
        for (int k = 0; k < c.ambient_dim; ++k) p[k] += r[k];
    return p;
}

} // namespace morikit
