#include "morikit/chambers.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <utility>

#include "morikit/errors.hpp"
#include "morikit/linalg.hpp"
#include "morikit/quadsolve.hpp"

namespace morikit {

namespace {

VecI h2_int(const ExtendedAlgebraicLattice& e, const VecR& x) {
    auto c = h2_coordinates(e, x);
    if (!c) {
        throw mk_error("internal_invariant", "class does not lie in the divisor lattice span");
    }
    auto [ints, den] = clear_denominators(*c);
    if (den != 1) {
        throw mk_error("internal_invariant", "divisor class has non-integral coordinates");
    }
    return ints;
}

Int q_of(const MatI& g, const VecI& x) { return dot(x, mat_vec(g, x)); }

// inward normal of the halfspace {x : q_pair(x, dir) >= 0}
VecI pairing_normal(const MatI& g, const VecI& dir) {
    return primitive_vector(mat_vec(g, dir));
}

// Supporting halfspaces of the closed positive cone with rational contact:
// tangents at the rational isotropic rays (rank 2 only) and at the reference
// polarization. All of them contain the positive cone, so adding them to a
// wall system only sharpens the outer shell.
std::vector<VecI> positive_tangents(const MatI& g2, const VecI& ref) {
    std::vector<VecI> out;
    if (g2.rows() == 2) {
        const VecI gref = mat_vec(g2, ref);
        for (auto w : rational_isotropic_rays(g2)) {
            if (dot(w, gref) < 0) w = negate(w);
            out.push_back(pairing_normal(g2, w));
        }
    }
    out.push_back(pairing_normal(g2, ref));
    return out;
}

bool ray_in_closed_positive(const MatI& g2, const VecI& gref, const VecI& r) {
    return q_of(g2, r) >= 0 && dot(r, gref) >= 0;
}

struct ChamberData {
    RationalCone cone;
    std::vector<CurveClass> walls;   // facet-supporting, aligned with the two below
    std::vector<VecI> wall_dirs_h2;  // primitive divisor-basis directions
    std::vector<VecI> wall_dirs_amb; // primitive ambient directions
    std::vector<bool> divisorial;    // reflection through the wall is integral
    bool complete = false;
    bool exact = false;
};

// Wall system and chamber cone at the polarization hp. nullopt when hp lies
// on a wall, so the caller can either reject or perturb.
std::optional<ChamberData> chamber_at(const ExtendedAlgebraicLattice& e,
                                      const VecI& hp_ambient,
                                      const EnumerationBudget& budget) {
    const ExtendedAlgebraicLattice local = e.with_polarization(hp_ambient);
    const NegativeRays nr = negative_extremal_rays(local, budget);
    if (!nr.on_wall.empty()) return std::nullopt;

    const MatI& g2 = local.h2_alg_gram();
    const int m = g2.rows();
    const VecI hp2 = primitive_vector(h2_int(local, to_rational(hp_ambient)));

    std::vector<VecI> normals;
    std::vector<VecI> dirs2, dirs_amb;
    for (const TheoremClass& tc : nr.rays) {
        const VecI amb = primitive_vector(tc.r.coords);
        const VecI d2 = primitive_vector(h2_int(local, to_rational(amb)));
        dirs_amb.push_back(amb);
        dirs2.push_back(d2);
        normals.push_back(pairing_normal(g2, d2));
    }
    for (const VecI& t : positive_tangents(g2, hp2)) normals.push_back(t);

    ChamberData cd;
    cd.cone = cone_from_inequalities(m, normals);
    cd.complete = nr.complete;

    const VecI ghp = mat_vec(g2, hp2);
    cd.exact = true;
    for (const VecI& r : cd.cone.rays) {
        if (!ray_in_closed_positive(g2, ghp, r)) cd.exact = false;
    }

    for (std::size_t i = 0; i < nr.rays.size(); ++i) {
        const VecI normal = pairing_normal(g2, dirs2[i]);
        const auto& facets = cd.cone.facets;
        if (std::find(facets.begin(), facets.end(), normal) == facets.end()) continue;
        cd.walls.push_back(nr.rays[i].r);
        cd.wall_dirs_h2.push_back(dirs2[i]);
        cd.wall_dirs_amb.push_back(dirs_amb[i]);
        cd.divisorial.push_back(reflection(e, dirs_amb[i]).has_value());
    }
    return cd;
}

int rat_det2_sign(const VecR& a, const VecR& b) {
    return sign(Rat(a[0] * b[1] - a[1] * b[0]));
}

} // namespace

NefCone nef_cone(const ExtendedAlgebraicLattice& e, const EnumerationBudget& budget) {
    auto cd = chamber_at(e, e.h(), budget);
    if (!cd) {
        throw validation_error("polarization_on_wall",
                               "polarization lies on a wall of the chamber decomposition; "
                               "perturb it into a chamber interior",
                               {"ample"});
    }
    const VecI hc2 = primitive_vector(h2_int(e, to_rational(e.h())));
    if (!cone_contains(cd->cone, to_rational(hc2))) {
        throw validation_error("polarization_outside_nef",
                               "supplied polarization outside computed nef cone", {"ample"});
    }
    return NefCone{cd->cone, cd->exact, cd->complete};
}

ConeDescription mori_cone(const ExtendedAlgebraicLattice& e, const EnumerationBudget& budget) {
    const NegativeRays nr = negative_extremal_rays(e, budget);
    if (!nr.on_wall.empty()) {
        throw validation_error("polarization_on_wall",
                               "polarization lies on a wall of the chamber decomposition; "
                               "perturb it into a chamber interior",
                               {"ample"});
    }
    const MatI& g2 = e.h2_alg_gram();
    const int m = g2.rows();
    const VecI hc2 = primitive_vector(h2_int(e, to_rational(e.h())));

    std::vector<VecI> gens;
    for (const TheoremClass& tc : nr.rays) {
        const VecI amb = primitive_vector(tc.r.coords);
        gens.push_back(primitive_vector(h2_int(e, to_rational(amb))));
    }
    if (m == 2) {
        const VecI gh = mat_vec(g2, hc2);
        for (auto w : rational_isotropic_rays(g2)) {
            if (dot(w, gh) < 0) w = negate(w);
            gens.push_back(w);
        }
    }
    gens.push_back(hc2);

    return ConeDescription{cone_from_rays(m, gens), g2, hc2, nr.complete};
}

Containment mori_contains(const ConeDescription& c, const VecR& x) {
    const int m = c.polyhedral.ambient_dim;
    if (static_cast<int>(x.size()) != m) {
        throw input_error("dimension_mismatch", "point dimension does not match the cone",
                          {"point"});
    }
    const MatR g = to_rational(c.gram);
    const VecR gx = mat_vec(g, x);
    const Rat qx = dot(x, gx);
    const Rat hx = dot(to_rational(c.h), gx);

    if (qx >= 0 && hx >= 0) return Containment::inside;
    if (cone_contains(c.polyhedral, x)) return Containment::inside;
    if (hx < 0) return Containment::outside;

    if (m <= 1) return Containment::outside;
    if (m == 2) {
        // qx < 0 here; the slab misses x and every generator pairs
        // positively with h, so hx == 0 already rules x out.
        if (hx == 0) return Containment::outside;
        const VecR hr = to_rational(c.h);
        const int side = rat_det2_sign(hr, x);
        if (side == 0) return Containment::outside;
        for (const VecI& b : c.polyhedral.rays) {
            if (q_of(c.gram, b) >= 0) continue;
            const VecR br = to_rational(b);
            if (rat_det2_sign(hr, br) != side) continue;
            const int d = rat_det2_sign(x, br);
            return (d == side || d == 0) ? Containment::inside : Containment::outside;
        }
        return Containment::outside;
    }

    // A polyhedral facet separates x from the whole cone whenever its
    // pairing-dual vector y (with Gy = f) lies in the closed positive cone:
    // then (z, y) >= 0 on the quadric slab as well as on every listed ray.
    for (const VecI& f : c.polyhedral.facets) {
        const Rat qy = dot(solve(g, to_rational(f)).value(), to_rational(f));
        const Int hy = dot(c.h, f);
        if (qy >= 0 && hy >= 0 && dot(to_rational(f), x) < 0) return Containment::outside;
    }
    return Containment::unknown;
}

std::optional<Reflection> reflection(const ExtendedAlgebraicLattice& e, const VecI& cls) {
    if (cls.size() != e.rank()) {
        throw input_error("dimension_mismatch", "class dimension does not match the lattice",
                          {"class"});
    }
    if (is_zero(cls) || content(cls) != 1) {
        throw input_error("class_not_primitive", "reflection requires a primitive class",
                          {"class"});
    }
    const Int esq = e.pair(cls, cls);
    if (esq >= 0) {
        throw input_error("class_square_nonnegative",
                          "reflection requires a class of negative self-pairing", {"class"});
    }
    const VecI w = mat_vec(e.lattice().gram(), cls);
    const int r = static_cast<int>(e.rank());
    MatI mat = MatI::identity(r);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            const Int num = 2 * cls[i] * w[j];
            const Int q = num / esq;
            if (q * esq != num) return std::nullopt;
            mat(i, j) -= q;
        }
    }
    return Reflection{cls, mat};
}

VecI reflect(const Reflection& r, const VecI& x) { return mat_vec(r.matrix, x); }
VecR reflect(const Reflection& r, const VecR& x) { return mat_vec(to_rational(r.matrix), x); }

std::vector<VecI> exceptional_candidates(const ExtendedAlgebraicLattice& e,
                                         const EnumerationBudget& budget) {
    const TheoremSet ts = enumerate_theorem_set(e, budget);
    std::set<VecI> seen;
    for (const TheoremClass& tc : ts.classes) {
        const VecI dir = primitive_vector(tc.r.coords);
        if (seen.count(dir)) continue;
        if (e.pair(dir, dir) >= 0) continue;
        if (reflection(e, dir).has_value()) seen.insert(dir);
    }
    return std::vector<VecI>(seen.begin(), seen.end());
}

MovableDecomposition movable_chambers(const ExtendedAlgebraicLattice& e,
                                      const EnumerationBudget& budget) {
    const MatI& g2 = e.h2_alg_gram();
    const int m = g2.rows();
    if (m > 4) {
        throw unsupported_error("unsupported_rank",
                                "movable chamber decomposition supports divisor rank at most 4",
                                {"model"});
    }

    auto first = chamber_at(e, e.h(), budget);
    if (!first) {
        throw validation_error("polarization_on_wall",
                               "polarization lies on a wall of the chamber decomposition; "
                               "perturb it into a chamber interior",
                               {"ample"});
    }

    const VecI hc2 = primitive_vector(h2_int(e, to_rational(e.h())));
    const VecI ghc = mat_vec(g2, hc2);

    struct Node {
        ChamberData cd;
        VecI hp2; // divisor-basis interior point, primitive
        int depth;
    };
    using Key = std::pair<std::vector<VecI>, std::vector<VecI>>;
    auto key_of = [](const RationalCone& c) { return Key{c.rays, c.facets}; };

    std::set<Key> visited;
    std::deque<Node> queue;
    std::vector<Node> done;
    std::set<VecI> exc_walls;

    queue.push_back(Node{*first, hc2, 0});
    visited.insert(key_of(first->cone));

    bool complete = true;
    bool exact = true;
    bool saturated = true;
    const int word_bound = std::max(budget.word_bound, 0);

    while (!queue.empty()) {
        Node node = std::move(queue.front());
        queue.pop_front();
        complete = complete && node.cd.complete;
        exact = exact && node.cd.exact;

        for (std::size_t wi = 0; wi < node.cd.walls.size(); ++wi) {
            if (node.cd.divisorial[wi]) {
                exc_walls.insert(node.cd.wall_dirs_amb[wi]);
                continue;
            }
            const VecI f = pairing_normal(g2, node.cd.wall_dirs_h2[wi]);

            // relative interior point of the facet; only walls that meet the
            // open positive cone separate two chambers
            VecI xf(m, Int(0));
            for (const VecI& r : node.cd.cone.rays) {
                if (dot(f, r) == 0) {
                    for (int i = 0; i < m; ++i) xf[i] += r[i];
                }
            }
            if (is_zero(xf) || q_of(g2, xf) <= 0) continue;

            if (node.depth >= word_bound) {
                const VecI nf = negate(f);
                bool neighbor_known = false;
                for (const Node& d : done) {
                    const auto& fs = d.cd.cone.facets;
                    if (std::find(fs.begin(), fs.end(), nf) != fs.end()) neighbor_known = true;
                }
                if (!neighbor_known) saturated = false;
                continue;
            }

            bool crossed = false;
            Int scale = 1;
            for (int attempt = 0; attempt < 64; ++attempt, scale *= 2) {
                VecI p(m);
                for (int i = 0; i < m; ++i) p[i] = scale * xf[i] - node.hp2[i];
                if (q_of(g2, p) <= 0 || dot(p, ghc) <= 0) continue;
                p = primitive_vector(p);
                VecI amb(e.rank(), Int(0));
                const auto& basis = e.h2_alg_basis();
                for (int i = 0; i < m; ++i) {
                    for (std::size_t k = 0; k < e.rank(); ++k) amb[k] += p[i] * basis[i][k];
                }
                auto nb = chamber_at(e, amb, budget);
                if (!nb) continue; // landed on a wall; push further out
                const auto& fs = nb->cone.facets;
                if (std::find(fs.begin(), fs.end(), negate(f)) == fs.end()) continue;
                crossed = true;
                if (!visited.count(key_of(nb->cone))) {
                    // the crossing point can be large after doubling; the ray
                    // sum is a small canonical interior point and usually
                    // carries a tighter completeness certificate
                    VecI canon(m, Int(0));
                    for (const VecI& r : nb->cone.rays) {
                        for (int i = 0; i < m; ++i) canon[i] += r[i];
                    }
                    canon = primitive_vector(canon);
                    if (canon != p) {
                        VecI camb(e.rank(), Int(0));
                        for (int i = 0; i < m; ++i) {
                            for (std::size_t k = 0; k < e.rank(); ++k) {
                                camb[k] += canon[i] * basis[i][k];
                            }
                        }
                        auto cb = chamber_at(e, camb, budget);
                        if (cb && cb->cone.rays == nb->cone.rays &&
                            cb->cone.facets == nb->cone.facets) {
                            nb = std::move(cb);
                            p = canon;
                        }
                    }
                    visited.insert(key_of(nb->cone));
                    queue.push_back(Node{std::move(*nb), p, node.depth + 1});
                }
                break;
            }
            if (!crossed) {
                // the shared wall escaped the neighbor's height budget
                complete = false;
                saturated = false;
            }
        }
        done.push_back(std::move(node));
    }

    MovableDecomposition out;
    out.exceptional_walls.assign(exc_walls.begin(), exc_walls.end());

    std::vector<VecI> shell_normals;
    for (const VecI& w : out.exceptional_walls) {
        shell_normals.push_back(pairing_normal(g2, primitive_vector(h2_int(e, to_rational(w)))));
    }
    for (const VecI& t : positive_tangents(g2, hc2)) shell_normals.push_back(t);
    out.shell = cone_from_inequalities(m, shell_normals);
    for (const VecI& r : out.shell.rays) {
        if (!ray_in_closed_positive(g2, ghc, r)) exact = false;
    }

    for (const Node& nd : done) {
        Chamber ch;
        ch.cone = nd.cd.cone;
        ch.walls = nd.cd.walls;
        ch.interior_point = nd.hp2;
        ch.contains_h = cone_contains_strictly(nd.cd.cone, to_rational(hc2));
        out.chambers.push_back(std::move(ch));
    }
    std::sort(out.chambers.begin(), out.chambers.end(), [](const Chamber& a, const Chamber& b) {
        if (a.cone.rays != b.cone.rays) return a.cone.rays < b.cone.rays;
        return a.cone.facets < b.cone.facets;
    });

    int with_h = 0;
    for (const Chamber& c : out.chambers) with_h += c.contains_h ? 1 : 0;
    if (with_h != 1) {
        throw mk_error("internal_invariant",
                       "chamber walk did not isolate the polarization chamber");
    }

    out.exact_boundary = exact;
    out.complete = complete;
    out.saturated = saturated;
    return out;
}

ReflectionPath reflect_into_movable(const ExtendedAlgebraicLattice& e, const VecR& x,
                                    const EnumerationBudget& budget) {
    const std::vector<VecI> walls = exceptional_candidates(e, budget);
    std::vector<Reflection> refls;
    refls.reserve(walls.size());
    for (const VecI& w : walls) refls.push_back(*reflection(e, w));

    ReflectionPath path{x, 0, false};
    const int word_bound = std::max(budget.word_bound, 0);
    while (true) {
        int violated = -1;
        for (std::size_t j = 0; j < walls.size(); ++j) {
            if (e.q_pair(path.point, to_rational(walls[j])) < 0) {
                violated = static_cast<int>(j);
                break;
            }
        }
        if (violated < 0) {
            path.inside = true;
            return path;
        }
        if (path.steps >= word_bound) return path;
        path.point = reflect(refls[violated], path.point);
        ++path.steps;
    }
}

} // namespace morikit
