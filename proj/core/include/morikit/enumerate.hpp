#pragma once

#include <optional>

#include "morikit/markman.hpp"

namespace morikit {

struct EnumerationBudget {
    Rat height_bound;   // heights are measured against the polarization
    int word_bound = 8; // reflection-word budget for chamber exploration
    Int coeff_bound = 8; // box oracle coordinate bound

    static EnumerationBudget defaults_for(const ExtendedAlgebraicLattice& e) {
        return EnumerationBudget{Rat(10) * Rat(e.v_sq()), 8, 8};
    }
};

// One qualifying class of the enumeration: an ambient lattice vector a with
// a^2 >= -2 and |pair(a,v)| <= v^2/2, recorded with its half-lattice shadow
// R = theta_dual(a), which has q(R) < 0 and positive height against h.
struct TheoremClass {
    VecI a;
    Int a_sq;
    Int av;
    CurveClass r;
    Rat height; // q_pair(h, r) = pair(h, a) > 0
};

struct TheoremSet {
    std::vector<TheoremClass> classes; // sorted by (height, lex a)
    bool complete = false; // rank-2 certification: no extremal ray beyond budget
    // Classes that satisfy every condition except positivity against h and
    // pair to exactly zero: walls through the polarization. Cone assembly
    // rejects models with nonempty on_wall.
    std::vector<VecI> on_wall;
};

// Positive definite majorant 2 q(proj onto span(v,h)) - q(x) of the ambient
// form, as a rational Gram matrix. Verified positive definite.
MatR majorant(const ExtendedAlgebraicLattice& e);

// All integer x != 0 with x^T gram x <= bound, for positive definite gram.
// LLL-reduced Fincke-Pohst walk with exact interval arithmetic.
std::vector<VecI> short_vectors(const MatR& gram, const Rat& bound);

TheoremSet enumerate_theorem_set(const ExtendedAlgebraicLattice& e,
                                 const EnumerationBudget& budget);

// Independent oracle: scans the coordinate box |a_i| <= coeff_bound and
// applies the defining inequalities literally, one vector at a time. Used to
// cross-validate the branch-and-bound enumeration on finite regions.
std::vector<TheoremClass> box_oracle(const ExtendedAlgebraicLattice& e,
                                     const Int& coeff_bound,
                                     const std::optional<Rat>& height_cap);

struct NegativeRays {
    // one representative per extremal-candidate ray, sorted by (height, lex)
    std::vector<TheoremClass> rays;
    bool complete = false;
    std::vector<VecI> on_wall;
};

// Deduplicates the theorem set to primitive ray representatives (the least
// positive class on each ray, i.e. smallest height) and discards rays that
// are nonnegative combinations of the positive cone and the other rays.
NegativeRays negative_extremal_rays(const ExtendedAlgebraicLattice& e,
                                    const EnumerationBudget& budget);

struct K3EffectiveCone {
    std::vector<VecI> rays; // primitive integral generators
    bool complete = false;
};

// Extremal rays of the closed cone generated by the classes D with
// (D,D) >= -2 and (D,h) > 0 on a K3 Picard lattice. Exact (certified) in
// rank 1 and 2; budget-truncated candidates in higher rank.
K3EffectiveCone k3_pseudoeffective(const MatI& pic_gram, const VecI& h,
                                   const EnumerationBudget& budget);

} // namespace morikit
