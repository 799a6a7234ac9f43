#pragma once

#include <optional>

#include "morikit/cones.hpp"
#include "morikit/enumerate.hpp"

namespace morikit {

// Cone of curve classes: the polyhedral inner part (negative extremal rays
// plus the rational generators we hold of the positive-cone slab) together
// with the quadric data {x : q(x) >= 0, q_pair(h, x) >= 0} that no finite
// ray list captures. Coordinates are taken against h2_alg_basis.
struct ConeDescription {
    RationalCone polyhedral;
    MatI gram;     // divisor-basis Gram matrix, defines the quadric part
    VecI h;        // polarization in divisor-basis coordinates, primitive
    bool complete; // ray list certified complete for the budget
};

ConeDescription mori_cone(const ExtendedAlgebraicLattice& e,
                          const EnumerationBudget& budget);

enum class Containment { inside, outside, unknown };

// Membership in the described cone (convex hull of the quadric slab and the
// listed rays). Exact for divisor rank <= 2; for higher rank, `inside` and
// `outside` are certified and `unknown` means neither certificate applies.
Containment mori_contains(const ConeDescription& c, const VecR& x);

// Dual chamber on the divisor side. `cone` is cut out by the wall
// inequalities q_pair(x, R) >= 0 together with the supporting tangents of
// the positive cone that have rational contact; it contains the nef cone
// and equals it exactly when every ray of `cone` lies in the closed
// positive cone, which `exact_boundary` certifies. In divisor rank 2 the
// certificate holds whenever the boundary rays are rational.
struct NefCone {
    RationalCone cone; // divisor-basis coordinates
    bool exact_boundary;
    bool complete; // wall list certified complete for the budget
};

NefCone nef_cone(const ExtendedAlgebraicLattice& e,
                 const EnumerationBudget& budget);

// Reflection through a primitive divisor class of negative square, as an
// integral involution of the ambient lattice fixing the orthogonal
// complement of the class and negating the class itself.
struct Reflection {
    VecI cls;    // ambient coordinates
    MatI matrix; // action on ambient column vectors
};

// nullopt when the reflection is not integral on the ambient lattice.
// Throws input_error for a class of nonnegative square or a non-primitive
// class.
std::optional<Reflection> reflection(const ExtendedAlgebraicLattice& e,
                                     const VecI& cls);

VecI reflect(const Reflection& r, const VecI& x);
VecR reflect(const Reflection& r, const VecR& x);

// Primitive divisor classes supporting walls of the movable cone: classes
// of negative square proportional to an enumerated curve direction whose
// reflection is integral. Ambient coordinates, lex sorted.
std::vector<VecI> exceptional_candidates(const ExtendedAlgebraicLattice& e,
                                         const EnumerationBudget& budget);

struct Chamber {
    RationalCone cone;             // divisor-basis coordinates
    std::vector<CurveClass> walls; // classes supporting the cone's facets
    VecI interior_point;           // divisor-basis, primitive, off every wall
    bool contains_h;
};

struct MovableDecomposition {
    std::vector<Chamber> chambers; // canonically sorted; exactly one contains_h
    std::vector<VecI> exceptional_walls; // ambient primitive wall classes
    RationalCone shell;  // outer polyhedral shell of the movable cone
    bool exact_boundary; // shell and every chamber lie in the closed positive cone
    bool complete;       // every per-chamber wall list certified complete
    bool saturated;      // the walk closed out below the word bound
};

// Chamber decomposition of the movable cone, walked by crossing flop walls
// from the nef chamber outward. Wall sets are recomputed per chamber with
// the chamber's own interior point as the positivity reference; the visited
// set is memoized on canonical cone descriptions and the walk depth is
// capped by budget.word_bound. Supports divisor rank <= 4.
MovableDecomposition movable_chambers(const ExtendedAlgebraicLattice& e,
                                      const EnumerationBudget& budget);

struct ReflectionPath {
    VecR point; // ambient coordinates
    int steps;
    bool inside; // landed weakly inside every exceptional wall
};

// Iterated reflection of a positive-cone point through violated exceptional
// walls, at most budget.word_bound steps. Points already inside are
// returned unchanged with steps = 0.
ReflectionPath reflect_into_movable(const ExtendedAlgebraicLattice& e,
                                    const VecR& x,
                                    const EnumerationBudget& budget);

} // namespace morikit
