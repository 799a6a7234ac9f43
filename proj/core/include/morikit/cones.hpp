#pragma once

#include "morikit/matrix.hpp"

namespace morikit {

// Closed rational polyhedral cone with both descriptions kept in sync.
// rays: minimal generating set, primitive integral, lex sorted. A lineality
// direction l appears as the pair +l, -l. facets: irredundant inequality
// normals f (cone = {x : f.x >= 0}), same conventions; an implicit equality
// appears as a +/- normal pair. The zero cone has no rays and +/- unit
// normal pairs as facets.
struct RationalCone {
    int ambient_dim = 0;
    std::vector<VecI> rays;
    std::vector<VecI> facets;

    bool operator==(const RationalCone&) const = default;
};

RationalCone cone_from_rays(int ambient_dim, const std::vector<VecI>& generators);
RationalCone cone_from_rays(int ambient_dim, const std::vector<VecR>& generators);
RationalCone cone_from_inequalities(int ambient_dim, const std::vector<VecI>& normals);
RationalCone cone_from_inequalities(int ambient_dim, const std::vector<VecR>& normals);

// Swaps the two descriptions. dual(dual(c)) == c exactly.
RationalCone dual_cone(const RationalCone& c);

bool cone_contains(const RationalCone& c, const VecR& x);
bool cone_contains(const RationalCone& c, const VecI& x);

// Strict inequality on every facet. For a full dimensional cone this is
// interior membership; for lower dimensional cones it is always false
// because the implicit equality pairs cannot both be strict.
bool cone_contains_strictly(const RationalCone& c, const VecR& x);

// Sum of the stored rays (lineality pairs cancel): a relative interior
// point, the zero vector for the zero cone.
VecI relative_interior_point(const RationalCone& c);

// Extreme rays of {y : y.v >= 0 for all v}, with the lineality part
// returned separately as a canonical (Hermite) basis. Incremental double
// description with combinatorial adjacency; constraints are deduplicated,
// primitivized and inserted in lex order, so the output is deterministic.
struct DualDescription {
    std::vector<VecI> lineality;
    std::vector<VecI> rays;
};
DualDescription dual_description(int ambient_dim, const std::vector<VecI>& constraints);

} // namespace morikit
