#pragma once

#include <string>
#include <vector>

#include "morikit/linalg.hpp"

namespace morikit {

// Integral lattice: free Z-module of finite rank with a symmetric integer
// Gram matrix. Vectors are coordinate rows against the implicit basis.
class Lattice {
public:
    explicit Lattice(MatI gram);

    std::size_t rank() const { return gram_.rows(); }
    const MatI& gram() const { return gram_; }

    Int pair(const VecI& x, const VecI& y) const;
    Rat pair(const VecR& x, const VecR& y) const;

    // (n_plus, n_minus); throws validation_error{gram_degenerate} with the
    // radical when the form is degenerate.
    std::pair<int, int> signature() const;

    Int determinant() const;

    bool is_even() const;

    // Saturated orthogonal complement of the span of the given vectors,
    // canonical Hermite basis, one row per basis vector.
    std::vector<VecI> orthogonal_complement(const std::vector<VecI>& s) const;

private:
    MatI gram_;
};

// divides by the content; error on the zero vector
VecI primitivize(const VecI& x);

bool is_primitive(const VecI& x);

// Standard builders: "U" (hyperbolic plane), "E8_minus" (negative definite
// E8 in a root basis), "mukai" (U^4 + E8_minus^2, rank 24).
Lattice build_standard(const std::string& name);

// orthogonal direct sum
Lattice direct_sum(const Lattice& a, const Lattice& b);

} // namespace morikit
