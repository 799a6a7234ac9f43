#pragma once

#include <optional>
#include <vector>

#include "morikit/linalg.hpp"

namespace morikit {

// Exact machinery for rank-2 indefinite integral lattices (signature (1,1)):
// rational isotropic directions, a fundamental automorph from the Pell
// equation of the discriminant, and a certified search window for solutions
// of q(u) = value on the positive side of a polarization. Everything here is
// exact integer/rational arithmetic.

// Binary form data for a symmetric 2x2 Gram matrix [[A,B],[B,C]]:
// q(x,y) = A x^2 + 2 B x y + C y^2, disc = B^2 - A C (> 0 iff sig (1,1)).
struct BinaryForm {
    Int a, b, c; // q = a x^2 + 2 b x y + c y^2
    Int disc() const { return b * b - a * c; }
};

BinaryForm binary_form(const MatI& gram2);

// Primitive integral isotropic directions, when the discriminant is a
// perfect square; empty otherwise. At most two rays up to sign; each is
// returned with an unspecified sign (callers normalize against h).
std::vector<VecI> rational_isotropic_rays(const MatI& gram2);

// Fundamental solution (x1, y1), y1 >= 1, of x^2 - D y^2 = 1 for D > 0
// non-square, via the continued fraction expansion of sqrt(D).
std::pair<Int, Int> pell_fundamental(const Int& d);

// Infinite-order automorph gamma of the form (gamma^T G gamma = G) with
// positive eigenvalues, from the Pell solution of disc. Empty when the
// discriminant is a square (the automorph group is then finite).
std::optional<MatI> fundamental_automorph(const MatI& gram2);

// multiplicative order of m in GL_2(Z/modulus); modulus >= 1
Int matrix_order_mod(const MatI& m, const Int& modulus);

// Certified enumeration window. If q(u) = value (value < 0) has any integral
// solution u in a fixed residue class mod `modulus` with pair(h, u) > 0 on
// either side of h, then it has one with
//     pair(h, u) <= Lambda_mod * sqrt(q(h) * |value|) / 2,
// where Lambda_mod bounds the eigenvalue of the residue-preserving automorph
// power. Returns a rational upper bound for that window, or nullopt when the
// discriminant is a square (use exhaustive factor search instead) or the
// lattice is not hyperbolic.
std::optional<Rat> pell_height_window(const MatI& gram2, const VecI& h2,
                                      const Rat& value, const Int& modulus);

// Square-discriminant fallback: all integral solutions of q(u) = value
// (value != 0) by divisor enumeration in split light-cone coordinates.
// Finite, complete.
std::vector<VecI> split_form_solutions(const MatI& gram2, const Int& value);

} // namespace morikit
