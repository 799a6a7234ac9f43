#pragma once

#include <optional>

#include "morikit/lattice.hpp"

namespace morikit {

// Rational curve class on the half-lattice side: the image of a divisor-side
// class under division by the Mukai pairing with v. Coordinates live in the
// ambient algebraic lattice tensored with Q; the denominator always divides
// 2n - 2.
struct CurveClass {
    VecR coords;
    Rat q;           // Beauville-Bogomolov square
    Int denominator; // least positive N with N * coords integral
};

// Algebraic part of the extended (Mukai-type) lattice of a variety of
// K3^[n] type: the sublattice where all cone computations happen, together
// with the Mukai vector v and a polarization h orthogonal to v.
class ExtendedAlgebraicLattice {
public:
    // raw constructor; validates every model invariant
    ExtendedAlgebraicLattice(Lattice lattice, VecI v, VecI h);

    const Lattice& lattice() const { return lattice_; }
    const VecI& v() const { return v_; }
    const VecI& h() const { return h_; }
    Int n() const { return n_; }
    Int v_sq() const { return v_sq_; }

    std::size_t rank() const { return lattice_.rank(); }

    Int pair(const VecI& x, const VecI& y) const { return lattice_.pair(x, y); }
    Rat pair(const VecR& x, const VecR& y) const { return lattice_.pair(x, y); }

    // Saturated basis of v-perp, the algebraic divisor lattice H^2_alg.
    // Canonical Hermite basis; cached.
    const std::vector<VecI>& h2_alg_basis() const;

    // Gram matrix of h2_alg_basis (signature (1, rank-2)).
    const MatI& h2_alg_gram() const;

    // Orthogonal projection away from v followed by the pairing-with-v
    // normalization: a |-> a - (pair(a,v)/v^2) v with its square.
    CurveClass theta_dual(const VecI& a) const;

    // pairing extended to rational vectors (same bilinear form)
    Rat q_pair(const VecR& x, const VecR& y) const { return lattice_.pair(x, y); }

    // exchange the polarization (validates orthogonality and positivity)
    ExtendedAlgebraicLattice with_polarization(const VecI& h) const;

private:
    Lattice lattice_;
    VecI v_, h_;
    Int n_, v_sq_;
    mutable std::optional<std::vector<VecI>> h2_basis_;
    mutable std::optional<MatI> h2_gram_;
};

// Hilbert scheme of n points on a K3 with Picard lattice pic_gram:
// ambient = Z r + Pic(S) + Z s with r, s isotropic, pair(r, s) = -1,
// v = r + (1-n) s. The polarization defaults to the image of h_k3.
// Returns the model together with the exceptional half-diagonal class
// delta = r + (n-1) s expressed in ambient coordinates.
struct HilbertModel {
    ExtendedAlgebraicLattice model;
    VecI delta;
};
HilbertModel from_k3_hilbert(const MatI& pic_gram, const Int& n, const VecI& h_k3);

// raw-data constructor used by deserialization; same checks as the class ctor
ExtendedAlgebraicLattice from_raw(const MatI& gram, const VecI& v, const VecI& h);

// Coordinates of x against h2_alg_basis; empty when x is not in the span
// of v-perp. Exact rational solve.
std::optional<VecR> h2_coordinates(const ExtendedAlgebraicLattice& e, const VecR& x);

// inverse of h2_coordinates: ambient coordinates of sum c_i * basis_i
VecR from_h2_coordinates(const ExtendedAlgebraicLattice& e, const VecR& c);

} // namespace morikit
