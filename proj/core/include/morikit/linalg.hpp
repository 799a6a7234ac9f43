#pragma once

#include <optional>
#include <vector>

#include "morikit/matrix.hpp"

namespace morikit {

// ---- exact rational elimination ----

std::size_t rank(const MatR& a);

// basis of { x : a x = 0 }, one row per basis vector. Deterministic
// (pivots chosen first-come in row-major order, free columns in order).
std::vector<VecR> kernel_basis(const MatR& a);

// solves a x = b; empty when inconsistent. If the solution is not unique
// the particular solution with all free variables zero is returned.
std::optional<VecR> solve(const MatR& a, const VecR& b);

std::optional<MatR> inverse(const MatR& a);

// determinant of an integer matrix by fraction-free (Bareiss) elimination.
Int det_bareiss(const MatI& a);

// ---- integer normal forms ----

// Canonical row Hermite form of the row span: pivots positive, entries above
// each pivot reduced into [0, pivot), zero rows dropped. Two integer row sets
// span the same sublattice iff their hermite_rows agree.
MatI hermite_rows(const MatI& a);

struct SmithResult {
    MatI d; // diagonal, d_i >= 0, d_i | d_{i+1}
    MatI u; // unimodular, u * a * v == d
    MatI v; // unimodular
};
SmithResult smith_normal_form(const MatI& a);

// saturated basis of { x in Z^n : a x = 0 }, rows of the result.
// (Columns of the Smith v matrix; saturation is automatic since v is
// unimodular.) Rows are put in canonical Hermite form.
std::vector<VecI> integer_kernel_saturated(const MatI& a);

// ---- quadratic form utilities ----

// Sylvester signature (n_plus, n_minus) of a symmetric rational matrix via
// congruent diagonalization. Throws validation_error{"gram_degenerate"}
// carrying the radical in the message if the form is degenerate.
std::pair<int, int> signature_of(const MatR& gram);

// all leading principal minors positive (Sylvester's criterion)
bool is_positive_definite(const MatR& gram);

// LDL^T data for a positive definite rational Gram matrix:
//   q(y) = sum_i d[i] * (y_i + sum_{j>i} m(i,j) y_j)^2
struct Ldlt {
    VecR d;
    MatR m; // strictly upper entries used
};
Ldlt ldlt(const MatR& gram);

// Exact LLL (delta = 3/4) on a positive definite Gram matrix. Returns a
// unimodular u with u * gram * u^T reduced.
MatI lll_reduce_gram(const MatR& gram);

} // namespace morikit
