#include "morikit/lattice.hpp"

namespace morikit {

Lattice::Lattice(MatI gram) : gram_(std::move(gram)) {
    if (gram_.rows() != gram_.cols())
        throw input_error("gram_not_square", "Gram matrix must be square");
    if (!gram_.is_symmetric())
        throw input_error("gram_not_symmetric", "Gram matrix must be symmetric");
}

Int Lattice::pair(const VecI& x, const VecI& y) const {
    if (x.size() != rank() || y.size() != rank())
        throw input_error("dimension_mismatch",
                          "vector length does not match lattice rank");
    return dot(x, mat_vec(gram_, y));
}

Rat Lattice::pair(const VecR& x, const VecR& y) const {
    if (x.size() != rank() || y.size() != rank())
        throw input_error("dimension_mismatch",
                          "vector length does not match lattice rank");
    return dot(x, mat_vec(to_rational(gram_), y));
}

std::pair<int, int> Lattice::signature() const {
    return signature_of(to_rational(gram_));
}

Int Lattice::determinant() const { return det_bareiss(gram_); }

bool Lattice::is_even() const {
    for (std::size_t i = 0; i < rank(); ++i)
        if (gram_(i, i) % 2 != 0) return false;
    return true;
}

std::vector<VecI> Lattice::orthogonal_complement(const std::vector<VecI>& s) const {
    // x is orthogonal to span(s) iff (G s_j) . x = 0 for every j
    MatI a(s.size(), rank());
    for (std::size_t j = 0; j < s.size(); ++j) {
        if (s[j].size() != rank())
            throw input_error("dimension_mismatch",
                              "complement vector length does not match rank");
        a.set_row(j, mat_vec(gram_, s[j]));
    }
    return integer_kernel_saturated(a);
}

VecI primitivize(const VecI& x) { return primitive_vector(x); }

bool is_primitive(const VecI& x) { return content(x) == 1; }

namespace {

MatI u_gram() { return MatI{{Int(0), Int(1)}, {Int(1), Int(0)}}; }

MatI e8_minus_gram() {
    // Bourbaki node ordering; edges 1-3, 3-4, 4-5, 5-6, 6-7, 7-8 and 2-4.
    MatI g(8, 8);
    for (std::size_t i = 0; i < 8; ++i) g(i, i) = -2;
    const int edges[7][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
    for (const auto& e : edges) {
        g(e[0] - 1, e[1] - 1) = 1;
        g(e[1] - 1, e[0] - 1) = 1;
    }
    return g;
}

} // namespace

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    std::size_t n = a.rank(), m = b.rank();
    MatI g(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram()(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram()(i, j);
    return Lattice(std::move(g));
}

Lattice build_standard(const std::string& name) {
    if (name == "U") return Lattice(u_gram());
    if (name == "E8_minus") return Lattice(e8_minus_gram());
    if (name == "mukai") {
        Lattice l = Lattice(u_gram());
        for (int i = 0; i < 3; ++i) l = direct_sum(l, Lattice(u_gram()));
        l = direct_sum(l, Lattice(e8_minus_gram()));
        l = direct_sum(l, Lattice(e8_minus_gram()));
        return l;
    }
    throw input_error("unknown_lattice", "unknown standard lattice '" + name + "'");
}

} // namespace morikit
