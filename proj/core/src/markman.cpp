#include "morikit/markman.hpp"

#include <boost/integer/common_factor_rt.hpp>

namespace morikit {

ExtendedAlgebraicLattice::ExtendedAlgebraicLattice(Lattice lattice, VecI v, VecI h)
    : lattice_(std::move(lattice)), v_(std::move(v)), h_(std::move(h)) {
    std::size_t r = lattice_.rank();
    if (v_.size() != r || h_.size() != r)
        throw input_error("dimension_mismatch",
                          "v and h must match the lattice rank",
                          {"model.raw.v", "model.raw.ample"});
    if (!lattice_.is_even())
        throw validation_error("gram_not_even",
                               "the algebraic lattice must be even",
                               {"model.raw.gram"});

    auto sig = lattice_.signature(); // rejects degenerate forms
    if (sig.first != 2 || sig.second != static_cast<int>(r) - 2)
        throw validation_error(
            "wrong_signature",
            "algebraic lattice must have signature (2, rank-2), got (" +
                std::to_string(sig.first) + "," + std::to_string(sig.second) + ")",
            {"model.raw.gram"});

    if (is_zero(v_) || !is_primitive(v_))
        throw validation_error("v_not_primitive", "v must be primitive",
                               {"model.raw.v"});

    v_sq_ = lattice_.pair(v_, v_);
    if (v_sq_ % 2 != 0 || v_sq_ < 2)
        throw validation_error("n_not_integral",
                               "pair(v,v) must be a positive even number",
                               {"model.raw.v"});
    n_ = (v_sq_ + 2) / 2;
    if (n_ < 2)
        throw validation_error("n_not_integral", "derived n must be at least 2",
                               {"model.raw.v"});

    if (lattice_.pair(h_, v_) != 0)
        throw validation_error("h_not_orthogonal", "pair(h, v) must vanish",
                               {"model.raw.ample"});
    if (lattice_.pair(h_, h_) <= 0)
        throw validation_error("h_not_positive", "pair(h, h) must be positive",
                               {"model.raw.ample"});
}

const std::vector<VecI>& ExtendedAlgebraicLattice::h2_alg_basis() const {
    if (!h2_basis_) h2_basis_ = lattice_.orthogonal_complement({v_});
    return *h2_basis_;
}

const MatI& ExtendedAlgebraicLattice::h2_alg_gram() const {
    if (!h2_gram_) {
        const auto& basis = h2_alg_basis();
        MatI g(basis.size(), basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t j = 0; j < basis.size(); ++j)
                g(i, j) = lattice_.pair(basis[i], basis[j]);
        h2_gram_ = std::move(g);
    }
    return *h2_gram_;
}

CurveClass ExtendedAlgebraicLattice::theta_dual(const VecI& a) const {
    Int av = lattice_.pair(a, v_);
    Rat t(av, v_sq_);
    VecR coords(rank());
    for (std::size_t i = 0; i < rank(); ++i) coords[i] = Rat(a[i]) - t * Rat(v_[i]);
    Rat q = Rat(lattice_.pair(a, a)) - Rat(av * av, v_sq_);

    Int denom = 1;
    for (const auto& c : coords) denom = boost::integer::lcm(denom, den(c));
    if (v_sq_ % denom != 0)
        throw mk_error("internal_invariant",
                       "curve class denominator must divide 2n-2");
    return CurveClass{std::move(coords), std::move(q), std::move(denom)};
}

ExtendedAlgebraicLattice
ExtendedAlgebraicLattice::with_polarization(const VecI& h) const {
    return ExtendedAlgebraicLattice(lattice_, v_, h);
}

HilbertModel from_k3_hilbert(const MatI& pic_gram, const Int& n, const VecI& h_k3) {
    if (n < 2)
        throw validation_error("n_not_integral", "n must be at least 2",
                               {"model.k3.n"});
    if (pic_gram.rows() != pic_gram.cols() || !pic_gram.is_symmetric())
        throw input_error("gram_not_symmetric",
                          "Picard Gram matrix must be square and symmetric",
                          {"model.k3.gram"});
    std::size_t rho = pic_gram.rows();
    if (h_k3.size() != rho)
        throw input_error("dimension_mismatch",
                          "polarization length does not match the Picard rank",
                          {"model.k3.polarization"});
    Lattice pic{pic_gram};
    if (!pic.is_even())
        throw validation_error("gram_not_even", "K3 Picard lattice must be even",
                               {"model.k3.gram"});
    auto sig = pic.signature();
    if (sig.first != 1 || sig.second != static_cast<int>(rho) - 1)
        throw validation_error("wrong_signature",
                               "K3 Picard lattice must have signature (1, rho-1)",
                               {"model.k3.gram"});

    // basis (r, pic..., s) with r, s isotropic, pair(r, s) = -1
    std::size_t rk = rho + 2;
    MatI g(rk, rk);
    for (std::size_t i = 0; i < rho; ++i)
        for (std::size_t j = 0; j < rho; ++j) g(1 + i, 1 + j) = pic_gram(i, j);
    g(0, rk - 1) = -1;
    g(rk - 1, 0) = -1;

    VecI v(rk, Int(0)), h(rk, Int(0)), delta(rk, Int(0));
    v[0] = 1;
    v[rk - 1] = 1 - n;
    delta[0] = 1;
    delta[rk - 1] = n - 1;
    for (std::size_t i = 0; i < rho; ++i) h[1 + i] = h_k3[i];

    ExtendedAlgebraicLattice model(Lattice(std::move(g)), std::move(v), std::move(h));
    return HilbertModel{std::move(model), std::move(delta)};
}

ExtendedAlgebraicLattice from_raw(const MatI& gram, const VecI& v, const VecI& h) {
    if (gram.rows() != gram.cols() || !gram.is_symmetric())
        throw input_error("gram_not_symmetric",
                          "Gram matrix must be square and symmetric",
                          {"model.raw.gram"});
    return ExtendedAlgebraicLattice(Lattice(gram), v, h);
}

std::optional<VecR> h2_coordinates(const ExtendedAlgebraicLattice& e, const VecR& x) {
    const auto& basis = e.h2_alg_basis();
    MatR bt(e.rank(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < e.rank(); ++i) bt(i, j) = Rat(basis[j][i]);
    auto c = solve(bt, x);
    if (!c) return std::nullopt;
    // solve() ignores surplus equations only when consistent; verify exactly
    VecR back = from_h2_coordinates(e, *c);
    if (back != x) return std::nullopt;
    return c;
}

VecR from_h2_coordinates(const ExtendedAlgebraicLattice& e, const VecR& c) {
    const auto& basis = e.h2_alg_basis();
    if (c.size() != basis.size())
        throw input_error("dimension_mismatch", "h2 coordinate length mismatch");
    VecR x(e.rank(), Rat(0));
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < e.rank(); ++i) x[i] += c[j] * Rat(basis[j][i]);
    return x;
}

} // namespace morikit
