#include "morikit/linalg.hpp"

#include <algorithm>
#include <sstream>

#include <boost/integer/common_factor_rt.hpp>

namespace morikit {

// ---------------------------------------------------------------- numeric

Int floor_div(const Int& a, const Int& b) {
    Int q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

Int rat_floor(const Rat& r) { return floor_div(num(r), den(r)); }

Int rat_ceil(const Rat& r) { return -floor_div(-num(r), den(r)); }

Int rat_round(const Rat& r) { return rat_floor(r + Rat(1, 2)); }

Int isqrt_floor(const Int& n) {
    if (n < 0) throw input_error("negative_sqrt", "isqrt of negative value");
    return boost::multiprecision::sqrt(n);
}

Int isqrt_ceil(const Int& n) {
    Int s = isqrt_floor(n);
    if (s * s < n) ++s;
    return s;
}

bool is_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = isqrt_floor(n);
    return root * root == n;
}

bool is_square(const Int& n) {
    Int r;
    return is_square(n, r);
}

Rat sqrt_upper_bound(const Rat& r) {
    if (r < 0) throw input_error("negative_sqrt", "sqrt bound of negative value");
    // sqrt(p/q) = sqrt(p*q)/q <= ceil(sqrt(p*q))/q
    Int p = num(r), q = den(r);
    return Rat(isqrt_ceil(p * q), q);
}

Rat parse_rational(const std::string& text) {
    auto bad = [&] {
        return input_error("bad_rational", "cannot parse rational '" + text + "'");
    };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(text));
        Int p(text.substr(0, slash));
        Int q(text.substr(slash + 1));
        if (q == 0) throw bad();
        return Rat(p, q);
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

std::string format_rational(const Rat& r) {
    std::ostringstream os;
    os << num(r);
    if (den(r) != 1) os << "/" << den(r);
    return os.str();
}

// ---------------------------------------------------------------- vectors

MatR to_rational(const MatI& m) {
    MatR r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

VecR to_rational(const VecI& v) {
    VecR r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

std::pair<VecI, Int> clear_denominators(const VecR& x) {
    Int l = 1;
    for (const auto& c : x) l = boost::integer::lcm(l, den(c));
    VecI out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = num(x[i]) * (l / den(x[i]));
    return {out, l};
}

Int content(const VecI& x) {
    Int g = 0;
    for (const auto& c : x) g = boost::integer::gcd(g, c);
    return g;
}

VecI primitive_vector(const VecI& x) {
    Int g = content(x);
    if (g == 0) throw input_error("zero_vector", "primitive part of zero vector");
    VecI out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / g;
    return out;
}

VecI primitive_vector(const VecR& x) {
    return primitive_vector(clear_denominators(x).first);
}

bool is_zero(const VecI& x) {
    return std::all_of(x.begin(), x.end(), [](const Int& c) { return c == 0; });
}
bool is_zero(const VecR& x) {
    return std::all_of(x.begin(), x.end(), [](const Rat& c) { return c == 0; });
}

bool lex_less(const VecI& a, const VecI& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

VecI negate(const VecI& x) {
    VecI y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = -x[i];
    return y;
}

VecR rat_axpy(const VecR& x, const Rat& c, const VecR& y) {
    if (x.size() != y.size())
        throw input_error("dimension_mismatch", "axpy length mismatch");
    VecR z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + c * y[i];
    return z;
}

// ------------------------------------------------------ rational elimination

namespace {

// row echelon reduction in place; returns pivot columns
std::vector<std::size_t> echelonize(MatR& a) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t p = row;
        while (p < a.rows() && a(p, col) == 0) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(row, p);
        Rat inv = Rat(1) / a(row, col);
        a.scale_row(row, inv);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col) == 0) continue;
            a.add_row(i, row, -a(i, col));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t rank(const MatR& a) {
    MatR w = a;
    return echelonize(w).size();
}

std::vector<VecR> kernel_basis(const MatR& a) {
    MatR w = a;
    auto pivots = echelonize(w);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<VecR> basis;
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        VecR x(a.cols(), Rat(0));
        x[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            x[pivots[r]] = -w(r, free);
        basis.push_back(std::move(x));
    }
    return basis;
}

std::optional<VecR> solve(const MatR& a, const VecR& b) {
    if (a.rows() != b.size())
        throw input_error("dimension_mismatch", "solve shape mismatch");
    MatR w(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) w(i, j) = a(i, j);
        w(i, a.cols()) = b[i];
    }
    auto pivots = echelonize(w);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    VecR x(a.cols(), Rat(0));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = w(r, a.cols());
    return x;
}

std::optional<MatR> inverse(const MatR& a) {
    if (a.rows() != a.cols())
        throw input_error("dimension_mismatch", "inverse of non-square matrix");
    std::size_t n = a.rows();
    MatR w(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) w(i, j) = a(i, j);
        w(i, n + i) = 1;
    }
    auto pivots = echelonize(w);
    if (pivots.size() != n) return std::nullopt;
    MatR inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = w(i, n + j);
    return inv;
}

Int det_bareiss(const MatI& a) {
    if (a.rows() != a.cols())
        throw input_error("dimension_mismatch", "determinant of non-square matrix");
    std::size_t n = a.rows();
    if (n == 0) return 1;
    MatI w = a;
    Int prev = 1;
    int sgn = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && w(p, k) == 0) ++p;
            if (p == n) return 0;
            w.swap_rows(k, p);
            sgn = -sgn;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = w(i, j) * w(k, k) - w(i, k) * w(k, j);
                w(i, j) = t / prev; // exact division, Bareiss invariant
            }
        prev = w(k, k);
    }
    return sgn > 0 ? w(n - 1, n - 1) : -w(n - 1, n - 1);
}

// --------------------------------------------------------- integer lattices

MatI hermite_rows(const MatI& a) {
    std::size_t rows = a.rows(), cols = a.cols();
    MatI w = a;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        // gcd the column below r into a single nonzero entry at row r
        while (true) {
            std::size_t p = rows;
            for (std::size_t i = r; i < rows; ++i) {
                if (w(i, c) == 0) continue;
                if (p == rows ||
                    boost::multiprecision::abs(w(i, c)) <
                        boost::multiprecision::abs(w(p, c)))
                    p = i;
            }
            if (p == rows) break; // column is zero
            w.swap_rows(r, p);
            bool done = true;
            for (std::size_t i = r + 1; i < rows; ++i) {
                if (w(i, c) == 0) continue;
                Int q = floor_div(w(i, c), w(r, c));
                w.add_row(i, r, -q);
                if (w(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (w(r, c) == 0) continue;
        if (w(r, c) < 0) w.scale_row(r, Int(-1));
        for (std::size_t i = 0; i < r; ++i) {
            Int q = floor_div(w(i, c), w(r, c));
            if (q != 0) w.add_row(i, r, -q);
        }
        ++r;
    }
    MatI out(r, cols);
    for (std::size_t i = 0; i < r; ++i) out.set_row(i, w.row(i));
    return out;
}

SmithResult smith_normal_form(const MatI& a) {
    std::size_t rows = a.rows(), cols = a.cols();
    SmithResult res{a, MatI::identity(rows), MatI::identity(cols)};
    MatI& d = res.d;
    MatI& u = res.u;
    MatI& v = res.v;

    auto row_op = [&](std::size_t i, std::size_t j, const Int& c) {
        d.add_row(i, j, c);
        u.add_row(i, j, c);
    };
    auto col_op = [&](std::size_t i, std::size_t j, const Int& c) {
        d.add_col(i, j, c);
        v.add_col(i, j, c);
    };

    std::size_t t = 0;
    std::size_t steps = std::min(rows, cols);
    while (t < steps) {
        // pick the absolutely smallest nonzero entry of the trailing block
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                if (d(i, j) == 0) continue;
                if (pi == rows ||
                    boost::multiprecision::abs(d(i, j)) <
                        boost::multiprecision::abs(d(pi, pj))) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi == rows) break; // trailing block is zero
        if (pi != t) { d.swap_rows(t, pi); u.swap_rows(t, pi); }
        if (pj != t) { d.swap_cols(t, pj); v.swap_cols(t, pj); }

        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
            if (d(i, t) == 0) continue;
            Int q = floor_div(d(i, t), d(t, t));
            row_op(i, t, -q);
            if (d(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            if (d(t, j) == 0) continue;
            Int q = floor_div(d(t, j), d(t, t));
            col_op(j, t, -q);
            if (d(t, j) != 0) clean = false;
        }
        if (!clean) continue; // remainders became the new smallest entries

        // divisibility: d(t,t) must divide the rest of the block
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i)
            for (std::size_t j = t + 1; j < cols && divides; ++j)
                if (d(i, j) % d(t, t) != 0) {
                    row_op(t, i, Int(1)); // pulls row i in; next pass fixes it
                    divides = false;
                }
        if (!divides) continue;

        if (d(t, t) < 0) { d.scale_row(t, Int(-1)); u.scale_row(t, Int(-1)); }
        ++t;
    }
    return res;
}

std::vector<VecI> integer_kernel_saturated(const MatI& a) {
    SmithResult s = smith_normal_form(a);
    std::size_t n = a.cols();
    std::size_t r = 0;
    for (std::size_t i = 0; i < std::min(s.d.rows(), s.d.cols()); ++i)
        if (s.d(i, i) != 0) ++r;
    MatI basis(n - r, n);
    for (std::size_t k = r; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) basis(k - r, i) = s.v(i, k);
    MatI h = hermite_rows(basis);
    std::vector<VecI> out;
    for (std::size_t i = 0; i < h.rows(); ++i) out.push_back(h.row(i));
    return out;
}

// ----------------------------------------------------------- quadratic forms

std::pair<int, int> signature_of(const MatR& gram) {
    if (!gram.is_symmetric())
        throw input_error("gram_not_symmetric", "signature of non-symmetric matrix");
    std::size_t n = gram.rows();
    MatR g = gram;
    int plus = 0, minus = 0;
    std::size_t t = 0;
    while (t < n) {
        if (g(t, t) == 0) {
            std::size_t p = t;
            while (p < n && g(p, p) == 0) ++p;
            if (p < n) {
                g.swap_rows(t, p);
                g.swap_cols(t, p);
            } else {
                // all-zero diagonal: pull in an off-diagonal entry if any
                std::size_t oi = n, oj = n;
                for (std::size_t i = t; i < n && oi == n; ++i)
                    for (std::size_t j = i + 1; j < n; ++j)
                        if (g(i, j) != 0) { oi = i; oj = j; break; }
                if (oi == n) break; // trailing block zero: degenerate
                // (e_i + e_j) has square 2*g(i,j) != 0
                g.add_row(oi, oj, Rat(1));
                g.add_col(oi, oj, Rat(1));
                if (oi != t) { g.swap_rows(t, oi); g.swap_cols(t, oi); }
                continue;
            }
        }
        Rat pivot = g(t, t);
        for (std::size_t i = t + 1; i < n; ++i) {
            if (g(i, t) == 0) continue;
            Rat c = -g(i, t) / pivot;
            g.add_row(i, t, c);
            g.add_col(i, t, c);
        }
        (pivot > 0 ? plus : minus) += 1;
        ++t;
    }
    if (plus + minus < static_cast<int>(n)) {
        // degenerate: report the radical so callers can see what collapsed
        auto rad = kernel_basis(gram);
        std::ostringstream os;
        os << "degenerate gram matrix; radical basis:";
        for (const auto& x : rad) {
            os << " (";
            for (std::size_t i = 0; i < x.size(); ++i)
                os << (i ? "," : "") << format_rational(x[i]);
            os << ")";
        }
        throw validation_error("gram_degenerate", os.str());
    }
    return {plus, minus};
}

bool is_positive_definite(const MatR& gram) {
    if (!gram.is_symmetric()) return false;
    std::size_t n = gram.rows();
    // Sylvester: all leading principal minors positive
    for (std::size_t k = 1; k <= n; ++k) {
        MatR sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub(i, j) = gram(i, j);
        // rational determinant by elimination with sign tracking
        MatR w = sub;
        Rat detv(1);
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t p = c;
            while (p < k && w(p, c) == 0) ++p;
            if (p == k) { detv = 0; break; }
            if (p != c) { w.swap_rows(c, p); detv = -detv; }
            detv *= w(c, c);
            for (std::size_t i = c + 1; i < k; ++i) {
                if (w(i, c) == 0) continue;
                w.add_row(i, c, -w(i, c) / w(c, c));
            }
        }
        if (detv <= 0) return false;
    }
    return true;
}

Ldlt ldlt(const MatR& gram) {
    if (!is_positive_definite(gram))
        throw validation_error("not_positive_definite",
                               "LDL^T requires a positive definite form");
    std::size_t n = gram.rows();
    Ldlt out{VecR(n, Rat(0)), MatR(n, n)};
    // q(y) = sum_i d_i (y_i + sum_{j>i} m(i,j) y_j)^2, computed row by row
    MatR c(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Rat s = gram(i, j);
            for (std::size_t k = 0; k < i; ++k)
                s -= out.d[k] * out.m(k, i) * out.m(k, j);
            c(i, j) = s;
        }
        out.d[i] = c(i, i);
        out.m(i, i) = 1;
        for (std::size_t j = i + 1; j < n; ++j) out.m(i, j) = c(i, j) / out.d[i];
    }
    return out;
}

MatI lll_reduce_gram(const MatR& gram) {
    std::size_t n = gram.rows();
    MatI u = MatI::identity(n);
    if (n <= 1) return u;
    MatR g = gram;

    auto apply_row_op = [&](std::size_t i, std::size_t j, const Int& c) {
        // basis_i += c * basis_j ; congruent update of the Gram matrix
        u.add_row(i, j, c);
        Rat rc(c);
        for (std::size_t k = 0; k < n; ++k) g(i, k) += rc * g(j, k);
        for (std::size_t k = 0; k < n; ++k) g(k, i) += rc * g(k, j);
    };
    auto apply_swap = [&](std::size_t i, std::size_t j) {
        u.swap_rows(i, j);
        g.swap_rows(i, j);
        g.swap_cols(i, j);
    };

    // Gram-Schmidt data recomputed from g on demand; ranks are tiny.
    VecR b(n);
    MatR mu(n, n);
    auto recompute_gs = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                Rat s = g(i, j);
                for (std::size_t k = 0; k < j; ++k) s -= mu(i, k) * mu(j, k) * b[k];
                mu(i, j) = s / b[j];
            }
            Rat s = g(i, i);
            for (std::size_t k = 0; k < i; ++k) s -= mu(i, k) * mu(i, k) * b[k];
            b[i] = s;
        }
    };

    recompute_gs();
    const Rat delta(3, 4);
    std::size_t k = 1;
    while (k < n) {
        for (std::size_t j = k; j-- > 0;) {
            if (mu(k, j) * 2 > 1 || mu(k, j) * 2 < -1) {
                Int q = rat_round(mu(k, j));
                apply_row_op(k, j, -q);
                recompute_gs();
            }
        }
        if (b[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * b[k - 1]) {
            ++k;
        } else {
            apply_swap(k, k - 1);
            recompute_gs();
            k = k > 1 ? k - 1 : 1;
        }
    }
    return u;
}

} // namespace morikit
