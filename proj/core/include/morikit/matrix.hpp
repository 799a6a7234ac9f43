#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "morikit/errors.hpp"
#include "morikit/numeric.hpp"

namespace morikit {

using VecI = std::vector<Int>;
using VecR = std::vector<Rat>;

// Dense row-major matrix over an exact scalar. Ranks in this project stay
// single-digit (the Mukai lattice, rank 24, is the one big fixture), so the
// representation favours clarity over blocking tricks.
template <class T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw input_error("dimension_mismatch", "ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_,
                              data_.begin() + (i + 1) * cols_);
    }

    void set_row(std::size_t i, const std::vector<T>& v) {
        if (v.size() != cols_)
            throw input_error("dimension_mismatch", "row length mismatch");
        std::copy(v.begin(), v.end(), data_.begin() + i * cols_);
    }

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }

    // row(i) += c * row(j)
    void add_row(std::size_t i, std::size_t j, const T& c) {
        for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
    }
    // col(i) += c * col(j)
    void add_col(std::size_t i, std::size_t j, const T& c) {
        for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += c * (*this)(k, j);
    }
    void scale_row(std::size_t i, const T& c) {
        for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) *= c;
    }

    Matrix transposed() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using MatI = Matrix<Int>;
using MatR = Matrix<Rat>;

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows())
        throw input_error("dimension_mismatch", "matrix product shape mismatch");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (aik == T(0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

template <class T>
std::vector<T> mat_vec(const Matrix<T>& a, const std::vector<T>& x) {
    if (a.cols() != x.size())
        throw input_error("dimension_mismatch", "matrix-vector shape mismatch");
    std::vector<T> y(a.rows(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

template <class T>
T dot(const std::vector<T>& x, const std::vector<T>& y) {
    if (x.size() != y.size())
        throw input_error("dimension_mismatch", "dot product length mismatch");
    T s(0);
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

// ---- conversions ----

MatR to_rational(const MatI& m);
VecR to_rational(const VecI& v);

// x -> (integer vector, common denominator): x = ints / denom, denom > 0.
std::pair<VecI, Int> clear_denominators(const VecR& x);

// multiplies out denominators and divides by the content; zero vector is an
// input error. The direction (positive multiple) is preserved.
VecI primitive_vector(const VecR& x);
VecI primitive_vector(const VecI& x);

Int content(const VecI& x); // gcd of entries, >= 0

bool is_zero(const VecI& x);
bool is_zero(const VecR& x);

// total order used for canonical sorting of ray lists
bool lex_less(const VecI& a, const VecI& b);

VecI negate(const VecI& x);
VecR rat_axpy(const VecR& x, const Rat& c, const VecR& y); // x + c*y

} // namespace morikit
