#pragma once

// Dense exact linear algebra over Q or Q(i).

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace kalman {

template <ExactField F>
using Vector = std::vector<F>;

template <ExactField F>
bool is_zero_vector(const Vector<F>& v) {
    for (const auto& x : v)
        if (!is_zero(x))
            return false;
    return true;
}

template <ExactField F>
Vector<F> scale(const F& c, Vector<F> v) {
    for (auto& x : v)
        x = c * x;
    return v;
}

/// Row-major dense matrix.
template <ExactField F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, F(0)) {}
    Matrix(std::initializer_list<std::initializer_list<F>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw ParameterError("matrix: ragged rows");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = F(1);
        return m;
    }

    static Matrix from_rows(const std::vector<Vector<F>>& rows, std::size_t cols) {
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols)
                throw ParameterError("matrix: ragged rows");
            for (std::size_t j = 0; j < cols; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    static Matrix from_columns(const std::vector<Vector<F>>& cols, std::size_t rows) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows)
                throw ParameterError("matrix: column length mismatch");
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    F& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector<F> row(std::size_t i) const { return Vector<F>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
    Vector<F> column(std::size_t j) const {
        Vector<F> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, j);
        return c;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero_matrix() const { return is_zero_vector(data_); }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw ParameterError("matrix product: dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const F& aik = a(i, k);
                if (is_zero(aik))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) = c(i, j) + aik * b(k, j);
            }
        return c;
    }

    friend Vector<F> operator*(const Matrix& a, const Vector<F>& x) {
        if (a.cols_ != x.size())
            throw ParameterError("matrix-vector product: dimension mismatch");
        Vector<F> y(a.rows_, F(0));
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j)
                y[i] = y[i] + a(i, j) * x[j];
        return y;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<F> data_;
};

template <ExactField F>
struct RrefResult {
    Matrix<F> matrix;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Pivot: first nonzero entry at or below the current row,
/// scanning columns left to right.
template <ExactField F>
RrefResult<F> rref(Matrix<F> a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && is_zero(a(p, c)))
            ++p;
        if (p == a.rows())
            continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(p, j), a(r, j));
        const F inv = F(1) / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j)
            a(r, j) = a(r, j) * inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || is_zero(a(i, c)))
                continue;
            const F f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                a(i, j) = a(i, j) - f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(a), std::move(pivots)};
}

template <ExactField F>
std::size_t rank(const Matrix<F>& a) {
    return rref(a).pivots.size();
}

/// Basis of {w : A w = 0}, one vector per free column of the RREF.
template <ExactField F>
std::vector<Vector<F>> kernel_basis(const Matrix<F>& a) {
    const auto [r, pivots] = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<Vector<F>> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f])
            continue;
        Vector<F> w(a.cols(), F(0));
        w[f] = F(1);
        for (std::size_t row = 0; row < pivots.size(); ++row)
            w[pivots[row]] = -r(row, f);
        basis.push_back(std::move(w));
    }
    return basis;
}

template <ExactField F>
struct SpanDecision {
    bool member = false;
    Vector<F> coefficients; // v = sum_j coefficients[j] * basis[j], when member
};

/// Whether v lies in the span of basis; if so, one expressing coefficient vector
/// (free coefficients set to zero).
template <ExactField F>
SpanDecision<F> in_span(const Vector<F>& v, const std::vector<Vector<F>>& basis) {
    for (const auto& b : basis)
        if (b.size() != v.size())
            throw ParameterError("in_span: dimension mismatch");
    if (basis.empty())
        return {is_zero_vector(v), {}};
    Matrix<F> aug(v.size(), basis.size() + 1);
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j)
            aug(i, j) = basis[j][i];
        aug(i, basis.size()) = v[i];
    }
    const auto [r, pivots] = rref(std::move(aug));
    if (!pivots.empty() && pivots.back() == basis.size())
        return {false, {}};
    Vector<F> coeffs(basis.size(), F(0));
    for (std::size_t row = 0; row < pivots.size(); ++row)
        coeffs[pivots[row]] = r(row, basis.size());
    return {true, std::move(coeffs)};
}

/// If y = c * x for some scalar c (x nonzero), returns c.
template <ExactField F>
std::optional<F> proportionality_factor(const Vector<F>& y, const Vector<F>& x) {
    auto d = in_span(y, std::vector<Vector<F>>{x});
    if (!d.member)
        return std::nullopt;
    return d.coefficients.front();
}

} // namespace kalman
