#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace superlie {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline std::string to_string(const Rational& r) {
    if (denominator_of(r) == 1) return numerator_of(r).str();
    return numerator_of(r).str() + "/" + denominator_of(r).str();
}

/// Parses "[-]digits[/digits]".
inline Rational parse_rational(const std::string& text) {
    auto bad = [&] { return std::invalid_argument("bad rational '" + text + "'"); };
    std::size_t k = 0;
    bool negative = false;
    if (k < text.size() && (text[k] == '-' || text[k] == '+')) negative = text[k++] == '-';
    auto digits = [&](std::size_t from) {
        std::size_t to = from;
        while (to < text.size() && text[to] >= '0' && text[to] <= '9') ++to;
        return to;
    };
    std::size_t end_num = digits(k);
    if (end_num == k) throw bad();
    Integer num(text.substr(k, end_num - k));
    Integer den = 1;
    if (end_num < text.size()) {
        if (text[end_num] != '/') throw bad();
        std::size_t end_den = digits(end_num + 1);
        if (end_den == end_num + 1 || end_den != text.size()) throw bad();
        den = Integer(text.substr(end_num + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    }
    Rational r(num, den);
    return negative ? Rational(-r) : r;
}

using Vector = std::vector<Rational>;

/// Dense row-major matrix over the rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<std::vector<Rational>>& rows) {
        if (rows.empty()) return {};
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) throw std::invalid_argument("ragged matrix rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Vector operator*(const Vector& v) const {
        if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
        Vector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!data_[i * cols_ + j].is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product size mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    bool is_zero() const {
        for (const auto& x : data_)
            if (!x.is_zero()) return false;
        return true;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

namespace detail {

inline Integer lcm_of_denominators(const Matrix& m, std::size_t row) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const Integer d = denominator_of(m(row, j));
        if (d != 1) l = boost::multiprecision::lcm(l, d);
    }
    return l;
}

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(Matrix& a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c).is_zero()) ++p;
        if (p == a.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
        const Rational inv = Rational(1) / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c).is_zero()) continue;
            const Rational f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                if (!a(r, j).is_zero()) a(i, j) -= f * a(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace detail

/// Exact rank by fraction-free (Bareiss) elimination. Rows are first scaled to
/// integers; every division in the elimination is then exact.
inline std::size_t rank(const Matrix& mat) {
    const std::size_t rows = mat.rows(), cols = mat.cols();
    std::vector<std::vector<Integer>> a(rows, std::vector<Integer>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        const Integer l = detail::lcm_of_denominators(mat, i);
        for (std::size_t j = 0; j < cols; ++j) {
            const Rational& x = mat(i, j);
            if (!x.is_zero()) a[i][j] = numerator_of(x) * (l / denominator_of(x));
        }
    }
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        const Integer& piv = a[r][c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            const Integer f = a[i][c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                Integer v = a[i][j] * piv;
                if (f != 0 && a[r][j] != 0) v -= f * a[r][j];
                if (v != 0) v /= prev;  // exact
                a[i][j] = std::move(v);
            }
            a[i][c] = 0;
        }
        prev = piv;
        ++r;
    }
    return r;
}

/// Basis of the right null space, one vector per free column of the RREF.
inline std::vector<Vector> kernel_basis(const Matrix& mat) {
    Matrix a = mat;
    const auto pivots = detail::rref(a);
    std::vector<bool> is_pivot(mat.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < mat.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(mat.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One exact solution of mat * x = rhs, or nullopt if the system is inconsistent.
inline std::optional<Vector> solve(const Matrix& mat, const Vector& rhs) {
    if (rhs.size() != mat.rows()) throw std::invalid_argument("solve: rhs length != rows");
    Matrix aug(mat.rows(), mat.cols() + 1);
    for (std::size_t i = 0; i < mat.rows(); ++i) {
        for (std::size_t j = 0; j < mat.cols(); ++j) aug(i, j) = mat(i, j);
        aug(i, mat.cols()) = rhs[i];
    }
    const auto pivots = detail::rref(aug);
    if (!pivots.empty() && pivots.back() == mat.cols()) return std::nullopt;
    Vector x(mat.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(r, mat.cols());
    return x;
}

/// Inverse of a square matrix, or nullopt if singular.
inline std::optional<Matrix> inverse(const Matrix& mat) {
    if (mat.rows() != mat.cols()) throw std::invalid_argument("inverse: not square");
    const std::size_t n = mat.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = mat(i, j);
        aug(i, n + i) = 1;
    }
    const auto pivots = detail::rref(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
}

/// Row-reduced basis of the span of the given vectors (all of equal length).
inline std::vector<Vector> span_basis(const std::vector<Vector>& vectors, std::size_t length) {
    if (vectors.empty()) return {};
    Matrix a(vectors.size(), length);
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < length; ++j) a(i, j) = vectors[i][j];
    const auto pivots = detail::rref(a);
    std::vector<Vector> out;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        Vector v(length);
        for (std::size_t j = 0; j < length; ++j) v[j] = a(r, j);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace superlie
