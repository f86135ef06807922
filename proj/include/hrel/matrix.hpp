#pragma once

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

#include "hrel/dual.hpp"
#include "hrel/errors.hpp"

namespace hrel {

/// Dense row-major matrix over a scalar kind (Complex or DualComplex).
/// Sizes here are tiny (4x4 group matrices up to a few hundred for the
/// polynomial realizations), so everything is plain O(n^3) arithmetic.
template <typename S>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(size_t(rows) * cols) {}

    Matrix(std::initializer_list<std::initializer_list<double>> rows) {
        rows_ = int(rows.size());
        cols_ = rows_ ? int(rows.begin()->size()) : 0;
        data_.reserve(size_t(rows_) * cols_);
        for (const auto& r : rows)
            for (double v : r) data_.push_back(scalar_traits<S>::make(v));
    }

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = scalar_traits<S>::make(1.0);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    S& operator()(int i, int j) { return data_[size_t(i) * cols_ + j]; }
    const S& operator()(int i, int j) const { return data_[size_t(i) * cols_ + j]; }

    Matrix& operator+=(const Matrix& o) {
        check_same_shape(o);
        for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same_shape(o);
        for (size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    Matrix& operator*=(const S& s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(const S& s, Matrix m) { return m *= s; }
    friend Matrix operator*(Matrix m, const S& s) { return m *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw eval_error("matrix product dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const S& aik = a(i, k);
                for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
            }
        return c;
    }

    Matrix operator-() const {
        Matrix m(rows_, cols_);
        for (size_t k = 0; k < data_.size(); ++k) m.data_[k] = -data_[k];
        return m;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    S trace() const {
        S t{};
        for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    /// Maximum column sum of |value part|.
    double one_norm() const {
        double best = 0.0;
        for (int j = 0; j < cols_; ++j) {
            double s = 0.0;
            for (int i = 0; i < rows_; ++i) s += scalar_traits<S>::abs_value((*this)(i, j));
            if (s > best) best = s;
        }
        return best;
    }

    /// Largest |value part| over all entries.
    double max_abs() const {
        double best = 0.0;
        for (const auto& v : data_) {
            double a = scalar_traits<S>::abs_value(v);
            if (a > best) best = a;
        }
        return best;
    }

    bool all_finite() const {
        for (const auto& v : data_)
            if (!scalar_traits<S>::finite(v)) return false;
        return true;
    }

    /// Determinant by LU with partial pivoting (pivot chosen on |value part|).
    S det() const {
        if (!square()) throw eval_error("det of non-square matrix");
        Matrix lu = *this;
        const int n = rows_;
        S result = scalar_traits<S>::make(1.0);
        for (int k = 0; k < n; ++k) {
            int piv = k;
            double best = scalar_traits<S>::abs_value(lu(k, k));
            for (int i = k + 1; i < n; ++i) {
                double a = scalar_traits<S>::abs_value(lu(i, k));
                if (a > best) { best = a; piv = i; }
            }
            if (best == 0.0) return S{};
            if (piv != k) {
                for (int j = 0; j < n; ++j) std::swap(lu(k, j), lu(piv, j));
                result = -result;
            }
            result *= lu(k, k);
            for (int i = k + 1; i < n; ++i) {
                S f = lu(i, k) / lu(k, k);
                for (int j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
            }
        }
        return result;
    }

    /// Gauss-Jordan inverse with partial pivoting. Throws eval_error for a
    /// singular input, reporting a crude condition estimate (pivot ratio).
    Matrix inverse() const {
        if (!square()) throw eval_error("inverse of non-square matrix");
        const int n = rows_;
        Matrix a = *this;
        Matrix inv = identity(n);
        double max_piv = 0.0, min_piv = 0.0;
        for (int k = 0; k < n; ++k) {
            int piv = k;
            double best = scalar_traits<S>::abs_value(a(k, k));
            for (int i = k + 1; i < n; ++i) {
                double m = scalar_traits<S>::abs_value(a(i, k));
                if (m > best) { best = m; piv = i; }
            }
            if (best < 1e-300) {
                double cond = (min_piv > 0.0) ? max_piv / min_piv : 0.0;
                throw eval_error("singular matrix passed to inv (condition estimate " +
                                 std::to_string(cond > 0 ? cond : 1e300) + ")");
            }
            if (k == 0) { max_piv = min_piv = best; }
            else {
                if (best > max_piv) max_piv = best;
                if (best < min_piv) min_piv = best;
            }
            if (piv != k) {
                for (int j = 0; j < n; ++j) {
                    std::swap(a(k, j), a(piv, j));
                    std::swap(inv(k, j), inv(piv, j));
                }
            }
            S d = a(k, k);
            for (int j = 0; j < n; ++j) { a(k, j) /= d; inv(k, j) /= d; }
            for (int i = 0; i < n; ++i) {
                if (i == k) continue;
                S f = a(i, k);
                for (int j = 0; j < n; ++j) {
                    a(i, j) -= f * a(k, j);
                    inv(i, j) -= f * inv(k, j);
                }
            }
        }
        return inv;
    }

    /// Value part as a plain complex matrix.
    Matrix<Complex> value_part() const {
        Matrix<Complex> m(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) m(i, j) = scalar_traits<S>::value((*this)(i, j));
        return m;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw eval_error("matrix shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<S> data_;
};

using CMatrix = Matrix<Complex>;
using DMatrix = Matrix<DualComplex>;

/// Derivative part of a dual matrix.
inline CMatrix dot_part(const DMatrix& m) {
    CMatrix d(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).dot;
    return d;
}

/// Lift a complex matrix into dual scalars with zero derivative part.
inline DMatrix lift(const CMatrix& m) {
    DMatrix d(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) d(i, j) = DualComplex(m(i, j));
    return d;
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    CMatrix d = a;
    d -= b;
    return d.max_abs();
}

inline CMatrix commutator(const CMatrix& a, const CMatrix& b) {
    if (!a.square() || !b.square() || a.rows() != b.rows())
        throw eval_error("commutator needs square matrices of equal dimension");
    return a * b - b * a;
}

}  // namespace hrel
