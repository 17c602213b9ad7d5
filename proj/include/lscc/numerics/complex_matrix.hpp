#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "lscc/numerics/errors.hpp"

namespace lscc {

using cxd = std::complex<double>;

/// Dense row-major complex matrix. Immutable-by-convention value type: all
/// arithmetic returns fresh matrices.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), entries_(static_cast<size_t>(rows) * cols) {
        if (rows <= 0 || cols <= 0) throw shape_error("matrix dimensions must be positive");
    }

    ComplexMatrix(int rows, int cols, std::vector<cxd> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows <= 0 || cols <= 0) throw shape_error("matrix dimensions must be positive");
        if (entries_.size() != static_cast<size_t>(rows) * cols)
            throw shape_error("entry count does not match dimensions");
    }

    static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

    static ComplexMatrix identity(int k) {
        ComplexMatrix m(k, k);
        for (int i = 0; i < k; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cxd& operator()(int r, int c) { return entries_[static_cast<size_t>(r) * cols_ + c]; }
    const cxd& operator()(int r, int c) const {
        return entries_[static_cast<size_t>(r) * cols_ + c];
    }

    const std::vector<cxd>& entries() const { return entries_; }
    std::vector<cxd>& entries() { return entries_; }

    ComplexMatrix operator+(const ComplexMatrix& o) const {
        require_same_shape(o);
        ComplexMatrix r = *this;
        for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] += o.entries_[i];
        return r;
    }

    ComplexMatrix operator-(const ComplexMatrix& o) const {
        require_same_shape(o);
        ComplexMatrix r = *this;
        for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] -= o.entries_[i];
        return r;
    }

    ComplexMatrix operator*(cxd s) const {
        ComplexMatrix r = *this;
        for (auto& e : r.entries_) e *= s;
        return r;
    }

    friend ComplexMatrix operator*(cxd s, const ComplexMatrix& m) { return m * s; }

    bool operator==(const ComplexMatrix& o) const = default;

private:
    void require_same_shape(const ComplexMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw shape_error("shape mismatch");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<cxd> entries_;
};

inline ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw shape_error("matmul: inner dimensions differ");
    ComplexMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const cxd aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

inline ComplexMatrix dagger(const ComplexMatrix& m) {
    ComplexMatrix r(m.cols(), m.rows());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(j, i) = std::conj(m(i, j));
    return r;
}

inline cxd trace(const ComplexMatrix& m) {
    if (!m.square()) throw shape_error("trace: matrix not square");
    cxd t = 0.0;
    for (int i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

inline double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& e : m.entries()) s += std::norm(e);
    return std::sqrt(s);
}

/// Kronecker product, a on the high-order index bits.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cxd aij = a(i, j);
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

/// |a - b| <= mu in complex modulus.
inline bool approx_eq(cxd a, cxd b, double mu) {
    if (mu < 0.0) throw parameter_error("approx_eq: negative tolerance");
    return std::abs(a - b) <= mu;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw shape_error("shape mismatch");
    double m = 0.0;
    for (size_t i = 0; i < a.entries().size(); ++i)
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    return m;
}

inline bool is_unitary(const ComplexMatrix& u, double tol = 1e-10) {
    if (!u.square()) return false;
    return max_abs_diff(matmul(u, dagger(u)), ComplexMatrix::identity(u.rows())) <= tol;
}

} // namespace lscc
