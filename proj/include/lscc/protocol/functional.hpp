#pragma once

#include "lscc/numerics/complex_matrix.hpp"

namespace lscc {

/// Linear scalar map on k x k matrices, stored via its Riesz matrix:
/// F(A) = <riesz, A> (Frobenius inner product, conjugate-linear in riesz).
/// q* = ||riesz||_F is the extremal value of |F| on the unit sphere and
/// Q* = riesz/q* attains it with F(Q*) = q* real positive.
class Functional {
public:
    explicit Functional(ComplexMatrix riesz) : riesz_(std::move(riesz)) {
        if (!riesz_.square()) throw shape_error("Riesz matrix must be square");
        q_star_ = frobenius_norm(riesz_);
        if (q_star_ == 0.0) throw degenerate_functional_error("zero functional");
        q_star_matrix_ = riesz_ * (1.0 / q_star_);
    }

    static Functional trace_functional(int k) { return Functional(ComplexMatrix::identity(k)); }

    int k() const { return riesz_.rows(); }
    const ComplexMatrix& riesz() const { return riesz_; }
    double q_star() const { return q_star_; }
    const ComplexMatrix& Q_star() const { return q_star_matrix_; }

    cxd operator()(const ComplexMatrix& a) const {
        if (a.rows() != riesz_.rows() || a.cols() != riesz_.cols())
            throw shape_error("functional argument shape mismatch");
        cxd v = 0.0;
        for (size_t i = 0; i < a.entries().size(); ++i)
            v += std::conj(riesz_.entries()[i]) * a.entries()[i];
        return v;
    }

private:
    ComplexMatrix riesz_;
    double q_star_ = 0.0;
    ComplexMatrix q_star_matrix_;
};

} // namespace lscc
