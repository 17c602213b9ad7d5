#pragma once

#include <optional>
#include <variant>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "lscc/circuit/simulation.hpp"
#include "lscc/numerics/complex_matrix.hpp"

namespace lscc {

/// Linear map on k x k matrices with operator norm <= 1 (in Frobenius norm).
/// Structured forms cover the protocol instances used here; Dense stores the
/// full k^2 x k^2 matrix acting on vec(A) in column-major convention,
/// vec(A)[c*k + r] = A(r, c).
class Transformation {
public:
    struct RightMultiply {
        ComplexMatrix u; // k x k unitary, A -> A*u
    };
    struct Scale {
        cxd c; // |c| <= 1, A -> c*A
    };
    struct Conjugate {
        ComplexMatrix v; // k x k unitary, A -> v*A*v^dag
    };
    struct Dense {
        ComplexMatrix map; // k^2 x k^2
        int k;
    };

    using Form = std::variant<RightMultiply, Scale, Conjugate, Dense>;

    explicit Transformation(Form form) : form_(std::move(form)) {
        if (const auto* s = std::get_if<Scale>(&form_)) {
            if (std::abs(s->c) > 1.0 + 1e-9) throw parameter_error("Scale factor exceeds 1");
        } else if (const auto* d = std::get_if<Dense>(&form_)) {
            if (d->map.rows() != d->k * d->k || d->map.cols() != d->k * d->k)
                throw shape_error("Dense map must be k^2 x k^2");
        }
    }

    static Transformation right_multiply(ComplexMatrix u) {
        return Transformation(RightMultiply{std::move(u)});
    }
    static Transformation scale(cxd c) { return Transformation(Scale{c}); }
    static Transformation conjugate(ComplexMatrix v) {
        return Transformation(Conjugate{std::move(v)});
    }
    static Transformation dense(ComplexMatrix map, int k) {
        return Transformation(Dense{std::move(map), k});
    }

    const Form& form() const { return form_; }

    ComplexMatrix apply(const ComplexMatrix& a) const {
        if (const auto* rm = std::get_if<RightMultiply>(&form_)) return matmul(a, rm->u);
        if (const auto* sc = std::get_if<Scale>(&form_)) return a * sc->c;
        if (const auto* cj = std::get_if<Conjugate>(&form_))
            return matmul(matmul(cj->v, a), dagger(cj->v));
        const auto& d = std::get<Dense>(form_);
        if (a.rows() != d.k || a.cols() != d.k) throw shape_error("argument is not k x k");
        ComplexMatrix out(d.k, d.k);
        for (int oc = 0; oc < d.k; ++oc)
            for (int orow = 0; orow < d.k; ++orow) {
                cxd acc = 0.0;
                const int oidx = oc * d.k + orow;
                for (int ic = 0; ic < d.k; ++ic)
                    for (int irow = 0; irow < d.k; ++irow)
                        acc += d.map(oidx, ic * d.k + irow) * a(irow, ic);
                out(orow, oc) = acc;
            }
        return out;
    }

    ComplexMatrix operator()(const ComplexMatrix& a) const { return apply(a); }

    /// Largest singular value of the k^2 x k^2 representation. Exactly 1 for
    /// the unitary forms, |c| for Scale; computed by SVD for Dense.
    double operator_norm() const {
        if (std::holds_alternative<RightMultiply>(form_) ||
            std::holds_alternative<Conjugate>(form_))
            return 1.0;
        if (const auto* sc = std::get_if<Scale>(&form_)) return std::abs(sc->c);
        const auto& d = std::get<Dense>(form_);
        const int dim = d.k * d.k;
        Eigen::MatrixXcd m(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) m(i, j) = d.map(i, j);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
        return svd.singularValues()(0);
    }

    /// The AG instance attaches the verifier's sampled round unitary so the
    /// honest prover can advance its rank-one state.
    std::optional<RoundUnitary> round_detail;

private:
    Form form_;
};

} // namespace lscc
