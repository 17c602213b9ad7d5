#pragma once

#include <functional>
#include <memory>
#include <string>

#include "lscc/protocol/runner.hpp"

namespace lscc {

using TransformationSampler = std::function<Transformation(int round, Rng& rng)>;

/// Gaussian-random k x k matrix normalized to unit Frobenius norm.
inline ComplexMatrix random_unit_matrix(int k, Rng& rng) {
    ComplexMatrix a(k, k);
    for (auto& e : a.entries()) e = rng.next_complex_gaussian();
    return a * (1.0 / frobenius_norm(a));
}

inline TransformationSampler identity_sampler() {
    return [](int, Rng&) { return Transformation::scale(1.0); };
}

/// Global phase per round, uniform on the circle: E_W = q* regime.
inline TransformationSampler global_phase_sampler() {
    return [](int, Rng& rng) { return Transformation::scale(std::polar(1.0, rng.next_angle())); };
}

/// Deterministic shrinking scale, the band-of-mystery building block.
inline TransformationSampler scale_sampler(double factor) {
    if (factor < 0.0 || factor > 1.0) throw parameter_error("scale factor must be in [0,1]");
    return [factor](int, Rng&) { return Transformation::scale(cxd(factor)); };
}

namespace detail {

/// Orthonormal basis of vec-space with vec(Q*) as the first column.
inline ComplexMatrix q_star_basis(const Functional& f) {
    const int k = f.k();
    const int dim = k * k;
    ComplexMatrix basis(dim, dim);
    // column-major vectorization of Q*
    for (int c = 0; c < k; ++c)
        for (int r = 0; r < k; ++r) basis(c * k + r, 0) = f.Q_star()(r, c);

    int filled = 1;
    for (int cand = 0; cand < dim && filled < dim; ++cand) {
        std::vector<cxd> v(static_cast<size_t>(dim));
        v[static_cast<size_t>(cand)] = 1.0;
        for (int p = 0; p < filled; ++p) {
            cxd dot = 0.0;
            for (int i = 0; i < dim; ++i) dot += std::conj(basis(i, p)) * v[static_cast<size_t>(i)];
            for (int i = 0; i < dim; ++i) v[static_cast<size_t>(i)] -= dot * basis(i, p);
        }
        double nrm = 0.0;
        for (const auto& e : v) nrm += std::norm(e);
        nrm = std::sqrt(nrm);
        if (nrm < 1e-8) continue; // candidate was (nearly) dependent
        for (int i = 0; i < dim; ++i) basis(i, filled) = v[static_cast<size_t>(i)] / nrm;
        ++filled;
    }
    if (filled != dim) throw parameter_error("basis completion failed");
    return basis;
}

} // namespace detail

/// Stability-preserving block form: in the basis where vec(Q*) is the first
/// vector, the map is diag(e^{i theta}, R) with a random contraction R on the
/// orthogonal complement (||R||_op bounded via the Frobenius norm). The top
/// row apart from the corner is zero, so F(T(A)) = e^{i theta} F(A) for all A.
inline TransformationSampler block_phase_sampler(const Functional& f,
                                                 double complement_scale = 0.9) {
    auto basis = std::make_shared<ComplexMatrix>(detail::q_star_basis(f));
    const int dim = f.k() * f.k();
    return [basis, dim, k = f.k(), complement_scale](int, Rng& rng) {
        const cxd phase = std::polar(1.0, rng.next_angle());
        ComplexMatrix inner(dim, dim);
        inner(0, 0) = phase;
        ComplexMatrix r(dim - 1, dim - 1);
        for (auto& e : r.entries()) e = rng.next_complex_gaussian();
        const double s = complement_scale / frobenius_norm(r); // ||R||_op <= ||R||_F
        for (int i = 1; i < dim; ++i)
            for (int j = 1; j < dim; ++j) inner(i, j) = r(i - 1, j - 1) * s;
        return Transformation::dense(matmul(matmul(*basis, inner), dagger(*basis)), k);
    };
}

/// Synthetic spec over a fixed initial matrix: the honest chain is
/// M_i = T_i(M_{i-1}) and the verifier's final value folds the per-round
/// factors F(T_i(Q*))/q* into C(x). Valid for the distributions above, where
/// that factor applies to every matrix, not just Q*.
inline ProtocolSpec synthetic_spec(std::string id, Functional functional, ComplexMatrix m0,
                                   int rounds, double mu, double c_max,
                                   TransformationSampler sampler, int n = 0) {
    ProtocolSpec spec;
    spec.id = std::move(id);
    spec.k = functional.k();
    spec.n = n;
    spec.rounds = rounds;
    spec.c_max = c_max;
    spec.mu = mu;
    const cxd truth = functional(m0);
    spec.evaluate_truth = [truth] { return truth; };
    spec.sample_transformation = std::move(sampler);
    auto f = functional; // copy for the closures
    spec.final_value_fn = [f, truth](const std::vector<Transformation>& ts) {
        cxd acc = truth;
        for (const auto& t : ts) acc *= f(t.apply(f.Q_star())) / f.q_star();
        return acc;
    };
    spec.functional = std::move(functional);
    spec.synthetic_m0 = std::move(m0);
    return spec;
}

} // namespace lscc
