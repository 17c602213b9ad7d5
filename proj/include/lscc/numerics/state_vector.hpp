#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "lscc/numerics/complex_matrix.hpp"
#include "lscc/numerics/errors.hpp"

namespace lscc {

/// Ordered list of distinct qubit positions. Index 0 of the list is the most
/// significant bit of the reduced-space basis index. Qubit 0 of the register
/// is the most significant bit of the full basis index.
struct QubitSupport {
    std::vector<int> indices;

    QubitSupport() = default;
    QubitSupport(std::initializer_list<int> l) : indices(l) { validate_basic(); }
    explicit QubitSupport(std::vector<int> v) : indices(std::move(v)) { validate_basic(); }

    int size() const { return static_cast<int>(indices.size()); }
    int operator[](int i) const { return indices[static_cast<size_t>(i)]; }

    void validate(int n) const {
        validate_basic();
        for (int q : indices)
            if (q < 0 || q >= n) throw invalid_support_error("support index out of range");
    }

    bool operator==(const QubitSupport&) const = default;

private:
    void validate_basic() const {
        for (size_t i = 0; i < indices.size(); ++i)
            for (size_t j = i + 1; j < indices.size(); ++j)
                if (indices[i] == indices[j])
                    throw invalid_support_error("duplicate support index");
    }
};

class StateVector {
public:
    explicit StateVector(int n_qubits)
        : n_(n_qubits), amps_(static_cast<size_t>(1) << n_qubits) {
        if (n_qubits < 1 || n_qubits > 30) throw parameter_error("qubit count out of range");
    }

    static StateVector basis(int n_qubits, uint64_t index = 0) {
        StateVector s(n_qubits);
        s.amps_[index] = 1.0;
        return s;
    }

    int n_qubits() const { return n_; }
    uint64_t dim() const { return amps_.size(); }
    cxd& operator[](uint64_t i) { return amps_[i]; }
    const cxd& operator[](uint64_t i) const { return amps_[i]; }
    const std::vector<cxd>& amplitudes() const { return amps_; }

    double norm() const {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

    /// In-place application of a 2^s x 2^s gate on `support` (s qubits).
    /// Touches only amplitudes differing on the support bits; never builds
    /// the full 2^n x 2^n operator.
    void apply_local(const ComplexMatrix& gate, const QubitSupport& support) {
        support.validate(n_);
        const int s = support.size();
        const int d = 1 << s;
        if (gate.rows() != d || gate.cols() != d)
            throw shape_error("gate dimension does not match support size");

        std::vector<uint64_t> masks(static_cast<size_t>(s));
        uint64_t smask = 0;
        for (int j = 0; j < s; ++j) {
            masks[static_cast<size_t>(j)] = uint64_t{1} << (n_ - 1 - support[j]);
            smask |= masks[static_cast<size_t>(j)];
        }

        std::vector<cxd> in(static_cast<size_t>(d)), out(static_cast<size_t>(d));
        for (uint64_t base = 0; base < dim(); ++base) {
            if (base & smask) continue;
            for (int l = 0; l < d; ++l) in[static_cast<size_t>(l)] = amps_[base | expand(l, masks)];
            for (int r = 0; r < d; ++r) {
                cxd acc = 0.0;
                for (int c = 0; c < d; ++c) acc += gate(r, c) * in[static_cast<size_t>(c)];
                out[static_cast<size_t>(r)] = acc;
            }
            for (int l = 0; l < d; ++l) amps_[base | expand(l, masks)] = out[static_cast<size_t>(l)];
        }
    }

    /// Single-qubit gate, the 3-qubit path above specialised for speed.
    void apply_single(const ComplexMatrix& u, int qubit) {
        if (u.rows() != 2 || u.cols() != 2) throw shape_error("expected 2x2 gate");
        if (qubit < 0 || qubit >= n_) throw invalid_support_error("qubit index out of range");
        const uint64_t m = uint64_t{1} << (n_ - 1 - qubit);
        for (uint64_t base = 0; base < dim(); ++base) {
            if (base & m) continue;
            const cxd a0 = amps_[base], a1 = amps_[base | m];
            amps_[base] = u(0, 0) * a0 + u(0, 1) * a1;
            amps_[base | m] = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }

    static uint64_t expand(int local, const std::vector<uint64_t>& masks) {
        uint64_t bits = 0;
        const int s = static_cast<int>(masks.size());
        for (int j = 0; j < s; ++j)
            if (local & (1 << (s - 1 - j))) bits |= masks[static_cast<size_t>(j)];
        return bits;
    }

private:
    int n_;
    std::vector<cxd> amps_;
};

/// A local gate viewed as an abstract n-qubit operator (G = permuted gate (x) I).
struct LocalOperator {
    ComplexMatrix gate;
    QubitSupport support;
    int n;

    LocalOperator(ComplexMatrix g, QubitSupport s, int n_qubits)
        : gate(std::move(g)), support(std::move(s)), n(n_qubits) {
        support.validate(n);
        const int d = 1 << support.size();
        if (gate.rows() != d || gate.cols() != d)
            throw shape_error("gate dimension does not match support size");
    }

    void apply(StateVector& v) const {
        if (v.n_qubits() != n) throw shape_error("state vector qubit count mismatch");
        v.apply_local(gate, support);
    }
};

inline LocalOperator embed_local(const ComplexMatrix& gate, const QubitSupport& support, int n) {
    if (support.size() != 3) throw invalid_support_error("embed_local expects a 3-qubit support");
    if (gate.rows() != 8 || gate.cols() != 8) throw shape_error("embed_local expects an 8x8 gate");
    if (n < 3) throw parameter_error("embed_local needs n >= 3");
    return LocalOperator(gate, support, n);
}

/// Reduction of the rank-one matrix |psi><phi| to the support qubits, tracing
/// out the complement. Row factor is conj(phi); O(2^n) per output entry.
inline ComplexMatrix partial_trace_to_support(const StateVector& psi, const StateVector& phi,
                                              const QubitSupport& support) {
    if (psi.n_qubits() != phi.n_qubits()) throw shape_error("psi/phi qubit count mismatch");
    const int n = psi.n_qubits();
    support.validate(n);
    const int s = support.size();
    const int d = 1 << s;

    std::vector<uint64_t> masks(static_cast<size_t>(s));
    uint64_t smask = 0;
    for (int j = 0; j < s; ++j) {
        masks[static_cast<size_t>(j)] = uint64_t{1} << (n - 1 - support[j]);
        smask |= masks[static_cast<size_t>(j)];
    }

    ComplexMatrix red(d, d);
    std::vector<cxd> ps(static_cast<size_t>(d)), ph(static_cast<size_t>(d));
    for (uint64_t base = 0; base < psi.dim(); ++base) {
        if (base & smask) continue;
        for (int l = 0; l < d; ++l) {
            const uint64_t idx = base | StateVector::expand(l, masks);
            ps[static_cast<size_t>(l)] = psi[idx];
            ph[static_cast<size_t>(l)] = std::conj(phi[idx]);
        }
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) red(a, b) += ps[static_cast<size_t>(a)] * ph[static_cast<size_t>(b)];
    }
    return red;
}

} // namespace lscc
