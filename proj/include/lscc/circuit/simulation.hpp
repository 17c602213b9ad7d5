#pragma once

#include "lscc/circuit/circuit.hpp"

namespace lscc {

/// The verifier's three-angle single-qubit unitary measure:
///   [[cos(th) e^{i p1},  sin(th) e^{i p2}],
///    [-sin(th) e^{-i p2}, cos(th) e^{-i p1}]]
inline ComplexMatrix u2_from_angles(double theta, double phi1, double phi2) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {2, 2,
            {c * std::polar(1.0, phi1), s * std::polar(1.0, phi2),
             -s * std::polar(1.0, -phi2), c * std::polar(1.0, -phi1)}};
}

inline ComplexMatrix sample_u2(Rng& rng) {
    const double theta = rng.next_angle();
    const double phi1 = rng.next_angle();
    const double phi2 = rng.next_angle();
    return u2_from_angles(theta, phi1, phi2);
}

/// The round's verifier unitary: three independent single-qubit draws placed
/// on the round gate's support, in the support's listed order.
struct RoundUnitary {
    std::array<ComplexMatrix, 3> factors;
    QubitSupport support;

    ComplexMatrix tensor() const {
        return kron(kron(factors[0], factors[1]), factors[2]);
    }
};

inline RoundUnitary sample_round_unitary(const QubitSupport& support, Rng& rng) {
    return {{sample_u2(rng), sample_u2(rng), sample_u2(rng)}, support};
}

/// <0^n| G_T ... G_1 |0^n>, one statevector pass.
inline cxd top_row_value(const Circuit& c) {
    c.validate();
    StateVector v = StateVector::basis(c.n);
    for (const auto& g : c.gates) v.apply_local(g.unitary, g.support);
    return v[0];
}

/// <0^n| U_T ... U_1 |0^n> from per-qubit 2x2 products; O(T) 2x2 multiplies.
inline cxd final_value(const std::vector<RoundUnitary>& rounds, int n) {
    std::vector<ComplexMatrix> per_qubit(static_cast<size_t>(n), ComplexMatrix::identity(2));
    for (const auto& r : rounds)
        for (int j = 0; j < 3; ++j) {
            auto& acc = per_qubit[static_cast<size_t>(r.support[j])];
            acc = matmul(r.factors[static_cast<size_t>(j)], acc); // later rounds act on the left
        }
    cxd result = 1.0;
    for (const auto& m : per_qubit) result *= m(0, 0);
    return result;
}

/// Rank-one factorization of the honest prover's matrix
///   A_i = U_i...U_1 |0^n><0^n| G_T...G_{i+1} = |psi_i><row_i|
/// with psi_i = U_i...U_1|0^n> and phi_i = row_i^dagger stored as a column.
/// Updates: psi_i = U_i psi_{i-1}, phi_i = G_i phi_{i-1}.
class ProverState {
public:
    explicit ProverState(const Circuit& circuit)
        : circuit_(&circuit),
          psi_(StateVector::basis(circuit.n)),
          phi_(StateVector::basis(circuit.n)) {
        circuit.validate();
        // phi_0 = G_1^dag ... G_T^dag |0^n>  (apply G_T^dag first)
        for (int i = circuit.rounds() - 1; i >= 0; --i) {
            const auto& g = circuit.gates[static_cast<size_t>(i)];
            phi_.apply_local(dagger(g.unitary), g.support);
        }
    }

    int round() const { return round_; }
    int total_rounds() const { return circuit_->rounds(); }
    const StateVector& psi() const { return psi_; }
    const StateVector& phi() const { return phi_; }

    /// M_round reduced onto the next gate's support (the last gate's support
    /// after the final round; the trace is support-independent there).
    ComplexMatrix message() const {
        const int t = total_rounds();
        const auto& sup = round_ < t ? circuit_->gates[static_cast<size_t>(round_)].support
                                     : circuit_->gates[static_cast<size_t>(t - 1)].support;
        return partial_trace_to_support(psi_, phi_, sup);
    }

    void advance(const RoundUnitary& u) {
        if (round_ >= total_rounds()) throw protocol_order_error("advance past round T");
        const auto& g = circuit_->gates[static_cast<size_t>(round_)];
        for (int j = 0; j < 3; ++j)
            psi_.apply_single(u.factors[static_cast<size_t>(j)], u.support[j]);
        phi_.apply_local(g.unitary, g.support);
        ++round_;
    }

private:
    const Circuit* circuit_;
    StateVector psi_, phi_;
    int round_ = 0;
};

/// Honest message for the round the state currently sits at.
inline ComplexMatrix honest_message(const ProverState& state) { return state.message(); }

} // namespace lscc
