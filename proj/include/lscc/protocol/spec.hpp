#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lscc/protocol/functional.hpp"
#include "lscc/protocol/transformation.hpp"

namespace lscc {

/// One consistency-check protocol instance, bound to a concrete input x.
/// Families over inputs are represented as one spec per input.
struct ProtocolSpec {
    std::string id;
    int k = 0;
    int n = 0;      // input size parameter, only used for mu(n) bookkeeping
    int rounds = 0; // T

    /// C(x); empty in verification-only mode.
    std::function<cxd()> evaluate_truth;
    double c_max = 1.0;
    double mu = 0.0; // precision mu(n); checks use mu_hat = mu * c_max

    std::function<Transformation(int round, Rng&)> sample_transformation;
    std::function<cxd(const std::vector<Transformation>&)> final_value_fn;

    Functional functional = Functional::trace_functional(8);

    std::optional<int> bit_quantization;
    /// Initial honest matrix for synthetic (non-circuit) specs.
    std::optional<ComplexMatrix> synthetic_m0;
    /// Verifier-side phase folding for stability-preserving distributions
    /// (the replay variant of the round checks).
    bool fold_phases = false;

    double mu_hat() const { return mu * c_max; }

    void validate() const {
        if (k <= 0) throw parameter_error("spec: k must be positive");
        if (rounds < 1) throw parameter_error("spec: T must be >= 1");
        if (mu_hat() <= 0.0) throw parameter_error("spec: mu * c_max must be positive");
        if (functional.k() != k) throw shape_error("spec: functional dimension mismatch");
    }

    /// The protocol family wants Omega(n) <= T(n) <= poly(n); the harness
    /// allows any T >= 1 for experiments and only flags the range violation.
    bool rounds_in_viable_range() const { return rounds >= n; }
};

struct RoundRecord {
    int round = 0;
    cxd lhs;         // value derived from the previous message
    cxd rhs;         // value of the fresh message
    double margin = 0.0;
    bool pass = false;
};

struct LedgerRow {
    int round = 0;
    cxd delta;                   // error scalar delta_i
    double delta_frob = 0.0;     // ||Delta_i||_F
    std::optional<double> shrinkage; // S_i, absent when delta_{i-1} = 0
};

struct Transcript {
    std::string spec_id;
    uint64_t seed = 0;
    cxd claimed_c;
    std::vector<RoundRecord> rounds; // index 0 is the round-0 check
    std::optional<RoundRecord> final_check;
    bool accepted = false;
    int rejection_round = -1; // -1: none; T+1 marks the final check
    bool fault = false;       // malformed prover output, not an honest reject
    std::vector<LedgerRow> ledger;

    double max_margin() const {
        double m = 0.0;
        for (const auto& r : rounds) m = std::max(m, r.margin);
        if (final_check) m = std::max(m, final_check->margin);
        return m;
    }
};

/// Rounding to b fractional bits, emulating a finite-precision channel.
inline double quantize_bits(double v, int bits) {
    const double scale = std::ldexp(1.0, bits);
    return std::nearbyint(v * scale) / scale;
}

inline cxd quantize_bits(cxd v, int bits) {
    return {quantize_bits(v.real(), bits), quantize_bits(v.imag(), bits)};
}

inline ComplexMatrix quantize_bits(const ComplexMatrix& m, int bits) {
    ComplexMatrix r = m;
    for (auto& e : r.entries()) e = quantize_bits(e, bits);
    return r;
}

} // namespace lscc
