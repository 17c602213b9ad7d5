#pragma once

#include <memory>

#include "lscc/protocol/prover.hpp"

namespace lscc {

/// Round-0 check: |claimedC - F(m0)| <= mu_hat.
inline std::pair<bool, double> verify_round0(const ProtocolSpec& spec, cxd claimed_c,
                                             const ComplexMatrix& m0) {
    if (m0.rows() != spec.k || m0.cols() != spec.k) throw shape_error("m0 is not k x k");
    const double margin = std::abs(claimed_c - spec.functional(m0));
    return {margin <= spec.mu_hat(), margin};
}

/// Round-i check: |F(T_i(m_{i-1})) - F(m_i)| <= mu_hat.
inline std::pair<bool, double> verify_round(const ProtocolSpec& spec, const Transformation& t,
                                            const ComplexMatrix& m_prev,
                                            const ComplexMatrix& m_cur) {
    if (m_prev.rows() != spec.k || m_prev.cols() != spec.k || m_cur.rows() != spec.k ||
        m_cur.cols() != spec.k)
        throw shape_error("round messages are not k x k");
    const double margin = std::abs(spec.functional(t.apply(m_prev)) - spec.functional(m_cur));
    return {margin <= spec.mu_hat(), margin};
}

/// Scalar Function Language membership: |C(x) - C| <= (1/6) * C_max.
inline bool sf_member(const ProtocolSpec& spec, cxd claimed_c) {
    if (!spec.evaluate_truth)
        throw unsupported_mode_error("sf_member: spec has no evaluator (verification-only mode)");
    return std::abs(spec.evaluate_truth() - claimed_c) <= spec.c_max / 6.0;
}

namespace detail {

/// lambda(T) = q* / F(T(Q*)); |lambda| = 1 on stability-preserving samples.
inline cxd phase_lambda(const ProtocolSpec& spec, const Transformation& t) {
    const cxd v = spec.functional(t.apply(spec.functional.Q_star()));
    return spec.functional.q_star() / v;
}

} // namespace detail

inline void attach_ledger(Transcript& tr, const Prover& prover) {
    if (const auto* rows = prover.ledger()) tr.ledger = *rows;
}

/// Executes round 0, rounds 1..T with freshly sampled transformations, then
/// the final check; short-circuits to reject at the first failing check.
inline Transcript run_protocol(const ProtocolSpec& spec, cxd claimed_c, Prover& prover,
                               uint64_t seed) {
    spec.validate();
    Transcript tr;
    tr.spec_id = spec.id;
    tr.seed = seed;
    tr.claimed_c = spec.bit_quantization ? quantize_bits(claimed_c, *spec.bit_quantization)
                                         : claimed_c;
    Rng rng(seed);

    const auto receive = [&](ComplexMatrix m) {
        if (m.rows() != spec.k || m.cols() != spec.k) {
            tr.fault = true;
            throw shape_error("prover returned wrong-shape matrix");
        }
        if (spec.bit_quantization) m = quantize_bits(m, *spec.bit_quantization);
        return m;
    };

    try {
        ComplexMatrix m_prev = receive(prover.initial_message());
        {
            auto [pass, margin] = verify_round0(spec, tr.claimed_c, m_prev);
            tr.rounds.push_back({0, tr.claimed_c, spec.functional(m_prev), margin, pass});
            if (!pass) {
                tr.rejection_round = 0;
                attach_ledger(tr, prover);
                return tr;
            }
        }

        std::vector<Transformation> sampled;
        sampled.reserve(static_cast<size_t>(spec.rounds));
        cxd fold_acc = 1.0; // running product of lambda(T_j) for phase folding

        for (int i = 1; i <= spec.rounds; ++i) {
            Transformation t = spec.sample_transformation(i, rng);
            sampled.push_back(t);
            ComplexMatrix m_cur = receive(prover.respond(i, t));
            if (spec.fold_phases && i < spec.rounds) {
                // V absorbs the per-round phase: the prover may keep sending
                // m_0, and the verifier rescales it into the honest chain.
                fold_acc *= detail::phase_lambda(spec, t);
                m_cur = m_cur * (1.0 / fold_acc);
            }
            auto [pass, margin] = verify_round(spec, t, m_prev, m_cur);
            tr.rounds.push_back(
                {i, spec.functional(t.apply(m_prev)), spec.functional(m_cur), margin, pass});
            if (!pass) {
                tr.rejection_round = i;
                attach_ledger(tr, prover);
                return tr;
            }
            m_prev = std::move(m_cur);
        }

        const cxd f = spec.final_value_fn(sampled);
        const cxd fm = spec.functional(m_prev);
        const double margin = std::abs(fm - f);
        const bool pass = margin <= spec.mu_hat();
        tr.final_check = RoundRecord{spec.rounds + 1, fm, f, margin, pass};
        tr.accepted = pass;
        if (!pass) tr.rejection_round = spec.rounds + 1;
    } catch (const shape_error&) {
        tr.fault = true;
        tr.accepted = false;
        tr.rejection_round = static_cast<int>(tr.rounds.size());
    }
    attach_ledger(tr, prover);
    return tr;
}

/// The two-round protocol W2: m_0, then all transformations at once, then the
/// final message and final check. Matched seeds sample identical T's.
inline Transcript run_two_round(const ProtocolSpec& spec, cxd claimed_c, Prover& prover,
                                uint64_t seed) {
    spec.validate();
    Transcript tr;
    tr.spec_id = spec.id + "/w2";
    tr.seed = seed;
    tr.claimed_c = claimed_c;
    Rng rng(seed);

    try {
        const ComplexMatrix m0 = prover.initial_message();
        auto [pass0, margin0] = verify_round0(spec, claimed_c, m0);
        tr.rounds.push_back({0, claimed_c, spec.functional(m0), margin0, pass0});
        if (!pass0) {
            tr.rejection_round = 0;
            return tr;
        }

        std::vector<Transformation> sampled;
        sampled.reserve(static_cast<size_t>(spec.rounds));
        for (int i = 1; i <= spec.rounds; ++i) sampled.push_back(spec.sample_transformation(i, rng));

        const ComplexMatrix m_t = prover.final_message(sampled);
        const cxd f = spec.final_value_fn(sampled);
        const double margin = std::abs(spec.functional(m_t) - f);
        const bool pass = margin <= spec.mu_hat();
        tr.final_check = RoundRecord{spec.rounds + 1, spec.functional(m_t), f, margin, pass};
        tr.accepted = pass;
        if (!pass) tr.rejection_round = spec.rounds + 1;
    } catch (const shape_error&) {
        tr.fault = true;
        tr.accepted = false;
    }
    return tr;
}

/// The AG protocol as a ProtocolSpec over a concrete circuit: k = 8, trace
/// functional, T_i = right-multiply by g_i^{-1} u_i, f = the per-qubit
/// product value.
inline ProtocolSpec ag_spec(std::shared_ptr<const Circuit> circuit, double mu,
                            std::optional<int> bit_quantization = {}) {
    circuit->validate();
    ProtocolSpec spec;
    spec.id = "ag";
    spec.k = 8;
    spec.n = circuit->n;
    spec.rounds = circuit->rounds();
    spec.c_max = 1.0; // |<0^n|B|0^n>| <= 1 for unitary B
    spec.mu = mu;
    spec.functional = Functional::trace_functional(8);
    spec.bit_quantization = bit_quantization;
    spec.evaluate_truth = [circuit] { return top_row_value(*circuit); };
    spec.sample_transformation = [circuit](int round, Rng& rng) {
        const auto& gate = circuit->gates[static_cast<size_t>(round - 1)];
        RoundUnitary u = sample_round_unitary(gate.support, rng);
        Transformation t =
            Transformation::right_multiply(matmul(dagger(gate.unitary), u.tensor()));
        t.round_detail = u;
        return t;
    };
    const int n = circuit->n;
    spec.final_value_fn = [n](const std::vector<Transformation>& ts) {
        std::vector<RoundUnitary> rounds;
        rounds.reserve(ts.size());
        for (const auto& t : ts) {
            if (!t.round_detail)
                throw unsupported_mode_error("AG final value needs round unitaries");
            rounds.push_back(*t.round_detail);
        }
        return final_value(rounds, n);
    };
    return spec;
}

} // namespace lscc
