#pragma once

#include <memory>
#include <utility>

#include "lscc/protocol/runner.hpp"

namespace lscc {

/// The honest AG prover: rank-one simulation, O(T * 2^n) total work.
class HonestAgProver : public Prover {
public:
    explicit HonestAgProver(std::shared_ptr<const Circuit> circuit)
        : circuit_(std::move(circuit)), state_(*circuit_) {}

    ComplexMatrix initial_message() override {
        if (state_.round() != 0) throw protocol_order_error("initial message already served");
        return state_.message();
    }

    ComplexMatrix respond(int round, const Transformation& t) override {
        if (round != state_.round() + 1) throw protocol_order_error("out-of-order round request");
        if (!t.round_detail)
            throw unsupported_mode_error("honest AG prover needs the round unitary");
        state_.advance(*t.round_detail);
        return state_.message();
    }

private:
    std::shared_ptr<const Circuit> circuit_;
    ProverState state_;
};

/// Honest prover for synthetic specs: M_0 given, M_i = T_i(M_{i-1}).
/// Satisfies exact completeness by construction.
class ChainProver : public Prover {
public:
    explicit ChainProver(ComplexMatrix m0) : current_(std::move(m0)) {}

    ComplexMatrix initial_message() override {
        if (round_ != 0) throw protocol_order_error("initial message already served");
        return current_;
    }

    ComplexMatrix respond(int round, const Transformation& t) override {
        if (round != round_ + 1) throw protocol_order_error("out-of-order round request");
        current_ = t.apply(current_);
        ++round_;
        return current_;
    }

private:
    ComplexMatrix current_;
    int round_ = 0;
};

/// The AG-specific cheat: Delta_i = (delta_i / tr(I)) * I with
///   delta_0 = tr(A) - C,  delta_i = tr(Delta_{i-1} * g_i^{-1} u_i),
/// and m_i = M_i - Delta_i. Passes every intermediate check exactly.
class AgCheatProver : public Prover {
public:
    AgCheatProver(std::shared_ptr<const Circuit> circuit, cxd claimed_c)
        : honest_(std::move(circuit)), claimed_c_(claimed_c) {}

    ComplexMatrix initial_message() override {
        const ComplexMatrix m0 = honest_.initial_message();
        delta_ = trace(m0) - claimed_c_; // tr(M_0) = tr(A)
        record(0);
        return m0 - current_error();
    }

    ComplexMatrix respond(int round, const Transformation& t) override {
        const cxd prev_delta = delta_;
        delta_ = trace(t.apply(current_error()));
        record(round, prev_delta);
        return honest_.respond(round, t) - current_error();
    }

    const std::vector<LedgerRow>* ledger() const override { return &ledger_; }

private:
    ComplexMatrix current_error() const { return ComplexMatrix::identity(8) * (delta_ / 8.0); }

    void record(int round, std::optional<cxd> prev = {}) {
        LedgerRow row;
        row.round = round;
        row.delta = delta_;
        row.delta_frob = frobenius_norm(current_error());
        if (prev && std::abs(*prev) > 0.0) row.shrinkage = std::abs(delta_ / *prev);
        ledger_.push_back(row);
    }

    HonestAgProver honest_;
    cxd claimed_c_;
    cxd delta_ = 0.0;
    std::vector<LedgerRow> ledger_;
};

/// The generic Q*-directed cheat: Delta_i = (delta_i / q*) Q* with
///   delta_0 = C(x) - C,  delta_i = F(T_i(Delta_{i-1})),
/// over any honest source prover. On the AG spec with the trace functional
/// this reduces algebraically to AgCheatProver.
class GenericCheatProver : public Prover {
public:
    GenericCheatProver(std::unique_ptr<Prover> honest_source, Functional functional,
                       cxd truth_c, cxd claimed_c)
        : source_(std::move(honest_source)),
          functional_(std::move(functional)),
          truth_c_(truth_c),
          claimed_c_(claimed_c) {}

    ComplexMatrix initial_message() override {
        delta_ = truth_c_ - claimed_c_;
        record(0);
        return source_->initial_message() - current_error();
    }

    ComplexMatrix respond(int round, const Transformation& t) override {
        const cxd prev_delta = delta_;
        delta_ = functional_(t.apply(current_error()));
        record(round, prev_delta);
        return source_->respond(round, t) - current_error();
    }

    const std::vector<LedgerRow>* ledger() const override { return &ledger_; }

private:
    ComplexMatrix current_error() const {
        return functional_.Q_star() * (delta_ / functional_.q_star());
    }

    void record(int round, std::optional<cxd> prev = {}) {
        LedgerRow row;
        row.round = round;
        row.delta = delta_;
        row.delta_frob = frobenius_norm(current_error());
        if (prev && std::abs(*prev) > 0.0) row.shrinkage = std::abs(delta_ / *prev);
        ledger_.push_back(row);
    }

    std::unique_ptr<Prover> source_;
    Functional functional_;
    cxd truth_c_, claimed_c_;
    cxd delta_ = 0.0;
    std::vector<LedgerRow> ledger_;
};

/// Sends m_0 for rounds 0..T-1 and the true m_T at round T. Only sensible on
/// stability-preserving specs with verifier-side phase folding enabled.
class ReplayProver : public Prover {
public:
    ReplayProver(std::unique_ptr<Prover> source, int total_rounds)
        : source_(std::move(source)), total_rounds_(total_rounds) {}

    ComplexMatrix initial_message() override {
        m0_ = source_->initial_message();
        return *m0_;
    }

    ComplexMatrix respond(int round, const Transformation& t) override {
        const ComplexMatrix true_m = source_->respond(round, t);
        return round < total_rounds_ ? *m0_ : true_m;
    }

    ComplexMatrix final_message(const std::vector<Transformation>& all) override {
        return source_->final_message(all);
    }

private:
    std::unique_ptr<Prover> source_;
    int total_rounds_;
    std::optional<ComplexMatrix> m0_;
};

} // namespace lscc
