#pragma once

#include <vector>

#include "lscc/protocol/spec.hpp"

namespace lscc {

/// Message interface the verifier drives: one initial message, then one
/// response per sampled transformation, in round order.
class Prover {
public:
    virtual ~Prover() = default;

    virtual ComplexMatrix initial_message() = 0;
    virtual ComplexMatrix respond(int round, const Transformation& t) = 0;

    /// Two-round (W2) variant: all transformations at once, final message
    /// back. Default replays them through respond().
    virtual ComplexMatrix final_message(const std::vector<Transformation>& all) {
        ComplexMatrix m(1, 1);
        int round = 1;
        for (const auto& t : all) m = respond(round++, t);
        return m;
    }

    virtual const std::vector<LedgerRow>* ledger() const { return nullptr; }
};

} // namespace lscc
