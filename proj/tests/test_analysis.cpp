#include <catch2/catch_amalgamated.hpp>

#include "lscc/analysis/experiments.hpp"
#include "oracles.hpp"

using namespace lscc;

namespace {

std::shared_ptr<const Circuit> shared_circuit(int n, int t, uint64_t seed) {
    Rng rng(seed);
    return std::make_shared<const Circuit>(random_circuit(n, t, GateSet::Haar3, rng));
}

ProtocolSpec scale_spec(const std::string& id, int k, int rounds, double factor, double mu,
                        uint64_t m0_seed) {
    Rng rng(m0_seed);
    return synthetic_spec(id, Functional::trace_functional(k), random_unit_matrix(k, rng),
                          rounds, mu, 2.0, scale_sampler(factor));
}

} // namespace

TEST_CASE("estimate_env: identity and deterministic scale give exact means") {
    const ProtocolSpec ident = scale_spec("ident", 4, 6, 1.0, 1e-9, 301);
    const ProtocolSpec shrink = scale_spec("shrink", 4, 6, 1.0 - 1.0 / 20.0, 1e-9, 303);
    const EnvEstimate est = estimate_env({ident, shrink}, 10, 7);
    REQUIRE(est.per_input.size() == 2);
    // estimate_env reports |F(T(Q*))|, i.e. the per-round scalar factor
    REQUIRE(est.per_input[0].mean ==
            Catch::Approx(ident.functional.q_star()).margin(1e-12));
    REQUIRE(est.per_input[1].mean ==
            Catch::Approx(0.95 * shrink.functional.q_star()).margin(1e-12));
    REQUIRE(est.minimum == Catch::Approx(est.per_input[1].mean).margin(1e-12));
    REQUIRE(est.per_input[0].std_error < 1e-12);
}

TEST_CASE("estimate_env on the AG spec agrees with an independent Monte Carlo") {
    auto circuit = shared_circuit(4, 10, 307);
    const ProtocolSpec spec = ag_spec(circuit, 1e-6);
    const EnvEstimate est = estimate_env({spec}, 400, 11);

    // independent stream and independent formula: |tr(g^-1 u)| / sqrt(8)
    Rng rng(987654321);
    double sum = 0.0;
    size_t count = 0;
    for (int i = 0; i < spec.rounds; ++i) {
        const auto& g = circuit->gates[static_cast<size_t>(i)];
        for (int s = 0; s < 400; ++s) {
            const RoundUnitary u = sample_round_unitary(g.support, rng);
            sum += std::abs(trace(matmul(dagger(g.unitary), u.tensor()))) / std::sqrt(8.0);
            ++count;
        }
    }
    const double mc = sum / static_cast<double>(count);
    REQUIRE(est.per_input[0].mean == Catch::Approx(mc).margin(0.02));
    REQUIRE(est.per_input[0].samples == count);
}

TEST_CASE("claim1 check: exact distributions show zero deviation") {
    const Functional f = Functional::trace_functional(4);

    const Claim1Report ident = claim1_check(f, identity_sampler(), 100, 20, 13);
    REQUIRE(ident.pass());
    REQUIRE(ident.max_identity_dev < 1e-14);

    const Claim1Report phase = claim1_check(f, global_phase_sampler(), 200, 50, 17);
    REQUIRE(phase.pass());
    REQUIRE(phase.max_lambda_modulus_dev < 1e-12);
}

TEST_CASE("claim1 check: block distribution preserves the functional up to phase") {
    const Functional f = Functional::trace_functional(4);
    const Claim1Report rep = claim1_check(f, block_phase_sampler(f), 1000, 20, 19);
    REQUIRE(rep.precondition_violations == 0);
    REQUIRE(rep.max_lambda_modulus_dev < 1e-9);
    REQUIRE(rep.max_identity_dev < 1e-8);
}

TEST_CASE("claim1 check flags distributions that break the precondition") {
    const Functional f = Functional::trace_functional(4);
    const Claim1Report rep = claim1_check(f, scale_sampler(0.5), 10, 20, 23);
    REQUIRE(rep.precondition_violations == 20);
    REQUIRE_FALSE(rep.pass());
}

TEST_CASE("collapse: replayed T-round run and the two-round run always agree") {
    Rng rng(311);
    const Functional f = Functional::trace_functional(4);
    const ComplexMatrix m0 = random_unit_matrix(4, rng);
    const cxd truth = f(m0);

    for (const auto& sampler :
         {identity_sampler(), global_phase_sampler(), block_phase_sampler(f)}) {
        const ProtocolSpec spec = synthetic_spec("clp", f, m0, 10, 1e-8, 2.0, sampler);
        const auto make_source = [&] { return std::make_unique<ChainProver>(m0); };
        const CollapseReport ok = collapse_test(spec, make_source, truth, 40, 29);
        REQUIRE(ok.agreement_fraction() == 1.0);
        REQUIRE(ok.full_accepts == 40);
        REQUIRE(ok.two_round_accepts == 40);
        REQUIRE(ok.max_final_margin_delta < 1e-9);

        const CollapseReport bad = collapse_test(spec, make_source, truth + 0.25, 40, 31);
        REQUIRE(bad.agreement_fraction() == 1.0);
        REQUIRE(bad.full_accepts == 0);
        REQUIRE(bad.two_round_accepts == 0);
    }
}

TEST_CASE("stability probe: exact cases") {
    const Functional f = Functional::trace_functional(8);
    REQUIRE(stability_probe(f, identity_sampler(), 1e-12, 2000, 37).probability == 1.0);
    REQUIRE(stability_probe(f, scale_sampler(1.0 - 1e-9), 1e-6, 2000, 41).probability == 1.0);
    REQUIRE_THROWS_AS(stability_probe(f, identity_sampler(), 0.0, 10, 1), parameter_error);
}

TEST_CASE("stability probe matches a direct estimate for a strong contraction") {
    const Functional f = Functional::trace_functional(8);
    const double alpha = 0.05;
    const ProbeEstimate est = stability_probe(f, scale_sampler(0.7), alpha, 20000, 43);

    // |F(A) - 0.7 F(A)| <= alpha iff |tr(A)| <= alpha / 0.3; estimate that
    // probability directly from an independent stream
    Rng rng(123456789);
    size_t hits = 0;
    const int samples = 20000;
    for (int s = 0; s < samples; ++s)
        if (std::abs(trace(random_unit_matrix(8, rng))) <= alpha / 0.3) ++hits;
    const double direct = static_cast<double>(hits) / samples;
    REQUIRE(est.probability == Catch::Approx(direct).margin(0.02));
    REQUIRE(est.probability > 0.01);
    REQUIRE(est.probability < 0.9);
}

TEST_CASE("stability probe probability is nondecreasing in the tolerance") {
    const Functional f = Functional::trace_functional(8);
    double prev = 0.0;
    for (const double alpha : {1e-3, 1e-2, 1e-1, 1.0}) {
        const double p = stability_probe(f, scale_sampler(0.7), alpha, 5000, 47).probability;
        REQUIRE(p >= prev);
        prev = p;
    }
    REQUIRE(prev == 1.0); // alpha = 1 covers |0.3 tr(A)| for unit-norm A, k = 8
}

TEST_CASE("fit_log_slope recovers the rate of a geometric series") {
    std::vector<double> d;
    double v = 2.0;
    for (int i = 0; i <= 12; ++i) {
        d.push_back(v);
        v *= 0.35;
    }
    REQUIRE(fit_log_slope(d) == Catch::Approx(std::log(0.35)).margin(1e-9));
    REQUIRE(fit_log_slope({1.0}) == 0.0);
}

TEST_CASE("decay experiment: deterministic scale gives the closed-form ratio") {
    const int n = 20, t = 20;
    const double factor = 1.0 - 1.0 / n;
    const auto make_run = [&](uint64_t seed) {
        CheatRun run;
        run.spec = scale_spec("band", 4, t, factor, 1e-9, seed);
        const cxd truth = run.spec.evaluate_truth();
        run.claimed_c = truth + 0.5;
        run.prover = std::make_unique<GenericCheatProver>(
            std::make_unique<ChainProver>(*run.spec.synthetic_m0), run.spec.functional, truth,
            run.claimed_c);
        return run;
    };
    const DecayAggregate agg = decay_experiment(make_run, 8, 53);
    REQUIRE(agg.series.size() == 8);
    const double closed = std::pow(factor, t);
    for (const auto& s : agg.series) {
        REQUIRE(s.abs_delta.size() == static_cast<size_t>(t) + 1);
        REQUIRE(s.abs_delta.back() / s.abs_delta.front() ==
                Catch::Approx(closed).margin(1e-12));
        REQUIRE(s.log_slope == Catch::Approx(std::log(factor)).margin(1e-9));
    }
    // |delta_T| = 0.5 * 0.3585... far above mu_hat, so every run is rejected
    REQUIRE(agg.accept_fraction == 0.0);
    REQUIRE(agg.fraction_final_below(0.5) == 1.0);
    REQUIRE(agg.fraction_final_below(0.3) == 0.0);
}

TEST_CASE("shrinkage statistics on a hand-built ledger set") {
    // run 1: deltas 1, 0.5, 0.25 -> S = {0.5, 0.5}
    // run 2: deltas 2, 2 -> S = {1.0}
    std::vector<std::vector<LedgerRow>> ledgers(2);
    ledgers[0].push_back({0, cxd(1.0), 0.0, {}});
    ledgers[0].push_back({1, cxd(0.5), 0.0, 0.5});
    ledgers[0].push_back({2, cxd(0.25), 0.0, 0.5});
    ledgers[1].push_back({0, cxd(2.0), 0.0, {}});
    ledgers[1].push_back({1, cxd(2.0), 0.0, 1.0});

    const ShrinkageSummary sum = shrinkage_stats(ledgers, 0.2, 21);
    REQUIRE(sum.rounds_counted == 3);
    REQUIRE(sum.mean == Catch::Approx(2.0 / 3.0).margin(1e-12));
    REQUIRE(sum.median == 0.5);
    REQUIRE(sum.fraction_below == Catch::Approx(2.0 / 3.0).margin(1e-12));
    REQUIRE(sum.max_product_mismatch < 1e-12);
    size_t total = 0;
    for (const size_t b : sum.histogram) total += b;
    REQUIRE(total == 3);
    // S = 0.5 lands in bin floor(0.5 / 0.05) = 10, S = 1.0 in bin 20
    REQUIRE(sum.histogram[10] == 2);
    REQUIRE(sum.histogram[20] == 1);
}

TEST_CASE("shrinkage statistics from real AG cheat ledgers are product-consistent") {
    auto circuit = shared_circuit(4, 15, 313);
    const ProtocolSpec spec = ag_spec(circuit, 1.0 / 16.0);
    const cxd claimed = top_row_value(*circuit) + 0.4;
    std::vector<std::vector<LedgerRow>> ledgers;
    for (int s = 0; s < 10; ++s) {
        AgCheatProver prover(circuit, claimed);
        const Transcript tr =
            run_protocol(spec, claimed, prover, Rng::derive_seed(59, static_cast<uint64_t>(s)));
        ledgers.push_back(tr.ledger);
    }
    const ShrinkageSummary sum = shrinkage_stats(ledgers);
    REQUIRE(sum.rounds_counted == 150);
    REQUIRE(sum.max_product_mismatch < 1e-9);
    REQUIRE(sum.mean > 0.0);
    REQUIRE(sum.mean < 0.5); // haar-type rounds shrink hard on average
}
