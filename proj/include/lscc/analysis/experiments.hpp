#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lscc/adversaries/provers.hpp"
#include "lscc/analysis/distributions.hpp"

namespace lscc {

// ---- expected next value ----

struct EnvEstimate {
    struct PerInput {
        std::string spec_id;
        double mean = 0.0;
        double std_error = 0.0;
        size_t samples = 0;
    };
    std::vector<PerInput> per_input;
    /// min over the supplied input set; a surrogate upper bound for the
    /// min over all inputs.
    double minimum = 0.0;
};

/// Mean of |F(T_i(Q*))| over rounds and samples, per input spec; |F(T(Q))| is
/// phase-invariant on the argmax circle, so sampling Q* alone is exact.
inline EnvEstimate estimate_env(const std::vector<ProtocolSpec>& specs, int samples_per_round,
                                uint64_t seed) {
    if (specs.empty()) throw parameter_error("estimate_env: empty input set");
    if (samples_per_round < 1) throw parameter_error("estimate_env: samples_per_round >= 1");

    EnvEstimate out;
    uint64_t stream = 0;
    for (const auto& spec : specs) {
        Rng rng(Rng::derive_seed(seed, stream++));
        double sum = 0.0, sumsq = 0.0;
        size_t count = 0;
        for (int i = 1; i <= spec.rounds; ++i)
            for (int s = 0; s < samples_per_round; ++s) {
                const Transformation t = spec.sample_transformation(i, rng);
                const double v = std::abs(spec.functional(t.apply(spec.functional.Q_star())));
                sum += v;
                sumsq += v * v;
                ++count;
            }
        const double mean = sum / static_cast<double>(count);
        const double var = std::max(0.0, sumsq / static_cast<double>(count) - mean * mean);
        out.per_input.push_back({spec.id, mean,
                                 std::sqrt(var / static_cast<double>(count)), count});
    }
    out.minimum = out.per_input[0].mean;
    for (const auto& p : out.per_input) out.minimum = std::min(out.minimum, p.mean);
    return out;
}

// ---- cheat decay ----

struct CheatRun {
    ProtocolSpec spec;
    std::unique_ptr<Prover> prover;
    cxd claimed_c;
};

struct DecaySeries {
    uint64_t seed = 0;
    std::vector<double> abs_delta; // |delta_0| .. |delta_T|
    double log_slope = 0.0;        // least-squares slope of log|delta_i| vs i
    bool accepted = false;
    double final_margin = 0.0;
};

struct DecayAggregate {
    std::vector<DecaySeries> series;
    double accept_fraction = 0.0;

    double fraction_final_below(double ratio) const {
        size_t hit = 0;
        for (const auto& s : series)
            if (!s.abs_delta.empty() && s.abs_delta.back() < ratio * s.abs_delta.front()) ++hit;
        return static_cast<double>(hit) / static_cast<double>(series.size());
    }
};

inline double fit_log_slope(const std::vector<double>& abs_delta) {
    // clip exact zeros so underflowed tails stay finite
    std::vector<double> y;
    y.reserve(abs_delta.size());
    for (double v : abs_delta) y.push_back(std::log(std::max(v, 1e-300)));
    const double m = static_cast<double>(y.size());
    if (m < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < y.size(); ++i) {
        const double x = static_cast<double>(i);
        sx += x;
        sy += y[i];
        sxx += x * x;
        sxy += x * y[i];
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

/// Runs a cheat prover over independent seeds and collects the |delta| decay.
inline DecayAggregate decay_experiment(const std::function<CheatRun(uint64_t seed)>& make_run,
                                       int seeds, uint64_t master_seed) {
    DecayAggregate agg;
    size_t accepted = 0;
    for (int s = 0; s < seeds; ++s) {
        const uint64_t seed = Rng::derive_seed(master_seed, static_cast<uint64_t>(s));
        CheatRun run = make_run(seed);
        const Transcript tr = run_protocol(run.spec, run.claimed_c, *run.prover, seed);
        DecaySeries ds;
        ds.seed = seed;
        for (const auto& row : tr.ledger) ds.abs_delta.push_back(std::abs(row.delta));
        ds.log_slope = fit_log_slope(ds.abs_delta);
        ds.accepted = tr.accepted;
        ds.final_margin = tr.final_check ? tr.final_check->margin : 0.0;
        if (ds.accepted) ++accepted;
        agg.series.push_back(std::move(ds));
    }
    agg.accept_fraction = static_cast<double>(accepted) / static_cast<double>(seeds);
    return agg;
}

// ---- phase-stability check ----

struct Claim1Report {
    double max_lambda_modulus_dev = 0.0; // max | |lambda| - 1 |
    double max_identity_dev = 0.0;       // max |F(A) - lambda * F(T(A))|
    int precondition_violations = 0;     // samples with |F(T(Q*))| < q*(1 - tol)
    bool pass(double tol = 1e-9) const {
        return precondition_violations == 0 && max_lambda_modulus_dev <= 1e-10 &&
               max_identity_dev <= tol;
    }
};

/// For each sampled T: lambda(T) = q*/F(T(Q*)) must be a pure phase and
/// F(A) = lambda(T) * F(T(A)) must hold for every A.
inline Claim1Report claim1_check(const Functional& functional,
                                 const TransformationSampler& sampler, int matrix_samples,
                                 int transformation_trials, uint64_t seed) {
    Claim1Report rep;
    Rng rng(seed);
    for (int t = 0; t < transformation_trials; ++t) {
        const Transformation trans = sampler(1, rng);
        const cxd ftq = functional(trans.apply(functional.Q_star()));
        if (std::abs(ftq) < functional.q_star() * (1.0 - 1e-9)) {
            ++rep.precondition_violations;
            continue;
        }
        const cxd lambda = functional.q_star() / ftq;
        rep.max_lambda_modulus_dev =
            std::max(rep.max_lambda_modulus_dev, std::abs(std::abs(lambda) - 1.0));
        for (int a = 0; a < matrix_samples; ++a) {
            const ComplexMatrix m = random_unit_matrix(functional.k(), rng);
            const double dev =
                std::abs(functional(m) - lambda * functional(trans.apply(m)));
            rep.max_identity_dev = std::max(rep.max_identity_dev, dev);
        }
    }
    return rep;
}

// ---- round collapse ----

struct CollapseReport {
    int seeds = 0;
    int agreements = 0;
    int full_accepts = 0;
    int two_round_accepts = 0;
    double max_final_margin_delta = 0.0;
    double agreement_fraction() const {
        return static_cast<double>(agreements) / static_cast<double>(seeds);
    }
};

/// Matched-seed comparison of the T-round protocol (replay prover, verifier
/// phase folding) against the two-round protocol W2.
inline CollapseReport collapse_test(const ProtocolSpec& spec,
                                    const std::function<std::unique_ptr<Prover>()>& make_source,
                                    cxd claimed_c, int seeds, uint64_t master_seed) {
    CollapseReport rep;
    rep.seeds = seeds;
    ProtocolSpec folded = spec;
    folded.fold_phases = true;
    for (int s = 0; s < seeds; ++s) {
        const uint64_t seed = Rng::derive_seed(master_seed, static_cast<uint64_t>(s));
        ReplayProver replay(make_source(), spec.rounds);
        const Transcript full = run_protocol(folded, claimed_c, replay, seed);
        auto source = make_source();
        const Transcript two = run_two_round(spec, claimed_c, *source, seed);
        if (full.accepted == two.accepted) ++rep.agreements;
        if (full.accepted) ++rep.full_accepts;
        if (two.accepted) ++rep.two_round_accepts;
        if (full.final_check && two.final_check)
            rep.max_final_margin_delta =
                std::max(rep.max_final_margin_delta,
                         std::abs(full.final_check->margin - two.final_check->margin));
    }
    return rep;
}

// ---- inexact-stability probe ----

struct ProbeEstimate {
    double probability = 0.0;
    double std_error = 0.0;
    size_t samples = 0;
};

/// Empirical Pr over T ~ D and random unit-norm A of
/// |F(A) - F(T(A))| <= alpha.
inline ProbeEstimate stability_probe(const Functional& functional,
                                     const TransformationSampler& sampler, double alpha,
                                     int samples, uint64_t seed) {
    if (alpha <= 0.0) throw parameter_error("stability_probe: alpha must be positive");
    Rng rng(seed);
    size_t hits = 0;
    for (int s = 0; s < samples; ++s) {
        const Transformation t = sampler(1, rng);
        const ComplexMatrix a = random_unit_matrix(functional.k(), rng);
        if (std::abs(functional(a) - functional(t.apply(a))) <= alpha) ++hits;
    }
    ProbeEstimate est;
    est.samples = static_cast<size_t>(samples);
    est.probability = static_cast<double>(hits) / static_cast<double>(samples);
    est.std_error = std::sqrt(est.probability * (1.0 - est.probability) /
                              static_cast<double>(samples));
    return est;
}

// ---- shrinkage statistics ----

struct ShrinkageSummary {
    double mean = 0.0;
    double median = 0.0;
    std::vector<size_t> histogram;   // bins over [0, 1.05], bin_count bins
    double bin_width = 0.0;
    double fraction_below = 0.0;     // fraction of rounds with S_i <= 1 - eps/4
    double max_product_mismatch = 0.0; // |prod S_i - |delta_T/delta_0||, per run
    size_t rounds_counted = 0;
};

inline ShrinkageSummary shrinkage_stats(const std::vector<std::vector<LedgerRow>>& ledgers,
                                        double epsilon = 0.2, int bin_count = 21) {
    ShrinkageSummary sum;
    sum.histogram.assign(static_cast<size_t>(bin_count), 0);
    sum.bin_width = 1.05 / bin_count;
    std::vector<double> all;
    const double threshold = 1.0 - epsilon / 4.0;
    size_t below = 0;
    for (const auto& ledger : ledgers) {
        double product = 1.0;
        bool product_defined = true;
        for (const auto& row : ledger) {
            if (row.round == 0) continue;
            if (!row.shrinkage) {
                product_defined = false;
                continue;
            }
            const double s = *row.shrinkage;
            all.push_back(s);
            if (s <= threshold) ++below;
            product *= s;
            const int bin = std::min(bin_count - 1, static_cast<int>(s / sum.bin_width));
            ++sum.histogram[static_cast<size_t>(bin)];
        }
        if (product_defined && !ledger.empty() && std::abs(ledger.front().delta) > 0.0) {
            const double ratio =
                std::abs(ledger.back().delta) / std::abs(ledger.front().delta);
            sum.max_product_mismatch =
                std::max(sum.max_product_mismatch, std::abs(product - ratio));
        }
    }
    sum.rounds_counted = all.size();
    if (!all.empty()) {
        sum.mean = std::accumulate(all.begin(), all.end(), 0.0) / static_cast<double>(all.size());
        std::sort(all.begin(), all.end());
        sum.median = all[all.size() / 2];
        sum.fraction_below = static_cast<double>(below) / static_cast<double>(all.size());
    }
    return sum;
}

} // namespace lscc
