#pragma once

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "lscc/analysis/experiments.hpp"
#include "lscc/harness/batch.hpp"
#include "lscc/harness/config.hpp"
#include "lscc/harness/io.hpp"

namespace lscc::commands {

namespace fs = std::filesystem;

struct CommandResult {
    int exit_code = 0;
    std::string summary;
};

inline fs::path output_dir(const ExperimentConfig& cfg) {
    const char* env = std::getenv("LSCC_OUT_DIR");
    fs::path dir = env && *env ? fs::path(env) : fs::path(cfg.out_dir);
    fs::create_directories(dir);
    return dir;
}

inline std::shared_ptr<const Circuit> make_circuit(const ExperimentConfig& cfg, uint64_t seed) {
    Rng rng(seed);
    return std::make_shared<const Circuit>(
        random_circuit(cfg.n, cfg.rounds, gate_set_from_string(cfg.gate_set), rng));
}

inline TransformationSampler make_sampler(const std::string& name, const Functional& f,
                                          int n) {
    if (name == "identity") return identity_sampler();
    if (name == "phase") return global_phase_sampler();
    if (name == "block") return block_phase_sampler(f);
    if (name == "band") return scale_sampler(1.0 - 1.0 / static_cast<double>(n));
    throw parameter_error("unknown distribution: " + name);
}

// ---- honest ----

inline CommandResult cmd_honest(const ExperimentConfig& cfg) {
    const fs::path dir = output_dir(cfg);
    const double mu = cfg.mu.resolve(cfg.n);

    auto job = [&](int, uint64_t seed) {
        auto circuit = make_circuit(cfg, seed);
        ProtocolSpec spec = ag_spec(circuit, mu, cfg.bit_quantization);
        HonestAgProver prover(circuit);
        return run_protocol(spec, spec.evaluate_truth(), prover, seed);
    };
    const auto transcripts = run_batch<Transcript>(cfg.seeds, cfg.master_seed, job, cfg.threads);

    TranscriptWriter tw(dir / "transcripts.jsonl");
    int accepts = 0;
    double max_margin = 0.0;
    for (const auto& tr : transcripts) {
        tw.write(tr);
        if (tr.accepted) ++accepts;
        max_margin = std::max(max_margin, tr.max_margin());
    }
    std::ostringstream s;
    s << "accept=" << accepts << "/" << cfg.seeds << " max_margin=" << detail::fmt(max_margin);
    return {0, s.str()};
}

// ---- cheat ----

inline CommandResult cmd_cheat(const ExperimentConfig& cfg) {
    const fs::path dir = output_dir(cfg);
    const double mu = cfg.mu.resolve(cfg.n);

    auto job = [&](int, uint64_t seed) {
        auto circuit = make_circuit(cfg, seed);
        ProtocolSpec spec = ag_spec(circuit, mu, cfg.bit_quantization);
        const cxd truth = spec.evaluate_truth();
        GenericCheatProver prover(std::make_unique<HonestAgProver>(circuit), spec.functional,
                                  truth, truth + cfg.offset);
        return run_protocol(spec, truth + cfg.offset, prover, seed);
    };
    const auto transcripts = run_batch<Transcript>(cfg.seeds, cfg.master_seed, job, cfg.threads);

    TranscriptWriter tw(dir / "transcripts.jsonl");
    CsvWriter decay(dir / "decay.csv", {"seed", "round", "abs_delta"});
    std::vector<std::vector<LedgerRow>> ledgers;
    std::vector<double> products;
    int accepts = 0;
    for (const auto& tr : transcripts) {
        tw.write(tr);
        if (tr.accepted) ++accepts;
        for (const auto& row : tr.ledger)
            decay.row({CsvWriter::cell(tr.seed), CsvWriter::cell(row.round),
                       CsvWriter::cell(std::abs(row.delta))});
        if (!tr.ledger.empty() && std::abs(tr.ledger.front().delta) > 0.0)
            products.push_back(std::abs(tr.ledger.back().delta) /
                               std::abs(tr.ledger.front().delta));
        ledgers.push_back(tr.ledger);
    }
    const ShrinkageSummary shr = shrinkage_stats(ledgers);
    CsvWriter hist(dir / "shrinkage_hist.csv", {"bin_low", "bin_high", "count"});
    for (size_t b = 0; b < shr.histogram.size(); ++b)
        hist.row({CsvWriter::cell(static_cast<double>(b) * shr.bin_width),
                  CsvWriter::cell(static_cast<double>(b + 1) * shr.bin_width),
                  CsvWriter::cell(static_cast<uint64_t>(shr.histogram[b]))});

    std::sort(products.begin(), products.end());
    const double median_product = products.empty() ? 0.0 : products[products.size() / 2];
    std::ostringstream s;
    s << "accept=" << accepts << "/" << cfg.seeds
      << " median_delta_ratio=" << detail::fmt(median_product)
      << " median_shrinkage=" << detail::fmt(shr.median);
    return {0, s.str()};
}

// ---- env ----

inline CommandResult cmd_env(const ExperimentConfig& cfg) {
    const fs::path dir = output_dir(cfg);
    const double mu = cfg.mu.resolve(cfg.n);
    std::vector<ProtocolSpec> specs;
    for (int i = 0; i < cfg.seeds; ++i) {
        auto spec = ag_spec(make_circuit(cfg, Rng::derive_seed(cfg.master_seed,
                                                               static_cast<uint64_t>(i))),
                            mu);
        spec.id = "ag/input" + std::to_string(i);
        specs.push_back(std::move(spec));
    }
    const EnvEstimate est = estimate_env(specs, cfg.samples, cfg.master_seed);

    CsvWriter csv(dir / "env.csv", {"input", "mean", "std_error", "samples"});
    for (const auto& p : est.per_input)
        csv.row({p.spec_id, CsvWriter::cell(p.mean), CsvWriter::cell(p.std_error),
                 CsvWriter::cell(static_cast<uint64_t>(p.samples))});
    std::ostringstream s;
    s << "env_min=" << detail::fmt(est.minimum)
      << " q_star=" << detail::fmt(specs.front().functional.q_star())
      << " (surrogate: min over " << cfg.seeds << " sampled inputs)";
    return {0, s.str()};
}

// ---- decay ----

inline CommandResult cmd_decay(const ExperimentConfig& cfg) {
    const fs::path dir = output_dir(cfg);
    const double mu = cfg.mu.resolve(cfg.n);

    auto make_run = [&](uint64_t seed) {
        auto circuit = make_circuit(cfg, seed);
        CheatRun run{ag_spec(circuit, mu, cfg.bit_quantization), nullptr, 0.0};
        const cxd truth = run.spec.evaluate_truth();
        run.claimed_c = truth + cfg.offset;
        run.prover = std::make_unique<GenericCheatProver>(
            std::make_unique<HonestAgProver>(circuit), run.spec.functional, truth,
            run.claimed_c);
        return run;
    };
    const DecayAggregate agg = decay_experiment(make_run, cfg.seeds, cfg.master_seed);

    CsvWriter csv(dir / "decay.csv", {"seed", "round", "abs_delta"});
    CsvWriter slopes(dir / "decay_slopes.csv", {"seed", "log_slope", "accepted"});
    for (const auto& ds : agg.series) {
        for (size_t r = 0; r < ds.abs_delta.size(); ++r)
            csv.row({CsvWriter::cell(ds.seed), CsvWriter::cell(static_cast<int>(r)),
                     CsvWriter::cell(ds.abs_delta[r])});
        slopes.row({CsvWriter::cell(ds.seed), CsvWriter::cell(ds.log_slope),
                    CsvWriter::cell(ds.accepted ? 1 : 0)});
    }
    std::ostringstream s;
    s << "accept_fraction=" << detail::fmt(agg.accept_fraction)
      << " frac_delta_below_1e-3=" << detail::fmt(agg.fraction_final_below(1e-3));
    return {0, s.str()};
}

// ---- claim1 ----

inline CommandResult cmd_claim1(const ExperimentConfig& cfg) {
    const Functional f = Functional::trace_functional(8);
    const auto sampler = make_sampler(cfg.distribution, f, cfg.n);
    const Claim1Report rep = claim1_check(f, sampler, cfg.samples, cfg.seeds, cfg.master_seed);
    std::ostringstream s;
    s << "claim1 " << (rep.pass() ? "pass" : "FAIL")
      << " max_identity_dev=" << detail::fmt(rep.max_identity_dev)
      << " max_lambda_dev=" << detail::fmt(rep.max_lambda_modulus_dev)
      << " precondition_violations=" << rep.precondition_violations;
    return {rep.pass() ? 0 : 3, s.str()};
}

// ---- collapse ----

inline CommandResult cmd_collapse(const ExperimentConfig& cfg) {
    const Functional f = Functional::trace_functional(8);
    Rng rng(cfg.master_seed);
    const ComplexMatrix m0 = random_unit_matrix(8, rng);
    ProtocolSpec spec =
        synthetic_spec("collapse/" + cfg.distribution, f, m0, cfg.rounds,
                       cfg.mu.resolve(cfg.n), 1.0, make_sampler(cfg.distribution, f, cfg.n),
                       cfg.n);
    const cxd claimed = f(m0) + cfg.offset;
    const CollapseReport rep = collapse_test(
        spec, [&m0] { return std::make_unique<ChainProver>(m0); }, claimed, cfg.seeds,
        cfg.master_seed);
    std::ostringstream s;
    s << "agreement=" << rep.agreements << "/" << rep.seeds
      << " full_accepts=" << rep.full_accepts << " w2_accepts=" << rep.two_round_accepts;
    return {0, s.str()};
}

// ---- probe ----

inline CommandResult cmd_probe(const ExperimentConfig& cfg) {
    const fs::path dir = output_dir(cfg);
    const Functional f = Functional::trace_functional(8);
    CsvWriter csv(dir / "probe.csv", {"gap", "alpha", "probability", "std_error", "samples"});
    std::ostringstream s;
    s << "probe";
    uint64_t stream = 0;
    for (double gap : cfg.gaps) {
        const ProbeEstimate est =
            stability_probe(f, scale_sampler(1.0 - gap), cfg.alpha, cfg.samples,
                            Rng::derive_seed(cfg.master_seed, stream++));
        csv.row({CsvWriter::cell(gap), CsvWriter::cell(cfg.alpha),
                 CsvWriter::cell(est.probability), CsvWriter::cell(est.std_error),
                 CsvWriter::cell(static_cast<uint64_t>(est.samples))});
        s << " p(gap=" << detail::fmt(gap) << ")=" << detail::fmt(est.probability);
    }
    return {0, s.str()};
}

// ---- band ----

inline CommandResult cmd_band(const ExperimentConfig& cfg) {
    const fs::path dir = output_dir(cfg);
    const int n = cfg.n;
    const Functional f = Functional::trace_functional(8);
    const ComplexMatrix m0 = f.Q_star(); // unit-norm start, F(m0) = q*... scaled below
    const ComplexMatrix start = m0 * (1.0 / f.q_star()); // F(start) = 1
    const double offset = cfg.offset != 0.0 ? cfg.offset : 2.0 / 3.0;
    const double expected = std::pow(1.0 - 1.0 / static_cast<double>(n), n);

    auto run_at = [&](double mu_hat_over_delta0) {
        ProtocolSpec spec = synthetic_spec(
            "band", f, start, n, mu_hat_over_delta0 * offset, 1.0,
            scale_sampler(1.0 - 1.0 / static_cast<double>(n)), n);
        const cxd truth = f(start);
        GenericCheatProver prover(std::make_unique<ChainProver>(start), f, truth,
                                  truth + offset);
        return run_protocol(spec, truth + offset, prover, cfg.master_seed);
    };

    const Transcript tight = run_at(0.1);
    const Transcript loose = run_at(0.5);
    double measured = 0.0;
    if (!tight.ledger.empty() && std::abs(tight.ledger.front().delta) > 0.0)
        measured = std::abs(tight.ledger.back().delta) / std::abs(tight.ledger.front().delta);

    CsvWriter csv(dir / "band.csv",
                  {"n", "closed_form", "measured", "tight_decision", "loose_decision"});
    csv.row({CsvWriter::cell(n), CsvWriter::cell(expected), CsvWriter::cell(measured),
             tight.accepted ? "accept" : "reject", loose.accepted ? "accept" : "reject"});

    std::ostringstream s;
    s << "closed_form=" << detail::fmt(expected) << " measured=" << detail::fmt(measured)
      << " tight(mu=0.1|d0|)=" << (tight.accepted ? "accept" : "reject")
      << " loose(mu=0.5|d0|)=" << (loose.accepted ? "accept" : "reject");
    return {0, s.str()};
}

// ---- circuit gen / show ----

inline CommandResult cmd_circuit_gen(const ExperimentConfig& cfg, const std::string& path) {
    Rng rng(cfg.master_seed);
    const Circuit c =
        random_circuit(cfg.n, cfg.rounds, gate_set_from_string(cfg.gate_set), rng);
    std::ofstream out(path);
    if (!out) throw parameter_error("cannot open " + path);
    save_circuit(c, out);
    std::ostringstream s;
    s << "wrote n=" << c.n << " T=" << c.rounds() << " circuit to " << path;
    return {0, s.str()};
}

inline CommandResult cmd_circuit_show(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parameter_error("cannot open " + path);
    const Circuit c = load_circuit(in);
    std::ostringstream s;
    s << "n=" << c.n << " T=" << c.rounds() << " top_row_value=";
    const cxd v = top_row_value(c);
    s << detail::fmt(v.real()) << (v.imag() < 0 ? "" : "+") << detail::fmt(v.imag()) << "i";
    return {0, s.str()};
}

} // namespace lscc::commands
