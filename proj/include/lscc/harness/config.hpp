#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lscc/numerics/errors.hpp"

namespace lscc {

/// Precision given either as an absolute value or as 1/n^p.
struct MuSpec {
    std::optional<double> absolute;
    std::optional<int> poly;

    double resolve(int n) const {
        if (absolute) return *absolute;
        if (poly) return 1.0 / std::pow(static_cast<double>(n), *poly);
        throw parameter_error("mu: neither absolute value nor poly degree set");
    }
};

struct ExperimentConfig {
    std::string command;
    int n = 4;
    int rounds = 10;
    MuSpec mu{1e-6, {}};
    std::string gate_set = "haar3";
    int seeds = 100;
    uint64_t master_seed = 1;
    double offset = 0.0;
    std::string distribution = "identity";
    std::optional<int> bit_quantization;
    double alpha = 1e-3;
    int samples = 10000;
    std::vector<double> gaps = {1e-2, 1e-4, 1e-6};
    unsigned threads = 0; // 0: hardware concurrency
    std::string out_dir = "out";

    void validate() const {
        if (n < 3) throw parameter_error("config.n: must be >= 3");
        if (rounds < 1) throw parameter_error("config.T: must be >= 1");
        if (seeds < 1) throw parameter_error("config.seeds: must be >= 1");
        if (samples < 1) throw parameter_error("config.samples: must be >= 1");
    }
};

inline nlohmann::json config_to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["command"] = c.command;
    j["n"] = c.n;
    j["T"] = c.rounds;
    if (c.mu.poly)
        j["mu"] = {{"poly", *c.mu.poly}};
    else
        j["mu"] = *c.mu.absolute;
    j["gate_set"] = c.gate_set;
    j["seeds"] = c.seeds;
    j["master_seed"] = c.master_seed;
    j["offset"] = c.offset;
    j["distribution"] = c.distribution;
    if (c.bit_quantization) j["bits"] = *c.bit_quantization;
    j["alpha"] = c.alpha;
    j["samples"] = c.samples;
    j["gaps"] = c.gaps;
    j["out_dir"] = c.out_dir;
    return j;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    static const std::set<std::string> known = {"command", "n",      "T",           "mu",
                                                "gate_set", "seeds", "master_seed", "offset",
                                                "distribution", "bits", "alpha",   "samples",
                                                "gaps", "out_dir"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key)) throw parameter_error("config: unknown key '" + key + "'");

    ExperimentConfig c;
    const auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).template get<std::decay_t<decltype(field)>>();
    };
    get("command", c.command);
    get("n", c.n);
    get("T", c.rounds);
    if (j.contains("mu")) {
        const auto& m = j.at("mu");
        if (m.is_object()) {
            if (!m.contains("poly")) throw parameter_error("config.mu: object form needs 'poly'");
            c.mu = MuSpec{{}, m.at("poly").get<int>()};
        } else {
            c.mu = MuSpec{m.get<double>(), {}};
        }
    }
    get("gate_set", c.gate_set);
    get("seeds", c.seeds);
    get("master_seed", c.master_seed);
    get("offset", c.offset);
    get("distribution", c.distribution);
    if (j.contains("bits")) c.bit_quantization = j.at("bits").get<int>();
    get("alpha", c.alpha);
    get("samples", c.samples);
    get("gaps", c.gaps);
    get("out_dir", c.out_dir);
    c.validate();
    return c;
}

inline ExperimentConfig config_load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parameter_error("config: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return config_from_json(j);
}

/// FNV-1a over the canonical (sorted-key) dump.
inline uint64_t config_hash(const ExperimentConfig& c) {
    const std::string canon = config_to_json(c).dump(); // nlohmann sorts object keys
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace lscc
