#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lscc/protocol/spec.hpp"

namespace lscc {

using nlohmann::json;

namespace detail {
inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
} // namespace detail

/// Deterministic CSV writer: fixed headers, %.17g doubles, no timestamps.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
        : out_(path) {
        if (!out_) throw parameter_error("cannot open " + path.string());
        for (size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
        width_ = columns.size();
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != width_) throw parameter_error("csv row width mismatch");
        for (size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }

    static std::string cell(double v) { return detail::fmt(v); }
    static std::string cell(uint64_t v) { return std::to_string(v); }
    static std::string cell(int v) { return std::to_string(v); }

private:
    std::ofstream out_;
    size_t width_ = 0;
};

inline json transcript_to_json(const Transcript& tr) {
    json j;
    j["spec"] = tr.spec_id;
    j["seed"] = tr.seed;
    j["claimed_c"] = {tr.claimed_c.real(), tr.claimed_c.imag()};
    j["decision"] = tr.accepted ? "accept" : "reject";
    j["rejection_round"] = tr.rejection_round;
    j["fault"] = tr.fault;
    json rounds = json::array();
    for (const auto& r : tr.rounds)
        rounds.push_back({{"round", r.round}, {"margin", r.margin}, {"pass", r.pass}});
    j["rounds"] = rounds;
    if (tr.final_check)
        j["final"] = {{"margin", tr.final_check->margin}, {"pass", tr.final_check->pass}};
    if (!tr.ledger.empty()) {
        json ledger = json::array();
        for (const auto& row : tr.ledger) {
            json lr = {{"round", row.round},
                       {"delta_re", row.delta.real()},
                       {"delta_im", row.delta.imag()},
                       {"delta_frob", row.delta_frob}};
            if (row.shrinkage) lr["shrinkage"] = *row.shrinkage;
            ledger.push_back(lr);
        }
        j["ledger"] = ledger;
    }
    return j;
}

/// One JSON record per line.
class TranscriptWriter {
public:
    explicit TranscriptWriter(const std::filesystem::path& path) : out_(path) {
        if (!out_) throw parameter_error("cannot open " + path.string());
    }

    void write(const Transcript& tr) { out_ << transcript_to_json(tr).dump() << "\n"; }

private:
    std::ofstream out_;
};

} // namespace lscc
