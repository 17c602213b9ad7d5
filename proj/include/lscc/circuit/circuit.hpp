#pragma once

#include <array>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lscc/circuit/gates.hpp"
#include "lscc/numerics/state_vector.hpp"

namespace lscc {

/// One 3-qubit unitary placed on named qubits of the register.
struct LocalGate {
    ComplexMatrix unitary; // 8x8
    QubitSupport support;  // 3 qubits

    LocalGate(ComplexMatrix u, QubitSupport s) : unitary(std::move(u)), support(std::move(s)) {
        if (unitary.rows() != 8 || unitary.cols() != 8) throw shape_error("gate must be 8x8");
        if (support.size() != 3) throw invalid_support_error("gate support must have 3 qubits");
    }
};

struct Circuit {
    int n = 0;
    std::vector<LocalGate> gates;

    int rounds() const { return static_cast<int>(gates.size()); }

    void validate() const {
        if (n < 3) throw parameter_error("circuit needs n >= 3");
        if (gates.empty()) throw parameter_error("circuit needs at least one gate");
        for (const auto& g : gates) g.support.validate(n);
    }
};

enum class GateSet { Haar3, CliffordT, Named };

inline GateSet gate_set_from_string(const std::string& s) {
    if (s == "haar3") return GateSet::Haar3;
    if (s == "clifford_t") return GateSet::CliffordT;
    if (s == "named") return GateSet::Named;
    throw parameter_error("unknown gate set: " + s);
}

/// T gates on uniformly random 3-element supports.
inline Circuit random_circuit(int n, int t, GateSet set, Rng& rng,
                              const std::vector<std::string>& names = {}) {
    if (n < 3) throw parameter_error("random_circuit needs n >= 3");
    if (t < 1) throw parameter_error("random_circuit needs T >= 1");

    static const std::vector<std::string> clifford_t_names = {"h", "s", "t", "cnot", "cz", "x", "z"};

    Circuit c;
    c.n = n;
    c.gates.reserve(static_cast<size_t>(t));
    for (int i = 0; i < t; ++i) {
        // random 3-subset in random order
        std::vector<int> pool(static_cast<size_t>(n));
        for (int q = 0; q < n; ++q) pool[static_cast<size_t>(q)] = q;
        std::vector<int> picked;
        for (int j = 0; j < 3; ++j) {
            const auto at = rng.next_below(pool.size());
            picked.push_back(pool[at]);
            pool.erase(pool.begin() + static_cast<long>(at));
        }
        QubitSupport support(picked);

        ComplexMatrix u(8, 8);
        switch (set) {
            case GateSet::Haar3:
                u = gates::haar_unitary(8, rng);
                break;
            case GateSet::CliffordT:
                u = gates::embed_named_8x8(
                    clifford_t_names[rng.next_below(clifford_t_names.size())], rng);
                break;
            case GateSet::Named: {
                if (names.empty()) throw parameter_error("named gate set requires a gate list");
                u = gates::embed_named_8x8(names[rng.next_below(names.size())], rng);
                break;
            }
        }
        c.gates.emplace_back(std::move(u), std::move(support));
    }
    return c;
}

// ---- line-oriented text serialization ----
// header "n=<int> T=<int>", then one gate per line: three support indices
// followed by 64 entries "re,im" row-major. '#' starts a comment.

namespace detail {
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
} // namespace detail

inline void save_circuit(const Circuit& c, std::ostream& os) {
    os << "n=" << c.n << " T=" << c.rounds() << "\n";
    for (const auto& g : c.gates) {
        os << g.support[0] << ' ' << g.support[1] << ' ' << g.support[2];
        for (const auto& e : g.unitary.entries())
            os << ' ' << detail::format_double(e.real()) << ',' << detail::format_double(e.imag());
        os << "\n";
    }
}

inline Circuit load_circuit(std::istream& is) {
    Circuit c;
    std::string line;
    int t = -1;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        if (t < 0) {
            std::string ntok, ttok;
            if (!(ls >> ntok >> ttok)) continue; // skip blank/comment lines before header
            if (ntok.rfind("n=", 0) != 0 || ttok.rfind("T=", 0) != 0)
                throw parameter_error("circuit file: malformed header");
            c.n = std::stoi(ntok.substr(2));
            t = std::stoi(ttok.substr(2));
            continue;
        }
        std::vector<int> sup(3);
        if (!(ls >> sup[0] >> sup[1] >> sup[2])) continue;
        std::vector<cxd> entries;
        entries.reserve(64);
        std::string tok;
        while (ls >> tok) {
            const auto comma = tok.find(',');
            if (comma == std::string::npos) throw parameter_error("circuit file: malformed entry");
            entries.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
        }
        if (entries.size() != 64) throw parameter_error("circuit file: expected 64 entries per gate");
        c.gates.emplace_back(ComplexMatrix(8, 8, std::move(entries)), QubitSupport(sup));
    }
    if (t < 0) throw parameter_error("circuit file: missing header");
    if (c.rounds() != t) throw parameter_error("circuit file: gate count does not match T");
    c.validate();
    return c;
}

} // namespace lscc
