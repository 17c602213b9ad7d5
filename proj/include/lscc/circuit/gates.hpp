#pragma once

#include <string>
#include <vector>

#include "lscc/harness/rng.hpp"
#include "lscc/numerics/complex_matrix.hpp"

namespace lscc::gates {

inline ComplexMatrix pauli_x() { return {2, 2, {0, 1, 1, 0}}; }
inline ComplexMatrix pauli_y() { return {2, 2, {0, cxd(0, -1), cxd(0, 1), 0}}; }
inline ComplexMatrix pauli_z() { return {2, 2, {1, 0, 0, -1}}; }
inline ComplexMatrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return {2, 2, {s, s, s, -s}};
}
inline ComplexMatrix phase_s() { return {2, 2, {1, 0, 0, cxd(0, 1)}}; }
inline ComplexMatrix gate_t() {
    return {2, 2, {1, 0, 0, std::polar(1.0, std::numbers::pi / 4)}};
}
inline ComplexMatrix cnot() {
    return {4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0}};
}
inline ComplexMatrix cz() {
    return {4, 4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1}};
}

/// Haar-distributed unitary via Gram-Schmidt QR of a complex Gaussian matrix.
/// Gram-Schmidt yields the unique QR factor with positive real diagonal,
/// which makes Q exactly Haar.
inline ComplexMatrix haar_unitary(int k, Rng& rng) {
    ComplexMatrix a(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) a(i, j) = rng.next_complex_gaussian();

    for (int j = 0; j < k; ++j) {
        for (int p = 0; p < j; ++p) {
            cxd dot = 0.0;
            for (int i = 0; i < k; ++i) dot += std::conj(a(i, p)) * a(i, j);
            for (int i = 0; i < k; ++i) a(i, j) -= dot * a(i, p);
        }
        double nrm = 0.0;
        for (int i = 0; i < k; ++i) nrm += std::norm(a(i, j));
        nrm = std::sqrt(nrm);
        for (int i = 0; i < k; ++i) a(i, j) /= nrm;
    }
    return a;
}

/// Named 1-2 qubit gate embedded into an 8x8 block at a random slot.
inline ComplexMatrix embed_named_8x8(const std::string& name, Rng& rng) {
    ComplexMatrix g(1, 1, {cxd(1.0)});
    if (name == "x") g = pauli_x();
    else if (name == "y") g = pauli_y();
    else if (name == "z") g = pauli_z();
    else if (name == "h") g = hadamard();
    else if (name == "s") g = phase_s();
    else if (name == "t") g = gate_t();
    else if (name == "cnot") g = cnot();
    else if (name == "cz") g = cz();
    else throw parameter_error("unknown gate name: " + name);

    const int width = g.rows() == 2 ? 1 : 2;
    const int slot = static_cast<int>(rng.next_below(static_cast<uint64_t>(4 - width)));
    ComplexMatrix full = ComplexMatrix::identity(1 << slot);
    full = kron(full, g);
    full = kron(full, ComplexMatrix::identity(1 << (3 - slot - width)));
    return full;
}

} // namespace lscc::gates
