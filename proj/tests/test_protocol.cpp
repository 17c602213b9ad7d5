#include <catch2/catch_amalgamated.hpp>

#include "lscc/adversaries/provers.hpp"
#include "oracles.hpp"

using namespace lscc;

namespace {

std::shared_ptr<const Circuit> shared_circuit(int n, int t, uint64_t seed) {
    Rng rng(seed);
    return std::make_shared<const Circuit>(random_circuit(n, t, GateSet::Haar3, rng));
}

} // namespace

TEST_CASE("functional basics: trace functional on k = 8") {
    const Functional f = Functional::trace_functional(8);
    REQUIRE(f.q_star() == Catch::Approx(std::sqrt(8.0)));
    REQUIRE(max_abs_diff(f.Q_star(), ComplexMatrix::identity(8) * (1.0 / std::sqrt(8.0))) <
            1e-15);
    REQUIRE(std::abs(f(ComplexMatrix::identity(8)) - 8.0) < 1e-15);
    REQUIRE_THROWS_AS(Functional(ComplexMatrix(3, 3)), degenerate_functional_error);
    REQUIRE_THROWS_AS(f(ComplexMatrix(4, 4)), shape_error);
}

TEST_CASE("functional extremality: |F(A)| <= q* ||A||_F, tight at Q*") {
    Rng rng(71);
    Functional f = Functional::trace_functional(8);
    ComplexMatrix riesz(5, 5);
    for (auto& e : riesz.entries()) e = rng.next_complex_gaussian();
    const Functional g(riesz);
    for (int rep = 0; rep < 10000; ++rep) {
        const ComplexMatrix a = random_unit_matrix(5, rng);
        REQUIRE(std::abs(g(a)) <= g.q_star() * (1.0 + 1e-12));
    }
    REQUIRE(std::abs(g(g.Q_star()) - g.q_star()) < 1e-12);
    REQUIRE(std::abs(f(f.Q_star()) - f.q_star()) < 1e-12);
}

TEST_CASE("functional is linear in its argument") {
    Rng rng(73);
    ComplexMatrix riesz(4, 4);
    for (auto& e : riesz.entries()) e = rng.next_complex_gaussian();
    const Functional f(riesz);
    for (int rep = 0; rep < 1000; ++rep) {
        const ComplexMatrix a = random_unit_matrix(4, rng);
        const ComplexMatrix b = random_unit_matrix(4, rng);
        const cxd ca = rng.next_complex_gaussian(), cb = rng.next_complex_gaussian();
        const cxd lhs = f(a * ca + b * cb);
        const cxd rhs = ca * f(a) + cb * f(b);
        REQUIRE(std::abs(lhs - rhs) < 1e-12);
    }
}

TEST_CASE("transformations are linear and norm-bounded") {
    Rng rng(79);
    const Functional f = Functional::trace_functional(4);
    std::vector<Transformation> forms;
    forms.push_back(Transformation::right_multiply(gates::haar_unitary(4, rng)));
    forms.push_back(Transformation::scale(std::polar(0.7, 1.2)));
    forms.push_back(Transformation::conjugate(gates::haar_unitary(4, rng)));
    forms.push_back(block_phase_sampler(f)(1, rng));
    for (const auto& t : forms) {
        REQUIRE(t.operator_norm() <= 1.0 + 1e-9);
        for (int rep = 0; rep < 50; ++rep) {
            const ComplexMatrix a = random_unit_matrix(4, rng);
            const ComplexMatrix b = random_unit_matrix(4, rng);
            const cxd ca = rng.next_complex_gaussian(), cb = rng.next_complex_gaussian();
            REQUIRE(max_abs_diff(t.apply(a * ca + b * cb),
                                 t.apply(a) * ca + t.apply(b) * cb) < 1e-12);
            // contraction in Frobenius norm
            REQUIRE(frobenius_norm(t.apply(a)) <= t.operator_norm() + 1e-9);
        }
    }
    REQUIRE_THROWS_AS(Transformation::scale(cxd(1.5)), parameter_error);
}

TEST_CASE("dense form reproduces right-multiplication") {
    Rng rng(83);
    const int k = 3;
    const ComplexMatrix u = gates::haar_unitary(k, rng);
    // build the k^2 x k^2 matrix of A -> A u in column-major vec convention
    ComplexMatrix map(k * k, k * k);
    for (int oc = 0; oc < k; ++oc)
        for (int orow = 0; orow < k; ++orow)
            for (int ic = 0; ic < k; ++ic)
                map(oc * k + orow, ic * k + orow) = u(ic, oc);
    const Transformation dense = Transformation::dense(map, k);
    const Transformation rm = Transformation::right_multiply(u);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix a = random_unit_matrix(k, rng);
        REQUIRE(max_abs_diff(dense.apply(a), rm.apply(a)) < 1e-12);
    }
    REQUIRE(dense.operator_norm() == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("verify_round0 and verify_round check against mu_hat inclusively") {
    ProtocolSpec spec = synthetic_spec("t", Functional::trace_functional(2),
                                       ComplexMatrix::identity(2) * 0.5, 1, 0.25, 1.0,
                                       identity_sampler());
    const ComplexMatrix m0 = *spec.synthetic_m0; // F(m0) = 1
    REQUIRE(verify_round0(spec, cxd(1.0), m0).first);
    REQUIRE(verify_round0(spec, cxd(1.25), m0).first); // boundary is inclusive
    REQUIRE_FALSE(verify_round0(spec, cxd(1.2501), m0).first);
    REQUIRE_THROWS_AS(verify_round0(spec, cxd(1.0), ComplexMatrix(3, 3)), shape_error);

    const Transformation half = Transformation::scale(cxd(0.5));
    REQUIRE(verify_round(spec, half, m0, m0 * 0.5).first);
    const auto [pass, margin] = verify_round(spec, half, m0, m0);
    REQUIRE_FALSE(pass); // margin 0.5 > 0.25
    REQUIRE(margin == Catch::Approx(0.5));
}

TEST_CASE("sf membership: inclusive sixth-of-C_max band") {
    // c_max = 1.5 makes the band width an exact dyadic 0.25
    ProtocolSpec spec = synthetic_spec("t", Functional::trace_functional(2),
                                       ComplexMatrix::identity(2) * 0.5, 1, 0.1, 1.5,
                                       identity_sampler());
    REQUIRE(sf_member(spec, cxd(1.0)));
    REQUIRE(sf_member(spec, cxd(1.25))); // boundary is inclusive
    REQUIRE_FALSE(sf_member(spec, cxd(1.25 + 1e-9)));
    spec.evaluate_truth = {};
    REQUIRE_THROWS_AS(sf_member(spec, cxd(1.0)), unsupported_mode_error);
}

TEST_CASE("ag spec: honest prover is accepted with tiny margins") {
    auto circuit = shared_circuit(4, 12, 101);
    const ProtocolSpec spec = ag_spec(circuit, 1e-6);
    spec.validate();
    REQUIRE(spec.rounds_in_viable_range());
    const cxd truth = top_row_value(*circuit);
    HonestAgProver prover(circuit);
    const Transcript tr = run_protocol(spec, truth, prover, 7);
    REQUIRE(tr.accepted);
    REQUIRE(tr.rejection_round == -1);
    REQUIRE_FALSE(tr.fault);
    REQUIRE(tr.max_margin() < 1e-9);
    REQUIRE(static_cast<int>(tr.rounds.size()) == spec.rounds + 1);
}

TEST_CASE("ag spec: inflated claim is rejected at round 0") {
    auto circuit = shared_circuit(4, 8, 103);
    const ProtocolSpec spec = ag_spec(circuit, 1e-6);
    HonestAgProver prover(circuit);
    const Transcript tr = run_protocol(spec, top_row_value(*circuit) + 0.5, prover, 7);
    REQUIRE_FALSE(tr.accepted);
    REQUIRE(tr.rejection_round == 0);
    REQUIRE(tr.rounds.size() == 1);
}

TEST_CASE("degenerate synthetic run: T = 1 identity chain accepts") {
    Rng rng(107);
    const ComplexMatrix m0 = random_unit_matrix(3, rng);
    const ProtocolSpec spec = synthetic_spec("id1", Functional::trace_functional(3), m0, 1,
                                             1e-9, 1.0, identity_sampler());
    ChainProver prover(m0);
    const Transcript tr = run_protocol(spec, spec.evaluate_truth(), prover, 1);
    REQUIRE(tr.accepted);
    REQUIRE(tr.max_margin() < 1e-12);
}

TEST_CASE("ag sampled transformations keep operator norm 1 and forward error") {
    auto circuit = shared_circuit(5, 10, 109);
    const ProtocolSpec spec = ag_spec(circuit, 1e-6);
    Rng rng(3);
    std::vector<double> moduli;
    for (int rep = 0; rep < 10000; ++rep) {
        const int round = 1 + static_cast<int>(rng.next_below(
                                  static_cast<uint64_t>(spec.rounds)));
        const Transformation t = spec.sample_transformation(round, rng);
        if (rep < 50) REQUIRE(t.operator_norm() == Catch::Approx(1.0).margin(1e-12));
        // shrinkage factor |F(T(Q*))|/q* = |tr(g^-1 u)|/8; it must stay
        // bounded away from exact zero so the cheat error keeps propagating
        const double m = std::abs(spec.functional(t.apply(spec.functional.Q_star()))) /
                         spec.functional.q_star();
        REQUIRE(m > 1e-12);
        REQUIRE(m <= 1.0 + 1e-12);
        moduli.push_back(m);
    }
    std::sort(moduli.begin(), moduli.end());
    REQUIRE(moduli[moduli.size() / 2] > 0.01); // median well away from zero
}

TEST_CASE("error matrix bookkeeping: F(M - (d/q*) Q*) = F(M) - d") {
    Rng rng(113);
    ComplexMatrix riesz(6, 6);
    for (auto& e : riesz.entries()) e = rng.next_complex_gaussian();
    const Functional f(riesz);
    for (int rep = 0; rep < 1000; ++rep) {
        const ComplexMatrix m = random_unit_matrix(6, rng);
        const cxd d = rng.next_complex_gaussian();
        const ComplexMatrix delta = f.Q_star() * (d / f.q_star());
        REQUIRE(std::abs(f(delta) - d) < 1e-12);
        REQUIRE(std::abs(f(m - delta) - (f(m) - d)) < 1e-12);
        REQUIRE(frobenius_norm(delta) == Catch::Approx(std::abs(d) / f.q_star()).margin(1e-12));
    }
}

TEST_CASE("bit quantization is idempotent and exact on representable values") {
    REQUIRE(quantize_bits(0.75, 2) == 0.75);
    REQUIRE(quantize_bits(0.3, 4) == Catch::Approx(5.0 / 16.0).margin(1e-15));
    const cxd q = quantize_bits(cxd(0.123456, -0.9876), 16);
    REQUIRE(quantize_bits(q, 16) == q);
    Rng rng(127);
    ComplexMatrix m = random_unit_matrix(4, rng);
    const ComplexMatrix once = quantize_bits(m, 12);
    REQUIRE(quantize_bits(once, 12) == once);
    // per-component error is at most 2^-13; the complex modulus adds sqrt(2)
    REQUIRE(max_abs_diff(once, m) <= std::sqrt(2.0) * std::ldexp(1.0, -13) + 1e-15);
}

TEST_CASE("quantized protocol run still accepts the honest prover") {
    auto circuit = shared_circuit(3, 6, 131);
    const ProtocolSpec spec = ag_spec(circuit, 1e-3, 40);
    HonestAgProver prover(circuit);
    const Transcript tr = run_protocol(spec, top_row_value(*circuit), prover, 11);
    REQUIRE(tr.accepted);
}

TEST_CASE("wrong-shape prover output is recorded as a fault, not a reject") {
    struct BadProver : Prover {
        ComplexMatrix initial_message() override { return ComplexMatrix::identity(3); }
        ComplexMatrix respond(int, const Transformation&) override {
            return ComplexMatrix::identity(3);
        }
    };
    auto circuit = shared_circuit(3, 4, 137);
    const ProtocolSpec spec = ag_spec(circuit, 1e-6);
    BadProver prover;
    const Transcript tr = run_protocol(spec, cxd(0.0), prover, 13);
    REQUIRE(tr.fault);
    REQUIRE_FALSE(tr.accepted);
}

TEST_CASE("two-round runner matches the full runner for honest provers") {
    auto circuit = shared_circuit(4, 9, 139);
    const ProtocolSpec spec = ag_spec(circuit, 1e-6);
    const cxd truth = top_row_value(*circuit);
    HonestAgProver full_p(circuit);
    HonestAgProver two_p(circuit);
    const Transcript full = run_protocol(spec, truth, full_p, 17);
    const Transcript two = run_two_round(spec, truth, two_p, 17);
    REQUIRE(full.accepted);
    REQUIRE(two.accepted);
    REQUIRE(full.final_check);
    REQUIRE(two.final_check);
    // matched seeds sample identical transformations, so the final values agree
    REQUIRE(std::abs(full.final_check->rhs - two.final_check->rhs) < 1e-12);
}
