#include "doctest.h"

#include "rwb/quantum.hpp"
#include "rwb/rng.hpp"

#include <cmath>

using namespace rwb;

namespace {

DensityOperator random_qubit(CounterRng& rng) {
    auto r = rng.ball();
    return bloch(r[0], r[1], r[2]);
}

DensityOperator ket0() { return bloch(0, 0, 1); }
DensityOperator ket1() { return bloch(0, 0, -1); }
DensityOperator ket_plus() { return bloch(1, 0, 0); }

KrausChannel random_channel(CounterRng& rng, std::size_t d) {
    // two random Kraus operators normalized through (G1^dag G1 + G2^dag G2)^{-1/2}
    CMatrix g1(d), g2(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            g1(i, j) = Cx(rng.gaussian(), rng.gaussian());
            g2(i, j) = Cx(rng.gaussian(), rng.gaussian());
        }
    CMatrix s = g1.dagger() * g1 + g2.dagger() * g2;
    CMatrix inv_sqrt = hermitian_function(0.5 * (s + s.dagger()),
                                          [](double x) { return 1.0 / std::sqrt(std::max(1e-300, x)); });
    KrausChannel c;
    c.ops = {g1 * inv_sqrt, g2 * inv_sqrt};
    return c;
}

}  // namespace

TEST_CASE("bloch bijection") {
    DensityOperator center = bloch(0, 0, 0);
    CHECK((center.matrix() - DensityOperator::maximally_mixed(2).matrix()).max_abs() < 1e-15);
    DensityOperator up = bloch(0, 0, 1);
    CHECK(up.matrix()(0, 0) == Cx(1, 0));
    CHECK(std::abs(up.matrix()(1, 1)) < 1e-15);
    DensityOperator px = bloch(1, 0, 0);
    CHECK(px.matrix()(0, 1) == Cx(0.5, 0));
    CHECK(px.matrix()(1, 0) == Cx(0.5, 0));

    CounterRng rng(53, 1);
    for (int rep = 0; rep < 200; ++rep) {
        auto r = rng.ball();
        auto back = bloch_inverse(bloch(r[0], r[1], r[2]));
        for (int i = 0; i < 3; ++i) REQUIRE(std::fabs(back[i] - r[i]) < 1e-10);
    }
    CHECK_THROWS_AS(bloch(0.9, 0.9, 0.9), std::domain_error);
}

TEST_CASE("trace distance and the Bloch law") {
    CHECK(trace_distance(ket0(), ket0()) == doctest::Approx(0.0));
    CHECK(trace_distance(ket0(), ket1()) == doctest::Approx(1.0));
    CHECK(trace_distance(bloch(0, 0, 0.6), bloch(0, 0, -0.2)) == doctest::Approx(0.4));

    CounterRng rng(59, 2);
    double worst = 0;
    for (int rep = 0; rep < 10000; ++rep) {
        auto r1 = rng.ball();
        auto r2 = rng.ball();
        double dist = trace_distance(bloch(r1[0], r1[1], r1[2]), bloch(r2[0], r2[1], r2[2]));
        double half = 0.5 * std::sqrt((r1[0] - r2[0]) * (r1[0] - r2[0]) +
                                      (r1[1] - r2[1]) * (r1[1] - r2[1]) +
                                      (r1[2] - r2[2]) * (r1[2] - r2[2]));
        worst = std::max(worst, std::fabs(dist - half));
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("fidelity, angle distance, and the sandwich") {
    CHECK(fidelity(ket0(), ket0()) == doctest::Approx(1.0));
    CHECK(angle_distance(ket0(), ket0()) == doctest::Approx(0.0));
    CHECK(fidelity(ket0(), ket1()) == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(angle_distance(ket0(), ket1()) == doctest::Approx(M_PI / 2).epsilon(1e-7));

    // Fuchs-van de Graaf sandwich as in the cited source: the qualitative
    // equivalence statement drops the square on the fidelity, which already
    // fails for pure qubit pairs; the true bound is sqrt(1 - F^2)
    CounterRng rng(61, 3);
    for (int rep = 0; rep < 1000; ++rep) {
        DensityOperator a = random_qubit(rng), b = random_qubit(rng);
        double f = fidelity(a, b), d = trace_distance(a, b);
        REQUIRE(1.0 - f <= d + 1e-9);
        REQUIRE(d <= std::sqrt(std::max(0.0, 1.0 - f * f)) + 1e-9);
        REQUIRE(fidelity(b, a) == doctest::Approx(f).epsilon(1e-8));  // symmetry
    }
}

TEST_CASE("von Neumann entropy") {
    CHECK(von_neumann_entropy(DensityOperator::maximally_mixed(2)) == doctest::Approx(1.0));
    CHECK(von_neumann_entropy(ket_plus()) == doctest::Approx(0.0));
    DensityOperator mixed(CMatrix(2, {Cx(0.25), Cx(0), Cx(0), Cx(0.75)}));
    CHECK(von_neumann_entropy(mixed) == doctest::Approx(0.811278).epsilon(1e-6));

    // invariance under inner automorphisms: conjugate by an eigenbasis unitary
    CounterRng rng(67, 4);
    for (int rep = 0; rep < 100; ++rep) {
        DensityOperator rho = random_qubit(rng);
        CMatrix h(2);
        h(0, 0) = Cx(rng.gaussian(), 0);
        h(1, 1) = Cx(rng.gaussian(), 0);
        Cx off(rng.gaussian(), rng.gaussian());
        h(0, 1) = off;
        h(1, 0) = std::conj(off);
        auto es = jacobi_hermitian(h);
        CMatrix u(2);
        for (std::size_t k = 0; k < 2; ++k)
            for (std::size_t i = 0; i < 2; ++i) u(i, k) = es.vectors[k][i];
        DensityOperator conj(u * rho.matrix() * u.dagger(), 1e-8);
        REQUIRE(std::fabs(von_neumann_entropy(conj) - von_neumann_entropy(rho)) < 1e-9);
    }

    // concavity: S(sum w_i rho_i) >= sum w_i S(rho_i)
    for (int rep = 0; rep < 100; ++rep) {
        DensityOperator a = random_qubit(rng), b = random_qubit(rng);
        double w = rng.uniform();
        DensityOperator mix(w * a.matrix() + (1 - w) * b.matrix(), 1e-8);
        REQUIRE(von_neumann_entropy(mix) >=
                w * von_neumann_entropy(a) + (1 - w) * von_neumann_entropy(b) - 1e-9);
    }
}

TEST_CASE("subadditivity on two-qubit product perturbations") {
    CounterRng rng(71, 5);
    for (int rep = 0; rep < 50; ++rep) {
        // random two-qubit state: mixture of product pure states
        CMatrix m(4);
        double total = 0;
        for (int k = 0; k < 3; ++k) {
            DensityOperator a = random_qubit(rng), b = random_qubit(rng);
            double w = rng.uniform() + 0.1;
            m = m + w * CMatrix::tensor(a.matrix(), b.matrix());
            total += w;
        }
        m = (1.0 / total) * m;
        DensityOperator rho(0.5 * (m + m.dagger()), 1e-8);
        // partial traces
        CMatrix ra(2), rb(2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) {
                ra(i, j) = m(i * 2 + 0, j * 2 + 0) + m(i * 2 + 1, j * 2 + 1);
                rb(i, j) = m(0 * 2 + i, 0 * 2 + j) + m(1 * 2 + i, 1 * 2 + j);
            }
        double s_ab = von_neumann_entropy(rho);
        double s_a = von_neumann_entropy(DensityOperator(ra, 1e-8));
        double s_b = von_neumann_entropy(DensityOperator(rb, 1e-8));
        REQUIRE(s_ab <= s_a + s_b + 1e-9);
    }
}

TEST_CASE("dimension mismatches are usage errors") {
    DensityOperator q = ket0();
    DensityOperator prod(CMatrix::tensor(ket0().matrix(), ket0().matrix()), 1e-8);
    CHECK_THROWS_AS(trace_distance(q, prod), std::invalid_argument);
    CHECK_THROWS_AS(fidelity(q, prod), std::invalid_argument);
    CHECK_THROWS_AS(umegaki_relative_entropy(q, prod), std::invalid_argument);
}

TEST_CASE("umegaki relative entropy") {
    CounterRng seed_rng(73, 6);
    DensityOperator rho = random_qubit(seed_rng);
    CHECK(umegaki_relative_entropy(rho, rho) == doctest::Approx(0.0));
    CHECK(std::isinf(umegaki_relative_entropy(ket0(), ket1())));
    DensityOperator sigma(CMatrix(2, {Cx(0.25), Cx(0), Cx(0), Cx(0.75)}));
    CHECK(umegaki_relative_entropy(DensityOperator::maximally_mixed(2), sigma) ==
          doctest::Approx(0.207519).epsilon(1e-5));  // classical KL on a commuting pair
    // positivity on random pairs
    CounterRng rng(79, 7);
    for (int rep = 0; rep < 200; ++rep) {
        DensityOperator a = random_qubit(rng), b = random_qubit(rng);
        double s = umegaki_relative_entropy(a, b);
        REQUIRE((std::isinf(s) || s >= 0.0));
    }
}

TEST_CASE("holevo information") {
    Ensemble e01{{0.5, 0.5}, {ket0(), ket1()}};
    CHECK(holevo_chi(e01) == doctest::Approx(1.0));
    DensityOperator rho = bloch(0.3, 0.2, -0.4);
    Ensemble same{{0.5, 0.5}, {rho, rho}};
    CHECK(holevo_chi(same) == doctest::Approx(0.0));
    Ensemble mixed{{0.5, 0.5}, {ket0(), ket_plus()}};
    // mean state eigenvalues (1 +- 1/sqrt 2)/2
    CHECK(holevo_chi(mixed) == doctest::Approx(0.600876).epsilon(1e-4));
}

TEST_CASE("holevo is monotone under channels") {
    CounterRng rng(83, 8);
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t k = 2 + rng.below(2);
        Ensemble e;
        double total = 0;
        std::vector<double> raw;
        for (std::size_t i = 0; i < k; ++i) {
            raw.push_back(rng.uniform() + 0.05);
            total += raw.back();
            e.states.push_back(random_qubit(rng));
        }
        for (double w : raw) e.weights.push_back(w / total);
        KrausChannel c = random_channel(rng, 2);
        Ensemble pushed;
        pushed.weights = e.weights;
        for (const auto& st : e.states) pushed.states.push_back(apply_channel(c, st));
        REQUIRE(holevo_chi(pushed) <= holevo_chi(e) + 1e-9);
    }
}

TEST_CASE("accessible information") {
    Ensemble e01{{0.5, 0.5}, {ket0(), ket1()}};
    CHECK(accessible_information(e01) == doctest::Approx(1.0).epsilon(1e-6));
    DensityOperator rho = bloch(0.1, -0.5, 0.2);
    Ensemble same{{0.5, 0.5}, {rho, rho}};
    CHECK(accessible_information(same) == doctest::Approx(0.0));
    Ensemble mixed{{0.5, 0.5}, {ket0(), ket_plus()}};
    double acc = accessible_information(mixed);
    double chi = holevo_chi(mixed);
    CHECK(acc <= chi + 1e-9);
    CHECK(chi - acc >= 0.1);  // nonorthogonal states stay indistinguishable
    CHECK(acc == doctest::Approx(0.399124).epsilon(1e-3));  // 1 - H((1+1/sqrt2)/2)
    CHECK_THROWS_AS(accessible_information(e01, 8), std::invalid_argument);
}

TEST_CASE("orthogonal ensembles reach the Holevo bound") {
    CounterRng rng(89, 9);
    for (int rep = 0; rep < 20; ++rep) {
        auto n = rng.sphere_surface();
        double w = 0.1 + 0.8 * rng.uniform();
        Ensemble e{{w, 1 - w},
                   {bloch(n[0], n[1], n[2]), bloch(-n[0], -n[1], -n[2])}};
        double chi = holevo_chi(e);
        double acc = accessible_information(e);
        REQUIRE(acc <= chi + 1e-9);
        REQUIRE(chi - acc <= 1e-3);
    }
}

TEST_CASE("channels and measurements") {
    KrausChannel id;
    id.ops = {CMatrix::identity(2)};
    DensityOperator rho = bloch(0.2, 0.3, 0.4);
    CHECK((apply_channel(id, rho).matrix() - rho.matrix()).max_abs() < 1e-12);

    // computational-basis OPU on a z-aligned state
    Opu zbasis;
    CMatrix p0(2), p1(2);
    p0(0, 0) = 1;
    p1(1, 1) = 1;
    zbasis.ops = {p0, p1};
    for (double z : {-0.8, -0.2, 0.0, 0.5, 1.0}) {
        auto probs = opu_probabilities(zbasis, bloch(0, 0, z));
        REQUIRE(probs.w[0] == doctest::Approx((1 + z) / 2));
        REQUIRE(probs.w[1] == doctest::Approx((1 - z) / 2));
    }

    // fully depolarizing Pauli twirl sends everything to I/2
    KrausChannel twirl;
    twirl.ops = {0.5 * CMatrix::identity(2), 0.5 * pauli_x(), 0.5 * pauli_y(), 0.5 * pauli_z()};
    DensityOperator out = apply_channel(twirl, rho);
    CHECK((out.matrix() - DensityOperator::maximally_mixed(2).matrix()).max_abs() < 1e-12);

    KrausChannel bad;
    bad.ops = {0.9 * CMatrix::identity(2)};
    CHECK_THROWS_AS(apply_channel(bad, rho), std::invalid_argument);
}

TEST_CASE("schatten decomposition") {
    DensityOperator diag(CMatrix(2, {Cx(0.75), Cx(0), Cx(0), Cx(0.25)}));
    Ensemble e = schatten_decomposition(diag);
    CHECK(e.weights[0] == doctest::Approx(0.75));
    CHECK(e.weights[1] == doctest::Approx(0.25));
    CHECK(e.states[0].matrix()(0, 0).real() == doctest::Approx(1.0));
    CHECK(e.states[1].matrix()(1, 1).real() == doctest::Approx(1.0));

    // Bloch(0.6, 0, 0): weights 0.8/0.2 with +-x eigenprojectors
    Ensemble ex = schatten_decomposition(bloch(0.6, 0, 0));
    CHECK(ex.weights[0] == doctest::Approx(0.8));
    CHECK(ex.weights[1] == doctest::Approx(0.2));
    auto rx = bloch_inverse(ex.states[0]);
    CHECK(rx[0] == doctest::Approx(1.0).epsilon(1e-9));

    // degenerate case: equal weights, orthogonal supports, exact reconstruction
    Ensemble em = schatten_decomposition(DensityOperator::maximally_mixed(2));
    CHECK(em.weights[0] == doctest::Approx(0.5));
    CMatrix rec(2);
    for (std::size_t i = 0; i < em.states.size(); ++i)
        rec = rec + em.weights[i] * em.states[i].matrix();
    CHECK((rec - DensityOperator::maximally_mixed(2).matrix()).max_abs() < 1e-8);
    CHECK(std::abs((em.states[0].matrix() * em.states[1].matrix()).trace()) < 1e-9);

    // reconstruction on random states
    CounterRng rng(97, 10);
    for (int rep = 0; rep < 100; ++rep) {
        DensityOperator rho = random_qubit(rng);
        Ensemble d = schatten_decomposition(rho);
        CMatrix r2(2);
        for (std::size_t i = 0; i < d.states.size(); ++i)
            r2 = r2 + d.weights[i] * d.states[i].matrix();
        REQUIRE((r2 - rho.matrix()).max_abs() < 1e-8);
    }
}

TEST_CASE("conditional expectation is the HS projection") {
    // accessible algebra M2 (x) I inside M4
    CMatrix id2 = CMatrix::identity(2);
    std::vector<CMatrix> basis = {CMatrix::tensor(pauli_x(), id2), CMatrix::tensor(pauli_y(), id2),
                                  CMatrix::tensor(pauli_z(), id2), CMatrix::tensor(id2, id2)};
    ConditionalExpectation e(basis);
    CHECK(e.rank() == 4);

    // E(identity) = identity
    CHECK((e(CMatrix::identity(4)) - CMatrix::identity(4)).max_abs() < 1e-12);
    // E(b) = b on the span
    for (const auto& b : basis) CHECK((e(b) - b).max_abs() < 1e-12);

    // E annihilates sigma_i (x) sigma_j and keeps sigma_i (x) I
    CMatrix cross = CMatrix::tensor(pauli_x(), pauli_z());
    CHECK(e(cross).max_abs() < 1e-12);

    // idempotence on random inputs
    CounterRng rng(101, 11);
    for (int rep = 0; rep < 100; ++rep) {
        CMatrix a(4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) a(i, j) = Cx(rng.gaussian(), rng.gaussian());
        CMatrix once = e(a), twice = e(once);
        REQUIRE((twice - once).max_abs() < 1e-10);
    }

    // positivity on a cone of product-positive elements
    for (int rep = 0; rep < 50; ++rep) {
        auto r = rng.ball();
        CMatrix pos = CMatrix::tensor(bloch(r[0], r[1], r[2]).matrix(), id2);
        auto es = jacobi_hermitian(e(pos));
        REQUIRE(es.values.front() > -1e-10);
    }

    std::vector<CMatrix> degenerate = {CMatrix(4), CMatrix(4)};
    CHECK_THROWS_AS(ConditionalExpectation{degenerate}, std::invalid_argument);
}

TEST_CASE("EPR posterior picks out the identity coefficient") {
    // basis e_1..e_4 = sigma_1, sigma_2, sigma_3, I and e_ij = e_i (x) e_j;
    // the accessible-side expectation applied to sum c_ij e_ij keeps sum_i
    // c_i4 e_i, and tau_2 of that is the I (x) I coefficient
    CMatrix id2 = CMatrix::identity(2);
    std::array<CMatrix, 4> e2{pauli_x(), pauli_y(), pauli_z(), id2};
    std::vector<CMatrix> accessible;
    for (int i = 0; i < 4; ++i) accessible.push_back(CMatrix::tensor(e2[i], id2));
    ConditionalExpectation E(accessible);

    CounterRng rng(103, 12);
    std::array<std::array<double, 4>, 4> c{};
    CMatrix a(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            c[i][j] = rng.gaussian();
            a = a + c[i][j] * CMatrix::tensor(e2[i], e2[j]);
        }
    CMatrix projected = E(a);
    CMatrix expect(4);
    for (int i = 0; i < 4; ++i) expect = expect + c[i][3] * CMatrix::tensor(e2[i], id2);
    CHECK((projected - expect).max_abs() < 1e-10);

    // omega_posteriori(a) = tau_2(sum_i c_i4 e_i) = c_44
    double posterior = (0.5 * projected.trace() / 2.0).real();  // tau_4 = tr/4 on M4
    CHECK(posterior == doctest::Approx(c[3][3]).epsilon(1e-9));
}
