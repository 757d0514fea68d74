#include <doctest.h>

#include <cmath>
#include <numbers>

#include "macrolab/ensembles.hpp"
#include "macrolab/geometric.hpp"
#include "oracles.hpp"

using namespace macrolab;

TEST_CASE("GHZ has one ebit of geometric entanglement") {
    for (int n = 3; n <= 8; ++n) {
        const GeomResult r = geometric_entanglement(to_dense(ghz(n)));
        CHECK(r.e_g == doctest::Approx(1.0).epsilon(1e-8));
    }
    for (int n : {16, 128, 500}) CHECK(geometric_entanglement_symmetric(ghz(n)).e_g == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("two-qubit states against the Schmidt oracle") {
    RngStream rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const PureState s = haar_random_state(2, rng);
        CHECK(geometric_entanglement(s).eta == doctest::Approx(oracle::two_qubit_eta(s.amplitudes())).epsilon(1e-9));
    }
}

TEST_CASE("three-qubit states against the grid oracle") {
    RngStream rng(67);
    for (int trial = 0; trial < 3; ++trial) {
        const PureState s = haar_random_state(3, rng);
        CHECK(geometric_entanglement(s).eta == doctest::Approx(oracle::three_qubit_eta(s.amplitudes())).epsilon(1e-7));
    }
}

TEST_CASE("W state") {
    const double ref = oracle::symmetric_eta_grid(to_dense(dicke(3, 1)).amplitudes(), 3);
    CHECK(ref == doctest::Approx(4.0 / 9.0).epsilon(1e-8));
    CHECK(geometric_entanglement_symmetric(dicke(3, 1)).eta == doctest::Approx(ref).epsilon(1e-8));
    CHECK(geometric_entanglement(to_dense(dicke(3, 1))).eta == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("alternating sweeps never decrease the overlap") {
    RngStream rng(71);
    const PureState s = haar_random_state(6, rng);
    SeparableProduct p;
    for (int j = 0; j < 6; ++j) p.locals.push_back(rng.unit_spinor());
    double previous = overlap(s, p);
    for (int step = 0; step < 50; ++step) {
        p = closest_separable_step(s, p);
        const double now = overlap(s, p);
        CHECK(now >= previous - 1e-14);
        previous = now;
    }
}

TEST_CASE("orthogonal start requests a restart") {
    const PureState ones = PureState::basis(3, 0b111);
    const SeparableProduct zeros = SeparableProduct::uniform(3, Eigen::Vector2cd(1.0, 0.0));
    CHECK_THROWS_AS(closest_separable_step(ones, zeros), RestartRequired);
    CHECK(geometric_entanglement(ones).eta == doctest::Approx(1.0));
}

TEST_CASE("witness reproduces eta and bounds hold") {
    RngStream rng(73);
    for (int n : {4, 7}) {
        const PureState s = haar_random_state(n, rng);
        const GeomResult r = geometric_entanglement(s);
        CHECK(overlap(s, r.witness) == doctest::Approx(r.eta).epsilon(1e-10));
        CHECK(r.e_g <= n - 1 + 1e-9);
        CHECK(r.e_g == doctest::Approx(-std::log2(r.eta)));
    }
    for (int n : {8, 32}) {
        const SymmetricState s = random_symmetric_state(n, rng);
        const GeomResult r = geometric_entanglement_symmetric(s);
        CHECK(r.e_g <= std::log2(n + 1.0) + 1e-9);
        CHECK(symmetric_overlap(s, r.witness.locals[0]) == doctest::Approx(r.eta).epsilon(1e-10));
    }
}

TEST_CASE("symmetric overlap matches the dense overlap") {
    RngStream rng(79);
    const SymmetricState s = random_symmetric_state(5, rng);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::Vector2cd phi = rng.unit_spinor();
        const double dense = overlap(to_dense(s), SeparableProduct::uniform(5, phi));
        CHECK(symmetric_overlap(s, phi) == doctest::Approx(dense).epsilon(1e-12));
    }
    const auto [x, y] = SeparableProduct::uniform(1, Eigen::Vector2cd(std::cos(0.4), std::polar(std::sin(0.4), 1.1))).angles(0);
    CHECK(x == doctest::Approx(0.4));
    CHECK(y == doctest::Approx(1.1));
    CHECK(symmetric_overlap(s, 0.4, 1.1) ==
          doctest::Approx(symmetric_overlap(s, Eigen::Vector2cd(std::cos(0.4), std::polar(std::sin(0.4), 1.1)))));
}

TEST_CASE("xi overlap on the eps = pi/2 line") {
    const double theta = std::numbers::pi / 6.0;
    const GeomResult r = geometric_entanglement_symmetric(xi_state(8, theta, std::numbers::pi / 2.0));
    CHECK(r.e_g == doctest::Approx(-std::log2(std::pow(std::cos(theta), 2))).epsilon(1e-8));
}

TEST_CASE("dense and symmetric engines agree") {
    RngStream rng(83);
    for (int trial = 0; trial < 3; ++trial) {
        const SymmetricState s = random_symmetric_state(6, rng);
        const double sym = geometric_entanglement_symmetric(s).eta;
        const double dense = geometric_entanglement(to_dense(s)).eta;
        CHECK(sym == doctest::Approx(dense).epsilon(1e-7));
    }
}

TEST_CASE("Majorana iteration engine") {
    SymmetricGeomOptions options;
    options.engine = SymmetricEngine::MajoranaIteration;
    CHECK(geometric_entanglement_symmetric(ghz(6), options).eta == doctest::Approx(0.5).epsilon(1e-8));
    RngStream rng(89);
    const SymmetricState s = random_symmetric_state(7, rng);
    const double ascent = geometric_entanglement_symmetric(s).eta;
    const double majorana = geometric_entanglement_symmetric(s, options).eta;
    CHECK(majorana <= ascent + 1e-9);
    CHECK(majorana > 0.0);
}
