#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "macrolab/ensembles.hpp"
#include "macrolab/observables.hpp"

using namespace macrolab;

TEST_CASE("random unitaries are unitary") {
    RngStream rng(101);
    for (int dim : {2, 4, 8}) {
        const Eigen::MatrixXcd u = random_unitary(dim, rng);
        CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(dim, dim)).norm() < 1e-12);
    }
}

TEST_CASE("streams are reproducible") {
    RngStream a(5), b(5);
    CHECK(haar_random_state(5, a).amplitudes() == haar_random_state(5, b).amplitudes());
    RngStream c(5), d(5);
    CHECK(random_physical_state(5, 20, c).amplitudes() == random_physical_state(5, 20, d).amplitudes());
    CHECK(RngStream::derive(1, 2, 3) != RngStream::derive(1, 2, 4));
    CHECK(RngStream::derive(1, 2, 3) == RngStream::derive(1, 2, 3));
}

TEST_CASE("uniform and normal draws") {
    RngStream rng(7);
    double sum = 0.0, sq = 0.0;
    const int count = 20000;
    for (int i = 0; i < count; ++i) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double z = rng.normal();
        sum += z;
        sq += z * z;
    }
    CHECK(std::abs(sum / count) < 0.05);
    CHECK(std::abs(sq / count - 1.0) < 0.05);
    for (int i = 0; i < 100; ++i) CHECK(rng.below(7) < 7u);
}

TEST_CASE("gate counts") {
    RngStream rng(9);
    CHECK(random_physical_state(4, 0, rng).amplitude(0) == Complex(1.0));
    const PureState chain = random_linear_chain(6, 2, rng);
    for (int site = 3; site < 6; ++site) CHECK(pauli_expectation(chain, site, Axis::Z) == doctest::Approx(1.0));
    CHECK_THROWS_AS(random_linear_chain(4, 4, rng), std::invalid_argument);
    CHECK_THROWS_AS(random_physical_state(1, 3, rng), std::invalid_argument);
    const PureState any = random_physical_state(5, 30, rng, PairSelection::AnyPair);
    CHECK(any.amplitudes().norm() == doctest::Approx(1.0));
}

TEST_CASE("Haar first amplitude follows Beta(1, 15)") {
    // One-sample Kolmogorov-Smirnov test of |a_0|^2 at N = 4.
    RngStream rng(2024);
    const int count = 2000;
    std::vector<double> x;
    for (int i = 0; i < count; ++i) x.push_back(std::norm(haar_random_state(4, rng).amplitude(0)));
    std::sort(x.begin(), x.end());
    double d = 0.0;
    for (int i = 0; i < count; ++i) {
        const double cdf = 1.0 - std::pow(1.0 - x[i], 15.0);
        d = std::max({d, std::abs(cdf - static_cast<double>(i) / count), std::abs(cdf - static_cast<double>(i + 1) / count)});
    }
    CHECK(d < 1.628 / std::sqrt(static_cast<double>(count)));
}

TEST_CASE("random symmetric states") {
    RngStream rng(13);
    const SymmetricState s = random_symmetric_state(40, rng);
    CHECK(s.n_qubits() == 40);
    CHECK(s.coeffs().norm() == doctest::Approx(1.0));
}
