#include <doctest.h>

#include <cmath>

#include "macrolab/ensembles.hpp"
#include "macrolab/macroscopicity.hpp"
#include "oracles.hpp"

using namespace macrolab;

TEST_CASE("GHZ reaches N^2 in both engines") {
    for (int n : {2, 4, 8}) {
        const MacroResult dense = macroscopicity_exact(to_dense(ghz(n)));
        CHECK(dense.m_tilde == doctest::Approx(n * n).epsilon(1e-9));
        CHECK(dense.m_norm == doctest::Approx(1.0).epsilon(1e-9));
        const MacroResult sym = macroscopicity_symmetric(ghz(n));
        CHECK(sym.m_tilde == doctest::Approx(n * n).epsilon(1e-12));
    }
}

TEST_CASE("product state has the minimal value") {
    for (int n = 2; n <= 6; ++n) {
        const MacroResult r = macroscopicity_exact(PureState::zeros(n));
        CHECK(r.m_tilde == doctest::Approx(n).epsilon(1e-9));
        CHECK(r.m_norm == doctest::Approx(0.0));
    }
}

TEST_CASE("singlet products and the VCM gap") {
    const MacroResult b = macroscopicity_exact(bell_product(4), 32, 1e-12);
    CHECK(b.m_tilde == doctest::Approx(8.0).epsilon(1e-6));
    CHECK(b.m_norm == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-6));
    const PureState pc = phi_c(4);
    CHECK(macroscopicity_exact(pc).m_tilde == doctest::Approx(6.0).epsilon(1e-6));
    CHECK(vcm_upper_bound(build_vcm(pc)).bound == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("bracket containment and range") {
    RngStream rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        const int n = 3 + trial % 4;
        const PureState s = random_physical_state(n, 2 * n, rng);
        const MacroResult r = macroscopicity_exact(s);
        CHECK(r.lower_bound <= r.m_tilde + 1e-12);
        CHECK(r.m_tilde <= r.upper_bound + 1e-12);
        CHECK(r.m_tilde >= n - 1e-9);
        CHECK(r.m_tilde <= n * n + 1e-9);
        CHECK(r.optimal_alpha.strict());
        CHECK(additive_variance(s, r.optimal_alpha) == doctest::Approx(r.m_tilde).epsilon(1e-8));
        const MacroResult br = macroscopicity_bracket(s, build_vcm(s));
        CHECK(br.lower_bound <= r.m_tilde + 1e-9);
        CHECK(br.upper_bound == doctest::Approx(r.upper_bound));
    }
}

TEST_CASE("brute-force oracle agreement for two and three qubits") {
    RngStream rng(41);
    for (int trial = 0; trial < 4; ++trial) {
        for (int n : {2, 3}) {
            const PureState s = haar_random_state(n, rng);
            const double ref = oracle::max_variance(s.amplitudes(), n);
            CHECK(macroscopicity_exact(s).m_tilde == doctest::Approx(ref).epsilon(1e-6));
        }
    }
}

TEST_CASE("local unitaries leave the maximal variance unchanged") {
    RngStream rng(43);
    const int n = 5;
    const PureState s = random_physical_state(n, 12, rng);
    PureState rotated = s;
    for (int j = 0; j < n; ++j) rotated = apply_single_qubit(rotated, j, random_single_qubit_unitary(rng));
    CHECK(macroscopicity_exact(rotated).m_tilde == doctest::Approx(macroscopicity_exact(s).m_tilde).epsilon(1e-7));
}

TEST_CASE("additivity over tensor products") {
    RngStream rng(47);
    const PureState a = haar_random_state(3, rng);
    const PureState b = haar_random_state(2, rng);
    const double sum = macroscopicity_exact(a).m_tilde + macroscopicity_exact(b).m_tilde;
    CHECK(macroscopicity_exact(tensor(a, b)).m_tilde == doctest::Approx(sum).epsilon(1e-7));
    CHECK(macroscopicity_exact(ghz_ones(3, 2)).m_tilde == doctest::Approx(11.0).epsilon(1e-7));
}

TEST_CASE("normalisation") {
    CHECK(normalize(16.0, 4) == doctest::Approx(1.0));
    CHECK(normalize(4.0, 4) == 0.0);
    CHECK(normalize(4.0 - 1e-12, 4) == 0.0);
    CHECK_THROWS_AS(normalize(3.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(normalize(17.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(normalize(5.0, 1), std::invalid_argument);
}

TEST_CASE("index p") {
    const IndexPEstimate g = estimate_index_p_symmetric([](int n) { return ghz(n); }, {4, 8, 16, 32});
    CHECK(g.p == doctest::Approx(2.0).epsilon(1e-9));
    const IndexPEstimate p = estimate_index_p([](int n) { return PureState::zeros(n); }, {3, 4, 5});
    CHECK(p.p == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(fit_index_p({2, 3}, {1.0, 2.0}), std::invalid_argument);
}
