#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "macrolab/extremal.hpp"
#include "macrolab/macroscopicity.hpp"

using namespace macrolab;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("xi closed forms") {
    for (int n : {3, 9, 24}) CHECK(xi_macroscopicity_analytic(n, kPi / 4.0, kPi / 2.0) == doctest::Approx(1.0));
    CHECK(xi_macroscopicity_analytic(9, 0.5 * std::asin(1.0 / 3.0), kPi / 2.0) == doctest::Approx(0.0));
    CHECK(xi_macroscopicity_analytic(24, kPi / 4.0, kPi / 3.0) ==
          doctest::Approx(std::sqrt(0.75 / (1.0 + std::pow(0.5, 24)))).epsilon(1e-14));
    CHECK(xi_geometric_analytic(5, kPi / 4.0) == doctest::Approx(1.0));
    CHECK(xi_geometric_analytic(5, 0.0) == doctest::Approx(0.0));
    CHECK(xi_geometric_analytic(5, kPi / 6.0) == doctest::Approx(-std::log2(0.75)));
}

TEST_CASE("xi closed forms against the symmetric VCM") {
    for (int n : {4, 8}) {
        for (double t : {0.1, 0.4, 0.7}) {
            const double theta = t * kPi / 4.0;
            const double m = macroscopicity_symmetric(xi_state(n, theta, kPi / 2.0)).m_norm;
            CHECK(m == doctest::Approx(xi_macroscopicity_analytic(n, theta, kPi / 2.0)).epsilon(1e-7));
            const double eps = t * kPi;
            const double m2 = macroscopicity_symmetric(xi_state(n, kPi / 4.0, eps)).m_norm;
            CHECK(m2 == doctest::Approx(xi_macroscopicity_analytic(n, kPi / 4.0, eps)).epsilon(1e-9));
        }
    }
    const double general = xi_macroscopicity_analytic(6, 0.3, 1.0);
    CHECK(general == doctest::Approx(macroscopicity_symmetric(xi_state(6, 0.3, 1.0)).m_norm));
}

TEST_CASE("bound landmarks") {
    for (BoundMode mode : {BoundMode::General, BoundMode::Symmetric}) {
        for (int n : {3, 7, 30}) CHECK(eta_max_bound(n, 0.5, mode).m_norm == doctest::Approx(1.0));
    }
    const EtaMaxBound b = eta_max_bound(4, 0.25, BoundMode::General);
    CHECK(b.m_tilde == doctest::Approx(10.0));
    CHECK(b.m_norm == doctest::Approx(std::sqrt(0.5)));
    CHECK(std::abs(eta_max_bound(400, 1.0 / 401.0, BoundMode::Symmetric).m_norm - 1.0 / std::sqrt(3.0)) < 0.01);
    CHECK_THROWS_AS(eta_max_bound(4, 0.6, BoundMode::General), std::invalid_argument);
    CHECK_THROWS_AS(eta_max_bound(4, 0.1, BoundMode::Symmetric), std::invalid_argument);
    CHECK_NOTHROW(eta_max_bound(4, 0.2, BoundMode::Symmetric));
    CHECK_NOTHROW(eta_max_bound(4, 1.0 / 16.0, BoundMode::General));
}

TEST_CASE("spec invariants") {
    for (BoundMode mode : {BoundMode::General, BoundMode::Symmetric}) {
        for (int n : {3, 6, 11}) {
            for (double eta : eta_grid(n, mode, 17)) {
                const EtaMaxSpec spec = make_eta_max_spec(n, eta, mode);
                CHECK(spec.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
                int last = n + 1;
                for (const auto& p : spec.filled_pairs) {
                    CHECK(p.weight <= eta + 1e-12);
                    CHECK(p.label <= last);
                    last = p.label;
                }
            }
        }
    }
}

TEST_CASE("dominance, coincidence and monotonicity") {
    for (int n : {3, 6, 10, 20, 30}) {
        double prev_general = 1e300, prev_sym = 1e300;
        for (int p = 1; p <= 10; ++p) {
            const double eta = std::ldexp(1.0, -p);
            if (eta < eta_min(n, BoundMode::General)) continue;
            const double general = eta_max_bound(n, eta, BoundMode::General).m_tilde;
            CHECK(general <= prev_general + 1e-9);
            prev_general = general;
            if (eta < eta_min(n, BoundMode::Symmetric)) continue;
            const double sym = eta_max_bound(n, eta, BoundMode::Symmetric).m_tilde;
            CHECK(sym <= general + 1e-9);
            CHECK(sym <= prev_sym + 1e-9);
            prev_sym = sym;
            if (n == 3) CHECK(sym == doctest::Approx(general));
        }
    }
}

TEST_CASE("symmetric spec realised as a state") {
    for (int n : {5, 12, 40}) {
        for (double eta : {0.5, 0.3, 0.11, 1.0 / (n + 1.0)}) {
            if (eta < eta_min(n, BoundMode::Symmetric)) continue;
            const EtaMaxSpec spec = make_eta_max_spec(n, eta, BoundMode::Symmetric);
            const SymmetricState s = realize_symmetric(spec);
            CHECK(macroscopicity_symmetric(s).m_tilde == doctest::Approx(eta_max_bound(spec).m_tilde).epsilon(1e-9));
            double largest_weight = 0.0;
            for (const auto& p : spec.filled_pairs) largest_weight = std::max(largest_weight, p.weight);
            CHECK(s.coeffs().cwiseAbs2().maxCoeff() == doctest::Approx(largest_weight).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(realize_symmetric(make_eta_max_spec(4, 0.3, BoundMode::General)), std::invalid_argument);
}

TEST_CASE("eta grid") {
    const auto grid = eta_grid(20, BoundMode::Symmetric, 64);
    CHECK(grid.size() == 64u);
    CHECK(grid.front() == 0.5);
    CHECK(grid.back() == doctest::Approx(1.0 / 21.0));
    CHECK(std::is_sorted(grid.rbegin(), grid.rend()));
}
