#include "macrolab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "macrolab/macroscopicity.hpp"
#include "macrolab/observables.hpp"

namespace macrolab {

namespace {

constexpr double kAngleTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kAngleTol; }

// Number of (S, -S) pairs, or of S = 0 states, available at spin label `s`.
double slots(int n, BoundMode mode, int s) {
    if (mode == BoundMode::Symmetric) return 1.0;
    return binomial(n, (n + s) / 2);
}

}  // namespace

double xi_macroscopicity_analytic(int n, double theta, double epsilon) {
    if (n < 2) throw std::invalid_argument("xi_macroscopicity_analytic requires n >= 2");
    const double nn = static_cast<double>(n);
    if (near(epsilon, std::numbers::pi / 2.0)) {
        const double s = std::sin(2.0 * theta);
        return std::sqrt((std::max(1.0, nn * s * s) - 1.0) / (nn - 1.0));
    }
    if (near(theta, std::numbers::pi / 4.0)) {
        const double s = std::sin(epsilon);
        return std::sqrt(s * s / (1.0 + std::pow(std::cos(epsilon), nn)));
    }
    const SymmetricVcm v = build_symmetric_vcm(xi_state(n, theta, epsilon));
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(v.v_sym, Eigen::EigenvaluesOnly);
    const double m_tilde = nn * solver.eigenvalues()[2];
    return normalize(std::clamp(m_tilde, nn, nn * nn), n);
}

double xi_geometric_analytic(int /*n*/, double theta) {
    const double c = std::cos(theta);
    return -std::log2(c * c);
}

const char* bound_mode_name(BoundMode mode) { return mode == BoundMode::General ? "general" : "symmetric"; }

double EtaMaxSpec::total_weight() const {
    double total = 0.0;
    for (const auto& p : filled_pairs) total += (p.label == 0 ? 1.0 : 2.0) * static_cast<double>(p.count) * p.weight;
    return total;
}

double eta_min(int n, BoundMode mode) {
    if (n < 1) throw std::invalid_argument("eta_min requires n >= 1");
    return mode == BoundMode::General ? std::ldexp(1.0, -n) : 1.0 / (n + 1.0);
}

EtaMaxSpec make_eta_max_spec(int n, double eta, BoundMode mode) {
    if (n < 2) throw std::invalid_argument("eta_max_bound requires n >= 2");
    if (!(eta > 0.0) || eta > 0.5 + 1e-15) throw std::invalid_argument("eta must lie in (0, 1/2]");
    if (eta * (1.0 + 1e-12) < eta_min(n, mode)) {
        throw std::invalid_argument("eta is too small to hold a normalised state of this size and mode");
    }
    EtaMaxSpec spec{.n = n, .eta = std::min(eta, 0.5), .mode = mode, .filled_pairs = {}};
    double remaining = 1.0;
    for (int s = n; s >= 0 && remaining > 1e-15; s -= 2) {
        const double per_slot = s == 0 ? spec.eta : 2.0 * spec.eta;
        const double available = slots(n, mode, s);
        const double full = std::min(available, std::floor(remaining / per_slot * (1.0 + 1e-12)));
        if (full > 0.0) {
            spec.filled_pairs.push_back({s, static_cast<long long>(full), spec.eta});
            remaining -= full * per_slot;
        }
        if (remaining > 1e-15 && full < available) {
            spec.filled_pairs.push_back({s, 1, remaining / (s == 0 ? 1.0 : 2.0)});
            remaining = 0.0;
        }
    }
    if (remaining > 1e-12) throw std::invalid_argument("eta is too small to hold a normalised state");
    return spec;
}

EtaMaxBound eta_max_bound(const EtaMaxSpec& spec) {
    double m_tilde = 0.0;
    for (const auto& p : spec.filled_pairs) {
        const double s = static_cast<double>(p.label);
        m_tilde += 2.0 * static_cast<double>(p.count) * p.weight * s * s;
    }
    const double nn = static_cast<double>(spec.n);
    m_tilde = std::clamp(m_tilde, nn, nn * nn);
    return {.m_tilde = m_tilde, .m_norm = normalize(m_tilde, spec.n)};
}

EtaMaxBound eta_max_bound(int n, double eta, BoundMode mode) { return eta_max_bound(make_eta_max_spec(n, eta, mode)); }

SymmetricState realize_symmetric(const EtaMaxSpec& spec) {
    if (spec.mode != BoundMode::Symmetric) throw std::invalid_argument("realize_symmetric needs a symmetric spec");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(spec.n + 1);
    for (const auto& p : spec.filled_pairs) {
        const int k = (spec.n - p.label) / 2;
        c[k] = std::sqrt(p.weight);
        c[spec.n - k] = std::sqrt(p.weight);
    }
    return SymmetricState(spec.n, std::move(c));
}

std::vector<double> eta_grid(int n, BoundMode mode, int count) {
    if (count < 2) throw std::invalid_argument("eta grid needs at least two points");
    const double lo = std::log(eta_min(n, mode));
    const double hi = std::log(0.5);
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i) grid[i] = std::exp(hi + (lo - hi) * i / (count - 1.0));
    grid.front() = 0.5;
    grid.back() = eta_min(n, mode);
    return grid;
}

}  // namespace macrolab
