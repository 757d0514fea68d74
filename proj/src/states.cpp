#include "macrolab/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

namespace macrolab {

namespace {

constexpr double kNormTolerance = 1e-12;

double ipow(double base, int exponent) {
    double result = 1.0;
    for (int i = 0; i < exponent; ++i) result *= base;
    return result;
}

Complex ipow(Complex base, int exponent) {
    Complex result = 1.0;
    for (int i = 0; i < exponent; ++i) result *= base;
    return result;
}

// Index with zero bits inserted at bit positions lo < hi.
inline std::uint64_t insert_two_zeros(std::uint64_t i, int lo, int hi) {
    const std::uint64_t low_mask = (std::uint64_t{1} << lo) - 1;
    i = ((i & ~low_mask) << 1) | (i & low_mask);
    const std::uint64_t high_mask = (std::uint64_t{1} << hi) - 1;
    return ((i & ~high_mask) << 1) | (i & high_mask);
}

inline std::uint64_t insert_zero(std::uint64_t i, int pos) {
    const std::uint64_t low_mask = (std::uint64_t{1} << pos) - 1;
    return ((i & ~low_mask) << 1) | (i & low_mask);
}

void check_site(int n_qubits, int site) {
    if (site < 0 || site >= n_qubits) {
        throw std::invalid_argument("site " + std::to_string(site) + " out of range for " +
                                    std::to_string(n_qubits) + " qubits");
    }
}

Eigen::Vector2cd canonical_point(Eigen::Vector2cd v) {
    v.normalize();
    const double a = std::abs(v[0]);
    if (a > 0.0) v *= std::conj(v[0]) / a;
    else v[1] = std::abs(v[1]);
    v[0] = v[0].real();
    return v;
}

}  // namespace

PureState::PureState(int n_qubits, Amplitudes amplitudes) : n_qubits_(n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("a pure state needs at least one qubit");
    require_dense(n_qubits, "PureState");
    if (static_cast<std::uint64_t>(amplitudes.size()) != (std::uint64_t{1} << n_qubits)) {
        throw std::invalid_argument("amplitude vector length must be 2^n");
    }
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("amplitude vector must be finite and non-zero");
    }
    amplitudes_ = std::move(amplitudes);
    if (std::abs(norm - 1.0) > 0.0) amplitudes_ /= norm;
}

PureState PureState::basis(int n_qubits, std::uint64_t index) {
    if (n_qubits < 1) throw std::invalid_argument("a pure state needs at least one qubit");
    require_dense(n_qubits, "PureState::basis");
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    if (index >= dim) throw std::invalid_argument("basis index out of range");
    Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(dim));
    amps[static_cast<Eigen::Index>(index)] = 1.0;
    return PureState(n_qubits, std::move(amps));
}

PureState PureState::product(std::span<const Eigen::Vector2cd> locals) {
    const int n = static_cast<int>(locals.size());
    if (n < 1) throw std::invalid_argument("product of zero qubits");
    require_dense(n, "PureState::product");
    Amplitudes amps(1);
    amps[0] = 1.0;
    for (const auto& local : locals) {
        const double norm = local.norm();
        if (!(norm > 0.0)) throw std::invalid_argument("zero local state");
        const Eigen::Vector2cd u = local / norm;
        Amplitudes next(amps.size() * 2);
        for (Eigen::Index i = 0; i < amps.size(); ++i) {
            next[2 * i] = amps[i] * u[0];
            next[2 * i + 1] = amps[i] * u[1];
        }
        amps = std::move(next);
    }
    return PureState(n, std::move(amps));
}

SymmetricState::SymmetricState(int n_qubits, Eigen::VectorXcd dicke_coeffs) : n_qubits_(n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("a symmetric state needs at least one qubit");
    if (dicke_coeffs.size() != n_qubits + 1) {
        throw std::invalid_argument("Dicke coefficient vector length must be n+1");
    }
    const double norm = dicke_coeffs.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw std::invalid_argument("Dicke coefficients must be finite and non-zero");
    }
    coeffs_ = std::move(dicke_coeffs) / norm;
}

SymmetricState ghz(int n) {
    if (n < 2) throw std::invalid_argument("ghz requires n >= 2");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n + 1);
    c[0] = c[n] = std::numbers::sqrt2 / 2.0;
    return SymmetricState(n, std::move(c));
}

SymmetricState dicke(int n, int j) {
    if (n < 1) throw std::invalid_argument("dicke requires n >= 1");
    if (j < 0 || j > n) throw std::invalid_argument("dicke excitation number out of range");
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n + 1);
    c[j] = 1.0;
    return SymmetricState(n, std::move(c));
}

SymmetricState xi_state(int n, double theta, double epsilon) {
    if (n < 1) throw std::invalid_argument("xi_state requires n >= 1");
    if (!std::isfinite(theta) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("xi_state parameters must be finite");
    }
    constexpr double slack = 1e-12;
    if (theta < -slack || theta > std::numbers::pi / 4 + slack || epsilon < -slack ||
        epsilon > std::numbers::pi + slack) {
        throw std::invalid_argument("xi_state requires theta in [0, pi/4] and epsilon in [0, pi]");
    }
    const double ce = std::cos(epsilon);
    const double se = std::sin(epsilon);
    Eigen::VectorXcd c(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double weight = std::exp(0.5 * log_binomial(n, j));
        c[j] = std::sin(theta) * weight * ipow(ce, n - j) * ipow(se, j);
    }
    c[0] += std::cos(theta);
    return SymmetricState(n, std::move(c));
}

SymmetricState symmetric_product(int n, double x, double y) {
    if (n < 1) throw std::invalid_argument("symmetric_product requires n >= 1");
    const double cx = std::cos(x);
    const Complex sx = std::polar(1.0, y) * std::sin(x);
    Eigen::VectorXcd c(n + 1);
    for (int j = 0; j <= n; ++j) {
        c[j] = std::exp(0.5 * log_binomial(n, j)) * ipow(cx, n - j) * ipow(sx, j);
    }
    return SymmetricState(n, std::move(c));
}

PureState tensor(const PureState& a, const PureState& b) {
    const int n = a.n_qubits() + b.n_qubits();
    require_dense(n, "tensor");
    const auto& x = a.amplitudes();
    const auto& y = b.amplitudes();
    Amplitudes out(x.size() * y.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        out.segment(i * y.size(), y.size()) = x[i] * y;
    }
    return PureState(n, std::move(out));
}

PureState to_dense(const SymmetricState& s) {
    const int n = s.n_qubits();
    require_dense(n, "to_dense");
    std::vector<Complex> per_weight(n + 1);
    for (int j = 0; j <= n; ++j) {
        per_weight[j] = s.coeff(j) * std::exp(-0.5 * log_binomial(n, j));
    }
    const std::uint64_t dim = std::uint64_t{1} << n;
    Amplitudes amps(static_cast<Eigen::Index>(dim));
    for (std::uint64_t b = 0; b < dim; ++b) {
        amps[static_cast<Eigen::Index>(b)] = per_weight[std::popcount(b)];
    }
    return PureState(n, std::move(amps));
}

MajoranaPoints majorana_points(const SymmetricState& s) {
    const int n = s.n_qubits();
    // P(z) = sum_j c_j binom(n,j)^{1/2} z^j = prod_k (a_k + b_k z) for points a_k|0> + b_k|1>.
    std::vector<Complex> p(n + 1);
    double largest = 0.0;
    for (int j = 0; j <= n; ++j) {
        p[j] = s.coeff(j) * std::exp(0.5 * log_binomial(n, j));
        largest = std::max(largest, std::abs(p[j]));
    }
    if (!(largest > 0.0)) throw std::invalid_argument("majorana_points of a zero state");
    const double zero_cut = 1e-14 * largest;

    int top = n;
    while (top > 0 && std::abs(p[top]) <= zero_cut) --top;
    int bottom = 0;
    while (bottom < top && std::abs(p[bottom]) <= zero_cut) ++bottom;

    MajoranaPoints out;
    out.pole_count = n - top;
    // Vanishing top coefficients: some b_k = 0, i.e. a point at |0>.
    for (int i = 0; i < out.pole_count; ++i) out.points.emplace_back(1.0, 0.0);
    // Vanishing low coefficients: roots at z = 0, i.e. a point at |1>.
    for (int i = 0; i < bottom; ++i) out.points.emplace_back(0.0, 1.0);

    const int degree = top - bottom;
    if (degree > 0) {
        // Rescale z = rho w so the reduced polynomial has balanced end coefficients.
        const double rho = std::pow(std::abs(p[bottom]) / std::abs(p[top]), 1.0 / degree);
        std::vector<Complex> q(degree + 1);
        for (int j = 0; j <= degree; ++j) q[j] = p[bottom + j] * std::pow(rho, j);
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
        for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
        for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -q[i] / q[degree];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        if (solver.info() != Eigen::Success) {
            throw std::runtime_error("majorana_points: companion eigensolver failed");
        }
        for (int r = 0; r < degree; ++r) {
            Complex w = solver.eigenvalues()[r];
            // Newton polish on the balanced polynomial.
            for (int it = 0; it < 3; ++it) {
                Complex value = q[degree];
                Complex slope = 0.0;
                for (int j = degree - 1; j >= 0; --j) {
                    slope = slope * w + value;
                    value = value * w + q[j];
                }
                if (std::abs(slope) == 0.0) break;
                const Complex next = w - value / slope;
                if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
                w = next;
            }
            const Complex z = rho * w;
            // a + b z = 0 with the point proportional to (-z, 1).
            out.points.push_back(canonical_point(Eigen::Vector2cd(-z, 1.0)));
        }
    }
    return out;
}

SymmetricState from_majorana(std::span<const Eigen::Vector2cd> points) {
    const int n = static_cast<int>(points.size());
    if (n < 1) throw std::invalid_argument("from_majorana needs at least one point");
    // Elementary symmetric sums: prod_k (a_k + b_k t) = sum_j e_j t^j.
    std::vector<Complex> e{1.0};
    for (const auto& pt : points) {
        const Eigen::Vector2cd u = pt.normalized();
        std::vector<Complex> next(e.size() + 1, 0.0);
        for (std::size_t j = 0; j < e.size(); ++j) {
            next[j] += e[j] * u[0];
            next[j + 1] += e[j] * u[1];
        }
        e = std::move(next);
    }
    Eigen::VectorXcd c(n + 1);
    for (int j = 0; j <= n; ++j) c[j] = e[j] * std::exp(-0.5 * log_binomial(n, j));
    return SymmetricState(n, std::move(c));
}

PureState bell_psi_minus() {
    Amplitudes a = Amplitudes::Zero(4);
    a[1] = std::numbers::sqrt2 / 2.0;
    a[2] = -std::numbers::sqrt2 / 2.0;
    return PureState(2, std::move(a));
}

PureState bell_psi_plus() {
    Amplitudes a = Amplitudes::Zero(4);
    a[1] = a[2] = std::numbers::sqrt2 / 2.0;
    return PureState(2, std::move(a));
}

PureState bell_product(int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("bell_product requires even n >= 2");
    require_dense(n, "bell_product");
    PureState state = bell_psi_minus();
    for (int i = 2; i < n; i += 2) state = tensor(state, bell_psi_minus());
    return state;
}

PureState ghz_ones(int n1, int n2) {
    if (n1 < 2 || n2 < 0) throw std::invalid_argument("ghz_ones requires n1 >= 2 and n2 >= 0");
    require_dense(n1 + n2, "ghz_ones");
    PureState state = to_dense(ghz(n1));
    if (n2 > 0) state = tensor(state, PureState::basis(n2, (std::uint64_t{1} << n2) - 1));
    return state;
}

PureState phi_c(int n) {
    if (n < 3) throw std::invalid_argument("phi_c requires n >= 3");
    require_dense(n, "phi_c");
    return tensor(bell_psi_plus(), PureState::zeros(n - 2));
}

double fidelity(const PureState& a, const PureState& b) {
    if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("fidelity: qubit count mismatch");
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double fidelity(const SymmetricState& a, const SymmetricState& b) {
    if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("fidelity: qubit count mismatch");
    return std::norm(a.coeffs().dot(b.coeffs()));
}

PureState permute_qubits(const PureState& s, std::span<const int> perm) {
    const int n = s.n_qubits();
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation size mismatch");
    std::vector<bool> seen(n, false);
    for (int target : perm) {
        if (target < 0 || target >= n || seen[target]) throw std::invalid_argument("not a permutation");
        seen[target] = true;
    }
    const std::uint64_t dim = s.dim();
    Amplitudes out(static_cast<Eigen::Index>(dim));
    for (std::uint64_t b = 0; b < dim; ++b) {
        std::uint64_t moved = 0;
        for (int j = 0; j < n; ++j) {
            if (b & site_mask(n, j)) moved |= site_mask(n, perm[j]);
        }
        out[static_cast<Eigen::Index>(moved)] = s.amplitude(b);
    }
    return PureState(n, std::move(out));
}

void apply_single_qubit(Amplitudes& amps, int n_qubits, int site, const Eigen::Matrix2cd& u) {
    check_site(n_qubits, site);
    const int pos = n_qubits - 1 - site;
    const std::uint64_t mask = std::uint64_t{1} << pos;
    const std::uint64_t half = std::uint64_t{1} << (n_qubits - 1);
    for (std::uint64_t i = 0; i < half; ++i) {
        const auto i0 = static_cast<Eigen::Index>(insert_zero(i, pos));
        const auto i1 = static_cast<Eigen::Index>(insert_zero(i, pos) | mask);
        const Complex a0 = amps[i0];
        const Complex a1 = amps[i1];
        amps[i0] = u(0, 0) * a0 + u(0, 1) * a1;
        amps[i1] = u(1, 0) * a0 + u(1, 1) * a1;
    }
}

void apply_two_qubit(Amplitudes& amps, int n_qubits, int site_a, int site_b, const Eigen::Matrix4cd& u) {
    check_site(n_qubits, site_a);
    check_site(n_qubits, site_b);
    if (site_a == site_b) throw std::invalid_argument("two-qubit gate on a single site");
    const int pa = n_qubits - 1 - site_a;
    const int pb = n_qubits - 1 - site_b;
    const std::uint64_t ma = std::uint64_t{1} << pa;
    const std::uint64_t mb = std::uint64_t{1} << pb;
    const int lo = std::min(pa, pb);
    const int hi = std::max(pa, pb);
    const std::uint64_t quarter = std::uint64_t{1} << (n_qubits - 2);
    for (std::uint64_t i = 0; i < quarter; ++i) {
        const std::uint64_t base = insert_two_zeros(i, lo, hi);
        const Eigen::Index idx[4] = {static_cast<Eigen::Index>(base), static_cast<Eigen::Index>(base | mb),
                                     static_cast<Eigen::Index>(base | ma),
                                     static_cast<Eigen::Index>(base | ma | mb)};
        const Complex in[4] = {amps[idx[0]], amps[idx[1]], amps[idx[2]], amps[idx[3]]};
        for (int r = 0; r < 4; ++r) {
            amps[idx[r]] = u(r, 0) * in[0] + u(r, 1) * in[1] + u(r, 2) * in[2] + u(r, 3) * in[3];
        }
    }
}

PureState apply_single_qubit(const PureState& s, int site, const Eigen::Matrix2cd& u) {
    Amplitudes amps = s.amplitudes();
    apply_single_qubit(amps, s.n_qubits(), site, u);
    return PureState(s.n_qubits(), std::move(amps));
}

}  // namespace macrolab
