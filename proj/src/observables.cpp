#include "macrolab/observables.hpp"

#include <cmath>
#include <cstring>
#include <string>

namespace macrolab {

namespace {

void check_site(const PureState& state, int site) {
    if (site < 0 || site >= state.n_qubits()) {
        throw std::invalid_argument("site " + std::to_string(site) + " out of range for " +
                                    std::to_string(state.n_qubits()) + " qubits");
    }
}

inline std::uint64_t insert_zero(std::uint64_t i, int pos) {
    const std::uint64_t low_mask = (std::uint64_t{1} << pos) - 1;
    return ((i & ~low_mask) << 1) | (i & low_mask);
}

// Levi-Civita symbol on axis indices.
int levi_civita(int a, int b, int c) {
    if (a == b || b == c || a == c) return 0;
    return ((a == 0 && b == 1) || (a == 1 && b == 2) || (a == 2 && b == 0)) ? 1 : -1;
}

// <sigma^g_k sigma^b_j> for k != j, all nine axis pairs in one sweep.
Eigen::Matrix3d pair_products(const Amplitudes& amps, int n, int site_k, int site_j) {
    const int pk = n - 1 - site_k;
    const int pj = n - 1 - site_j;
    const std::uint64_t mk = std::uint64_t{1} << pk;
    const std::uint64_t mj = std::uint64_t{1} << pj;
    const int lo = std::min(pk, pj);
    const int hi = std::max(pk, pj);
    const std::uint64_t quarter = std::uint64_t{1} << (n - 2);

    double zz = 0.0;
    Complex u0 = 0.0, u1 = 0.0, w0 = 0.0, w1 = 0.0, d = 0.0, e = 0.0;
    for (std::uint64_t i = 0; i < quarter; ++i) {
        const std::uint64_t base = insert_zero(insert_zero(i, lo), hi);
        // q[a][b]: a = bit of site k, b = bit of site j
        const Complex q00 = amps[static_cast<Eigen::Index>(base)];
        const Complex q01 = amps[static_cast<Eigen::Index>(base | mj)];
        const Complex q10 = amps[static_cast<Eigen::Index>(base | mk)];
        const Complex q11 = amps[static_cast<Eigen::Index>(base | mk | mj)];
        zz += std::norm(q00) - std::norm(q01) - std::norm(q10) + std::norm(q11);
        u0 += std::conj(q00) * q10;
        u1 += std::conj(q01) * q11;
        w0 += std::conj(q00) * q01;
        w1 += std::conj(q10) * q11;
        d += std::conj(q00) * q11;
        e += std::conj(q01) * q10;
    }
    Eigen::Matrix3d t;
    t(0, 0) = 2.0 * (d.real() + e.real());
    t(1, 1) = 2.0 * (e.real() - d.real());
    t(2, 2) = zz;
    t(0, 1) = 2.0 * (d.imag() - e.imag());
    t(1, 0) = 2.0 * (d.imag() + e.imag());
    t(0, 2) = 2.0 * (u0.real() - u1.real());
    t(1, 2) = 2.0 * (u0.imag() - u1.imag());
    t(2, 0) = 2.0 * (w0.real() - w1.real());
    t(2, 1) = 2.0 * (w0.imag() - w1.imag());
    return t;
}

Eigen::Vector3d site_bloch(const Amplitudes& amps, int n, int site) {
    const int pos = n - 1 - site;
    const std::uint64_t mask = std::uint64_t{1} << pos;
    const std::uint64_t half = std::uint64_t{1} << (n - 1);
    double z = 0.0;
    Complex cross = 0.0;
    for (std::uint64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = insert_zero(i, pos);
        const Complex a0 = amps[static_cast<Eigen::Index>(i0)];
        const Complex a1 = amps[static_cast<Eigen::Index>(i0 | mask)];
        z += std::norm(a0) - std::norm(a1);
        cross += std::conj(a0) * a1;
    }
    return {2.0 * cross.real(), 2.0 * cross.imag(), z};
}

}  // namespace

SpinOrientation::SpinOrientation(std::vector<Eigen::Vector3d> vectors) : vectors_(std::move(vectors)) {
    if (vectors_.empty()) throw std::invalid_argument("SpinOrientation needs at least one site");
    bool unit = true;
    double total = 0.0;
    for (const auto& v : vectors_) {
        if (!v.allFinite()) throw std::invalid_argument("SpinOrientation vectors must be finite");
        const double sq = v.squaredNorm();
        unit = unit && std::abs(sq - 1.0) <= 1e-12;
        total += sq;
    }
    if (unit) {
        mode_ = Mode::Strict;
    } else if (std::abs(total - static_cast<double>(vectors_.size())) <= 1e-9) {
        mode_ = Mode::Relaxed;
    } else {
        throw std::invalid_argument("SpinOrientation must satisfy |alpha_j| = 1 or sum |alpha_j|^2 = N");
    }
}

SpinOrientation SpinOrientation::uniform(int n, const Eigen::Vector3d& direction) {
    if (n < 1) throw std::invalid_argument("SpinOrientation needs at least one site");
    return SpinOrientation(std::vector<Eigen::Vector3d>(n, direction.normalized()));
}

SpinOrientation SpinOrientation::from_flat(const Eigen::VectorXd& flat) {
    if (flat.size() == 0 || flat.size() % 3 != 0) {
        throw std::invalid_argument("flat orientation length must be a positive multiple of 3");
    }
    std::vector<Eigen::Vector3d> v(flat.size() / 3);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = flat.segment<3>(3 * static_cast<Eigen::Index>(j));
    return SpinOrientation(std::move(v));
}

Eigen::VectorXd SpinOrientation::flat() const {
    Eigen::VectorXd out(3 * vectors_.size());
    for (std::size_t j = 0; j < vectors_.size(); ++j) out.segment<3>(3 * static_cast<Eigen::Index>(j)) = vectors_[j];
    return out;
}

double Vcm::quadratic_form(const SpinOrientation& alpha) const {
    if (alpha.size() != n_qubits) throw std::invalid_argument("orientation size does not match VCM");
    const Eigen::VectorXd a = alpha.flat();
    return a.dot(matrix * a);
}

double pauli_expectation(const PureState& state, int site, Axis axis) {
    check_site(state, site);
    return site_bloch(state.amplitudes(), state.n_qubits(), site)[static_cast<int>(axis)];
}

Eigen::MatrixX3d bloch_vectors(const PureState& state) {
    const int n = state.n_qubits();
    Eigen::MatrixX3d r(n, 3);
    for (int k = 0; k < n; ++k) r.row(k) = site_bloch(state.amplitudes(), n, k).transpose();
    return r;
}

Complex pauli_product_expectation(const PureState& state, int site_k, int site_j, Axis g, Axis b) {
    check_site(state, site_k);
    check_site(state, site_j);
    const int gi = static_cast<int>(g);
    const int bi = static_cast<int>(b);
    if (site_k == site_j) {
        if (gi == bi) return 1.0;
        const int c = 3 - gi - bi;
        return Complex(0.0, levi_civita(gi, bi, c) * pauli_expectation(state, site_k, static_cast<Axis>(c)));
    }
    return pair_products(state.amplitudes(), state.n_qubits(), site_k, site_j)(gi, bi);
}

Complex pauli_correlation(const PureState& state, int site_k, int site_j, Axis g, Axis b) {
    return pauli_product_expectation(state, site_k, site_j, g, b) -
           pauli_expectation(state, site_k, g) * pauli_expectation(state, site_j, b);
}

double additive_variance(const PureState& state, const SpinOrientation& alpha) {
    const int n = state.n_qubits();
    if (alpha.size() != n) throw std::invalid_argument("orientation size does not match state");
    const Amplitudes& psi = state.amplitudes();
    Amplitudes phi = Amplitudes::Zero(psi.size());
    const std::uint64_t half = std::uint64_t{1} << (n - 1);
    for (int j = 0; j < n; ++j) {
        const Eigen::Vector3d& a = alpha[j];
        if (a.squaredNorm() == 0.0) continue;
        const Complex down(a.x(), -a.y());  // <0|a.sigma|1>
        const Complex up(a.x(), a.y());     // <1|a.sigma|0>
        const int pos = n - 1 - j;
        const std::uint64_t mask = std::uint64_t{1} << pos;
        for (std::uint64_t i = 0; i < half; ++i) {
            const auto i0 = static_cast<Eigen::Index>(insert_zero(i, pos));
            const auto i1 = static_cast<Eigen::Index>(insert_zero(i, pos) | mask);
            phi[i0] += a.z() * psi[i0] + down * psi[i1];
            phi[i1] += up * psi[i0] - a.z() * psi[i1];
        }
    }
    const double mean = psi.dot(phi).real();
    return std::max(0.0, phi.squaredNorm() - mean * mean);
}

Vcm build_vcm(const PureState& state) {
    const int n = state.n_qubits();
    require_dense(n, "build_vcm");
    const Amplitudes& amps = state.amplitudes();
    const Eigen::MatrixX3d r = bloch_vectors(state);

    Vcm v;
    v.n_qubits = n;
    v.fingerprint = state_fingerprint(state);
    v.matrix = Eigen::MatrixXd::Zero(3 * n, 3 * n);
    v.raw = Eigen::MatrixXcd::Zero(3 * n, 3 * n);
    for (int k = 0; k < n; ++k) {
        const Eigen::Vector3d rk = r.row(k).transpose();
        const Eigen::Matrix3d same = Eigen::Matrix3d::Identity() - rk * rk.transpose();
        v.matrix.block<3, 3>(3 * k, 3 * k) = same;
        for (int g = 0; g < 3; ++g) {
            for (int b = 0; b < 3; ++b) {
                const int c = 3 - g - b;
                const double imag = (g != b && c >= 0 && c < 3) ? levi_civita(g, b, c) * rk[c] : 0.0;
                v.raw(3 * k + g, 3 * k + b) = Complex(same(g, b), imag);
            }
        }
        for (int j = k + 1; j < n; ++j) {
            const Eigen::Vector3d rj = r.row(j).transpose();
            const Eigen::Matrix3d cov = pair_products(amps, n, k, j) - rk * rj.transpose();
            v.matrix.block<3, 3>(3 * k, 3 * j) = cov;
            v.matrix.block<3, 3>(3 * j, 3 * k) = cov.transpose();
            v.raw.block<3, 3>(3 * k, 3 * j) = cov.cast<Complex>();
            v.raw.block<3, 3>(3 * j, 3 * k) = cov.transpose().cast<Complex>();
        }
    }
    return v;
}

namespace {

// S_x c, S_y c, S_z c for collective spins S_a = sum_j sigma^a_j in the Dicke basis.
std::array<Eigen::VectorXcd, 3> collective_images(const SymmetricState& state) {
    const int n = state.n_qubits();
    const Eigen::VectorXcd& c = state.coeffs();
    Eigen::VectorXcd raise = Eigen::VectorXcd::Zero(n + 1);  // sum_j |1><0|_j adds one excitation
    Eigen::VectorXcd lower = Eigen::VectorXcd::Zero(n + 1);
    for (int j = 0; j < n; ++j) {
        const double amp = std::sqrt(static_cast<double>(j + 1) * (n - j));
        raise[j + 1] = amp * c[j];
        lower[j] = amp * c[j + 1];
    }
    Eigen::VectorXcd sz(n + 1);
    for (int j = 0; j <= n; ++j) sz[j] = static_cast<double>(n - 2 * j) * c[j];
    const Complex i(0.0, 1.0);
    return {raise + lower, i * raise - i * lower, sz};
}

}  // namespace

Eigen::Vector3d symmetric_bloch_vector(const SymmetricState& state) {
    const auto images = collective_images(state);
    Eigen::Vector3d r;
    for (int a = 0; a < 3; ++a) r[a] = state.coeffs().dot(images[a]).real() / state.n_qubits();
    return r;
}

Eigen::Matrix3d symmetric_two_site(const SymmetricState& state) {
    const int n = state.n_qubits();
    if (n < 2) throw std::invalid_argument("two-site expectations need n >= 2");
    const auto images = collective_images(state);
    Eigen::Matrix3d t;
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            // <S_a S_b> = N delta_ab + i N eps_abc <sigma^c> + N(N-1) <sigma^a_1 sigma^b_2>
            const double second = images[a].dot(images[b]).real();
            t(a, b) = (second - (a == b ? n : 0.0)) / (static_cast<double>(n) * (n - 1));
        }
    }
    return 0.5 * (t + t.transpose());
}

SymmetricVcm build_symmetric_vcm(const SymmetricState& state) {
    const int n = state.n_qubits();
    const Eigen::Vector3d r = symmetric_bloch_vector(state);
    SymmetricVcm v;
    v.n_qubits = n;
    v.a_block = Eigen::Matrix3d::Identity() - r * r.transpose();
    v.b_block = n >= 2 ? Eigen::Matrix3d(symmetric_two_site(state) - r * r.transpose())
                       : Eigen::Matrix3d::Zero();
    v.v_sym = v.a_block + (n - 1) * v.b_block;
    v.v_sym = 0.5 * (v.v_sym + v.v_sym.transpose()).eval();
    return v;
}

std::uint64_t state_fingerprint(const PureState& state) {
    std::uint64_t hash = 14695981039346656037ULL;
    const auto* bytes = reinterpret_cast<const unsigned char*>(state.amplitudes().data());
    const std::size_t count = static_cast<std::size_t>(state.amplitudes().size()) * sizeof(Complex);
    for (std::size_t i = 0; i < count; ++i) {
        hash ^= bytes[i];
        hash *= 1099511628211ULL;
    }
    return hash;
}

}  // namespace macrolab
