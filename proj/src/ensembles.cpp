#include "macrolab/ensembles.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/QR>

namespace macrolab {

double RngStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t RngStream::below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RngStream::below(0)");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_normal_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

Complex RngStream::complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
}

Eigen::Vector3d RngStream::unit_vector3() {
    Eigen::Vector3d v;
    do {
        v = {normal(), normal(), normal()};
    } while (v.squaredNorm() < 1e-24);
    return v.normalized();
}

Eigen::Vector2cd RngStream::unit_spinor() {
    Eigen::Vector2cd v;
    do {
        v = {complex_normal(), complex_normal()};
    } while (v.squaredNorm() < 1e-24);
    return v.normalized();
}

std::uint64_t RngStream::derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(seed) ^ a) ^ b);
}

Eigen::MatrixXcd random_unitary(int dim, RngStream& rng) {
    if (dim < 1) throw std::invalid_argument("random_unitary: dim must be positive");
    Eigen::MatrixXcd g(dim, dim);
    for (int c = 0; c < dim; ++c) {
        for (int r = 0; r < dim; ++r) g(r, c) = rng.complex_normal();
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim);
    const Eigen::MatrixXcd& r = qr.matrixQR();
    for (int c = 0; c < dim; ++c) {
        const double mag = std::abs(r(c, c));
        if (mag > 0.0) q.col(c) *= r(c, c) / mag;
    }
    return q;
}

Eigen::Matrix4cd random_two_qubit_unitary(RngStream& rng) { return random_unitary(4, rng); }

Eigen::Matrix2cd random_single_qubit_unitary(RngStream& rng) { return random_unitary(2, rng); }

PureState random_physical_state(int n, long long k, RngStream& rng, PairSelection selection) {
    if (n < 2) throw std::invalid_argument("random_physical_state requires n >= 2");
    if (k < 0) throw std::invalid_argument("random_physical_state requires k >= 0");
    require_dense(n, "random_physical_state");
    Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << n));
    amps[0] = 1.0;
    for (long long g = 0; g < k; ++g) {
        int a, b;
        if (selection == PairSelection::Adjacent) {
            a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            b = (a + 1) % n;
        } else {
            a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
            b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
            if (b >= a) ++b;
        }
        apply_two_qubit(amps, n, a, b, random_two_qubit_unitary(rng));
    }
    return PureState(n, std::move(amps));
}

PureState random_linear_chain(int n, int k, RngStream& rng) {
    if (n < 2) throw std::invalid_argument("random_linear_chain requires n >= 2");
    if (k < 0 || k > n - 1) throw std::invalid_argument("random_linear_chain requires 0 <= k <= n-1");
    require_dense(n, "random_linear_chain");
    Amplitudes amps = Amplitudes::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << n));
    amps[0] = 1.0;
    for (int g = 0; g < k; ++g) apply_two_qubit(amps, n, g, g + 1, random_two_qubit_unitary(rng));
    return PureState(n, std::move(amps));
}

PureState haar_random_state(int n, RngStream& rng) {
    if (n < 1) throw std::invalid_argument("haar_random_state requires n >= 1");
    require_dense(n, "haar_random_state");
    Amplitudes amps(static_cast<Eigen::Index>(std::uint64_t{1} << n));
    for (Eigen::Index i = 0; i < amps.size(); ++i) amps[i] = rng.complex_normal();
    return PureState(n, std::move(amps));
}

SymmetricState random_symmetric_state(int n, RngStream& rng) {
    if (n < 2) throw std::invalid_argument("random_symmetric_state requires n >= 2");
    Eigen::VectorXcd c(n + 1);
    for (int j = 0; j <= n; ++j) c[j] = rng.complex_normal();
    return SymmetricState(n, std::move(c));
}

}  // namespace macrolab
