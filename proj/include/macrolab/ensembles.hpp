// ensembles.hpp
// Seeded generators for random pure-state ensembles: random physical states
// (random two-qubit gates on a ring), random linear chains, Haar-random
// states and random symmetric states.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "macrolab/states.hpp"

namespace macrolab {

/// Reproducible random stream. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; real-valued draws use in-house
/// transforms so the sequence does not depend on the standard library.
class RngStream {
public:
    static constexpr std::string_view kAlgorithm = "mt19937_64/u53/box-muller";

    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::string_view algorithm() const { return kAlgorithm; }

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);
    /// Standard normal.
    double normal();
    /// Real and imaginary parts independent standard normals.
    Complex complex_normal();
    /// Uniform point on the unit 2-sphere.
    Eigen::Vector3d unit_vector3();
    /// Haar-random single-qubit state.
    Eigen::Vector2cd unit_spinor();

    /// Child seed for (seed, a, b); splitmix64 mixing.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

enum class PairSelection { Adjacent, AnyPair };

/// Haar-distributed U(d): QR of a complex Ginibre matrix with the diagonal
/// phases of R moved into Q.
Eigen::MatrixXcd random_unitary(int dim, RngStream& rng);
Eigen::Matrix4cd random_two_qubit_unitary(RngStream& rng);
Eigen::Matrix2cd random_single_qubit_unitary(RngStream& rng);

/// k random two-qubit gates on |0>^n; each gate acts on a uniformly chosen
/// ring edge (j, j+1 mod n), or any unordered pair with PairSelection::AnyPair.
PureState random_physical_state(int n, long long k, RngStream& rng,
                                PairSelection selection = PairSelection::Adjacent);
/// Gates on (0,1), (1,2), ..., (k-1,k) applied in order to |0>^n.
PureState random_linear_chain(int n, int k, RngStream& rng);
PureState haar_random_state(int n, RngStream& rng);
SymmetricState random_symmetric_state(int n, RngStream& rng);

}  // namespace macrolab
