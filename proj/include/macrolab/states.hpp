// states.hpp
// Pure N-qubit states in the dense computational basis and in the Dicke basis
// of the permutation-symmetric subspace.
//
// Basis convention: a dense amplitude index b encodes qubit j (0-based) in bit
// n-1-j, i.e. qubit 0 is the most significant bit. Dicke coefficient j
// multiplies the uniform superposition of all strings with j ones.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "macrolab/core.hpp"

namespace macrolab {

/// Dense pure state over n qubits. Always unit norm.
class PureState {
public:
    /// Normalises `amplitudes`; throws std::invalid_argument on a length
    /// mismatch or a zero vector, ResourceLimit above the dense cap.
    PureState(int n_qubits, Amplitudes amplitudes);

    static PureState basis(int n_qubits, std::uint64_t index);
    static PureState zeros(int n_qubits) { return basis(n_qubits, 0); }
    /// Product of single-qubit states (each normalised independently).
    static PureState product(std::span<const Eigen::Vector2cd> locals);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t dim() const { return std::uint64_t{1} << n_qubits_; }
    const Amplitudes& amplitudes() const { return amplitudes_; }
    Complex amplitude(std::uint64_t index) const { return amplitudes_[static_cast<Eigen::Index>(index)]; }

private:
    int n_qubits_;
    Amplitudes amplitudes_;
};

/// Permutation-symmetric state stored as n+1 Dicke coefficients. Always unit
/// norm.
class SymmetricState {
public:
    SymmetricState(int n_qubits, Eigen::VectorXcd dicke_coeffs);

    int n_qubits() const { return n_qubits_; }
    const Eigen::VectorXcd& coeffs() const { return coeffs_; }
    Complex coeff(int j) const { return coeffs_[j]; }

private:
    int n_qubits_;
    Eigen::VectorXcd coeffs_;
};

/// Majorana points of a symmetric state. Each point is (cos x, e^{iy} sin x)
/// with a real non-negative first component. `pole_count` counts the points
/// produced by the degree deficit of the Majorana polynomial; those sit at |0>.
struct MajoranaPoints {
    std::vector<Eigen::Vector2cd> points;
    int pole_count = 0;
};

SymmetricState ghz(int n);
SymmetricState dicke(int n, int j);
/// cos(theta)|0>^n + sin(theta)(cos(eps)|0> + sin(eps)|1>)^n, normalised.
SymmetricState xi_state(int n, double theta, double epsilon);
/// (cos x|0> + e^{iy} sin x|1>)^{(x)n}
SymmetricState symmetric_product(int n, double x, double y);

PureState tensor(const PureState& a, const PureState& b);
PureState to_dense(const SymmetricState& s);

MajoranaPoints majorana_points(const SymmetricState& s);
/// Symmetrised product of the given single-qubit states, normalised in the
/// Dicke basis.
SymmetricState from_majorana(std::span<const Eigen::Vector2cd> points);

// Named states used throughout the tests and the CLI.
PureState bell_psi_minus();
PureState bell_psi_plus();
/// |Psi^->^{(x) n/2}; n must be even.
PureState bell_product(int n);
/// |GHZ>_{n1} (x) |1>^{(x) n2}
PureState ghz_ones(int n1, int n2);
/// |Psi^+> (x) |0>^{(x) n-2}, n >= 3.
PureState phi_c(int n);

/// |<a|b>|^2
double fidelity(const PureState& a, const PureState& b);
double fidelity(const SymmetricState& a, const SymmetricState& b);

/// Returns the state with qubit j moved to position perm[j].
PureState permute_qubits(const PureState& s, std::span<const int> perm);

// In-place kernels over raw amplitude vectors.
void apply_single_qubit(Amplitudes& amps, int n_qubits, int site, const Eigen::Matrix2cd& u);
/// Local basis order inside `u` is 2*bit(site_a) + bit(site_b).
void apply_two_qubit(Amplitudes& amps, int n_qubits, int site_a, int site_b, const Eigen::Matrix4cd& u);

PureState apply_single_qubit(const PureState& s, int site, const Eigen::Matrix2cd& u);

}  // namespace macrolab
