// observables.hpp
// Additive spin observables S = sum_j alpha_j . sigma_j, their variances, and
// the Pauli variance-covariance matrix (VCM) in dense and Dicke form.
//
// Sign convention: sigma_z|0> = +|0>, sigma_y|0> = i|1>.
// VCM layout: row/column 3*site + axis, axis order x, y, z.

#pragma once

#include <cstdint>
#include <vector>

#include "macrolab/states.hpp"

namespace macrolab {

/// Per-site measurement directions of an additive observable.
///
/// Strict orientations have unit vectors on every site. Relaxed orientations
/// (leading-eigenvector candidates) only satisfy sum_j |alpha_j|^2 = N.
class SpinOrientation {
public:
    enum class Mode { Strict, Relaxed };

    /// Classifies the vectors; throws std::invalid_argument if they satisfy
    /// neither constraint.
    explicit SpinOrientation(std::vector<Eigen::Vector3d> vectors);

    static SpinOrientation uniform(int n, const Eigen::Vector3d& direction);
    /// Blocks of three consecutive entries, one per site.
    static SpinOrientation from_flat(const Eigen::VectorXd& flat);

    Mode mode() const { return mode_; }
    bool strict() const { return mode_ == Mode::Strict; }
    int size() const { return static_cast<int>(vectors_.size()); }
    const std::vector<Eigen::Vector3d>& vectors() const { return vectors_; }
    const Eigen::Vector3d& operator[](int site) const { return vectors_[site]; }
    Eigen::VectorXd flat() const;

private:
    std::vector<Eigen::Vector3d> vectors_;
    Mode mode_;
};

/// Real symmetric 3N x 3N VCM. `raw` keeps the one-sided complex covariances
/// <Delta sigma^g_k Delta sigma^b_j>, which are Hermitian on same-site blocks.
struct Vcm {
    int n_qubits = 0;
    Eigen::MatrixXd matrix;
    Eigen::MatrixXcd raw;
    std::uint64_t fingerprint = 0;

    /// Quadratic form alpha^T V alpha.
    double quadratic_form(const SpinOrientation& alpha) const;
};

struct SymmetricVcm {
    int n_qubits = 0;
    Eigen::Matrix3d a_block;  ///< single-site covariances
    Eigen::Matrix3d b_block;  ///< covariances between two distinct sites
    Eigen::Matrix3d v_sym;    ///< a_block + (N-1) b_block
};

/// <sigma^axis_site>
double pauli_expectation(const PureState& state, int site, Axis axis);
/// Bloch vectors of every site, row per site.
Eigen::MatrixX3d bloch_vectors(const PureState& state);
/// <sigma^g_k sigma^b_j>; for k == j the same-site product rule applies.
Complex pauli_product_expectation(const PureState& state, int site_k, int site_j, Axis g, Axis b);
/// Covariance <Delta sigma^g_k Delta sigma^b_j>; real for distinct sites.
Complex pauli_correlation(const PureState& state, int site_k, int site_j, Axis g, Axis b);

/// <Delta S^2> evaluated by applying S to the state vector.
double additive_variance(const PureState& state, const SpinOrientation& alpha);

Vcm build_vcm(const PureState& state);

/// Single-site Bloch vector of a symmetric state, evaluated in the Dicke basis.
Eigen::Vector3d symmetric_bloch_vector(const SymmetricState& state);
/// <sigma^g_1 sigma^b_2> for two distinct sites of a symmetric state (N >= 2).
Eigen::Matrix3d symmetric_two_site(const SymmetricState& state);
SymmetricVcm build_symmetric_vcm(const SymmetricState& state);

/// FNV-1a over the amplitude bytes.
std::uint64_t state_fingerprint(const PureState& state);

}  // namespace macrolab
