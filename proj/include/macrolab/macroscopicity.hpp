// macroscopicity.hpp
// Unnormalised macroscopicity M~ = max over unit alpha_j of <Delta S^2>, its
// cheap VCM bracket, the normalised measure M, and the index-p estimator.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "macrolab/observables.hpp"

namespace macrolab {

struct OptimizerStats {
    int restarts = 0;    ///< starts actually run (deterministic + random)
    int iterations = 0;  ///< total ascent iterations over all starts
    bool converged = false;
};

struct MacroResult {
    double m_tilde = 0.0;
    double m_norm = 0.0;
    double lower_bound = 0.0;
    double upper_bound = 0.0;
    SpinOrientation optimal_alpha;
    OptimizerStats stats;
};

struct VcmUpperBound {
    double bound = 0.0;
    double lambda1 = 0.0;
    SpinOrientation candidate;  ///< sqrt(N) * leading eigenvector, relaxed mode
};

struct BetaLowerBound {
    double bound = 0.0;
    SpinOrientation beta;  ///< strict mode
};

struct MacroOptions {
    /// Random starts; a negative value selects 8 + 2N.
    int restarts = -1;
    double tol = 1e-10;
    int max_iterations = 20000;
    std::uint64_t seed = 0x6d6163726fULL;
};

/// N * lambda_1 with the leading eigenvector scaled to sum |alpha_j|^2 = N.
VcmUpperBound vcm_upper_bound(const Vcm& v);

/// Normalises the candidate per site. Sites whose weight is below 1e-8 get a
/// direction orthogonal to their Bloch vector.
BetaLowerBound beta_lower_bound(const PureState& state, const SpinOrientation& candidate);

/// Multi-start projected gradient ascent of alpha^T V alpha over the product of
/// unit spheres. Starts: the beta candidate, all-z, all-x, a transverse start
/// with greedy signs, then random orientations.
MacroResult macroscopicity_exact(const PureState& state, const MacroOptions& options = {});
MacroResult macroscopicity_exact(const PureState& state, int restarts, double tol);
/// Same, reusing an already assembled VCM of `state`.
MacroResult macroscopicity_exact(const PureState& state, const Vcm& vcm, const MacroOptions& options = {});

/// Bracket only: the lower bound is the better of the beta candidate and the
/// greedy transverse orientation; m_tilde is set to it and converged is false.
MacroResult macroscopicity_bracket(const PureState& state, const Vcm& vcm);

/// M~ = N lambda_1(V_sym); no iterative optimisation.
MacroResult macroscopicity_symmetric(const SymmetricState& state);

/// sqrt((m_tilde - n) / (n (n - 1))). Values within 1e-9 below n clamp to n;
/// values above n^2 + 1e-6 throw std::invalid_argument.
double normalize(double m_tilde, int n);

struct IndexPEstimate {
    double p = 0.0;
    double fit_residual = 0.0;  ///< RMS residual of the log-log fit
    std::vector<int> sizes_used;
};

/// Least-squares slope of log M~ against log N.
IndexPEstimate estimate_index_p(const std::function<PureState(int)>& family, const std::vector<int>& sizes,
                                const MacroOptions& options = {});
IndexPEstimate estimate_index_p_symmetric(const std::function<SymmetricState(int)>& family,
                                          const std::vector<int>& sizes);
/// Fit on precomputed (N, M~) pairs.
IndexPEstimate fit_index_p(const std::vector<int>& sizes, const std::vector<double>& m_tilde);

}  // namespace macrolab
