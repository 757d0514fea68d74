// extremal.hpp
// Closed forms for the Xi(theta, eps) family and the overlap-constrained
// maximal macroscopicity bound.

#pragma once

#include <vector>

#include "macrolab/states.hpp"

namespace macrolab {

/// Normalised macroscopicity M of xi_state(n, theta, epsilon). Exact closed
/// forms on the eps = pi/2 and theta = pi/4 lines, 3x3 eigenvalue elsewhere.
double xi_macroscopicity_analytic(int n, double theta, double epsilon);

/// -log2 cos^2 theta, the geometric entanglement on the eps = pi/2 line.
double xi_geometric_analytic(int n, double theta);

enum class BoundMode { General, Symmetric };

const char* bound_mode_name(BoundMode mode);

/// `count` components with total spin projection +-label (one component when
/// label is zero), each carrying probability `weight`.
struct FilledPair {
    int label = 0;
    long long count = 0;
    double weight = 0.0;
};

struct EtaMaxSpec {
    int n = 0;
    double eta = 0.0;
    BoundMode mode = BoundMode::General;
    std::vector<FilledPair> filled_pairs;

    double total_weight() const;
};

/// Smallest eta for which the n-qubit construction can hold unit probability:
/// 2^-n (general) or 1/(n+1) (symmetric).
double eta_min(int n, BoundMode mode);

/// Greedy filling from the largest |S| down. Throws std::invalid_argument for
/// eta outside (eta_min, 1/2].
EtaMaxSpec make_eta_max_spec(int n, double eta, BoundMode mode);

struct EtaMaxBound {
    double m_tilde = 0.0;
    double m_norm = 0.0;
};

EtaMaxBound eta_max_bound(const EtaMaxSpec& spec);
EtaMaxBound eta_max_bound(int n, double eta, BoundMode mode);

/// Symmetric-mode spec as a state with real non-negative Dicke coefficients.
SymmetricState realize_symmetric(const EtaMaxSpec& spec);

/// `count` log-spaced values from 1/2 down to eta_min(n, mode).
std::vector<double> eta_grid(int n, BoundMode mode, int count);

}  // namespace macrolab
