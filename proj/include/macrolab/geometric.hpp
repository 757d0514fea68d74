// geometric.hpp
// Geometric measure of entanglement E_G = -log2 eta, eta the largest squared
// overlap with a product state. All searches are local, so the reported eta
// is certified only from below (by its witness) and e_g is an upper-bound
// estimate of the true E_G.

#pragma once

#include <cstdint>
#include <vector>

#include "macrolab/states.hpp"

namespace macrolab {

/// Product state of unit single-qubit vectors.
struct SeparableProduct {
    std::vector<Eigen::Vector2cd> locals;

    /// cos x_j|0> + e^{i y_j} sin x_j|1> per site.
    static SeparableProduct from_angles(const std::vector<double>& x, const std::vector<double>& y);
    static SeparableProduct uniform(int n, const Eigen::Vector2cd& local);
    int size() const { return static_cast<int>(locals.size()); }
    /// (x_j, y_j) with x_j in [0, pi/2].
    std::pair<double, double> angles(int site) const;
    PureState to_state() const;
};

struct GeomResult {
    double eta = 0.0;
    double e_g = 0.0;
    SeparableProduct witness;
    int restarts_used = 0;
    bool converged = false;
};

/// |<product|state>|^2
double overlap(const PureState& state, const SeparableProduct& product);

/// One left-to-right sweep of alternating maximisation: each site is replaced
/// by the normalised contraction of the state with all other current locals.
/// The squared overlap never decreases. Throws RestartRequired when the
/// current product is orthogonal to the state.
SeparableProduct closest_separable_step(const PureState& state, const SeparableProduct& current);

struct GeomOptions {
    /// Random starts; a negative value selects 4 + N.
    int restarts = -1;
    double tol = 1e-12;
    int max_iterations = 500;
    std::uint64_t seed = 0x67656f6dULL;
};

/// Best overlap over one start at the dominant basis string plus random
/// product starts, each iterated until the overlap changes by less than tol.
GeomResult geometric_entanglement(const PureState& state, const GeomOptions& options = {});
GeomResult geometric_entanglement(const PureState& state, int restarts, double tol);

/// |<phi^{(x)N}|state>|^2 for phi = cos x|0> + e^{iy} sin x|1>, in O(N).
double symmetric_overlap(const SymmetricState& state, double x, double y);
double symmetric_overlap(const SymmetricState& state, const Eigen::Vector2cd& phi);

enum class SymmetricEngine {
    LocalAscent,        ///< projected gradient ascent on the Bloch sphere
    MajoranaIteration,  ///< phi <- normalise(sum_j eps_j / <phi|eps_j>)
};

struct SymmetricGeomOptions {
    /// Random starts added to the 16-point grid; negative selects 8.
    int restarts = -1;
    double tol = 1e-14;
    int max_iterations = 2000;
    SymmetricEngine engine = SymmetricEngine::LocalAscent;
    std::uint64_t seed = 0x73796d6dULL;
};

/// The closest product state to a symmetric state is itself symmetric, so the
/// search runs over a single local state.
GeomResult geometric_entanglement_symmetric(const SymmetricState& state, const SymmetricGeomOptions& options = {});
GeomResult geometric_entanglement_symmetric(const SymmetricState& state, int restarts, double tol);

}  // namespace macrolab
