#include "macrolab/macroscopicity.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "macrolab/ensembles.hpp"

namespace macrolab {

namespace {

struct Ascent {
    Eigen::VectorXd alpha;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

void normalize_sites(Eigen::VectorXd& alpha) {
    for (Eigen::Index j = 0; j < alpha.size(); j += 3) {
        const double norm = alpha.segment<3>(j).norm();
        if (norm > 0.0) alpha.segment<3>(j) /= norm;
        else alpha.segment<3>(j) = Eigen::Vector3d::UnitZ();
    }
}

// Unit vector orthogonal to r, closest to the coordinate axis least aligned with r.
Eigen::Vector3d transverse_direction(const Eigen::Vector3d& r) {
    if (r.norm() < 1e-12) return Eigen::Vector3d::UnitX();
    const Eigen::Vector3d rhat = r.normalized();
    Eigen::Index axis = 0;
    rhat.cwiseAbs().minCoeff(&axis);
    Eigen::Vector3d e = Eigen::Vector3d::Unit(axis);
    e -= e.dot(rhat) * rhat;
    return e.normalized();
}

Ascent ascend(const Eigen::MatrixXd& v, Eigen::VectorXd alpha, const MacroOptions& options, double step0) {
    normalize_sites(alpha);
    Ascent out;
    Eigen::VectorXd va = v * alpha;
    double value = alpha.dot(va);
    double step = step0;
    const double scale = std::max(1.0, std::abs(value));
    for (int it = 0; it < options.max_iterations; ++it) {
        out.iterations = it + 1;
        Eigen::VectorXd rg = 2.0 * va;
        for (Eigen::Index j = 0; j < rg.size(); j += 3) {
            rg.segment<3>(j) -= rg.segment<3>(j).dot(alpha.segment<3>(j)) * alpha.segment<3>(j);
        }
        const double rg_norm = rg.norm();
        if (rg_norm <= 1e-13 * scale) {
            out.converged = true;
            break;
        }
        Eigen::VectorXd trial;
        Eigen::VectorXd trial_va;
        double trial_value = 0.0;
        bool accepted = false;
        while (step > 1e-18) {
            trial = alpha + step * rg;
            normalize_sites(trial);
            trial_va = v * trial;
            trial_value = trial.dot(trial_va);
            if (trial_value >= value) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            out.converged = true;  // no ascent direction left at working precision
            break;
        }
        const double improvement = trial_value - value;
        alpha = std::move(trial);
        va = std::move(trial_va);
        value = trial_value;
        step *= 1.5;
        if (improvement <= options.tol * scale && rg_norm <= 1e-6 * scale) {
            out.converged = true;
            break;
        }
    }
    out.alpha = std::move(alpha);
    out.value = value;
    return out;
}

// Transverse direction on every site, signs chosen greedily so the summed
// cross terms are non-negative; the resulting variance is at least N.
Eigen::VectorXd greedy_transverse_start(const Eigen::MatrixXd& v, const Eigen::MatrixX3d& bloch) {
    const Eigen::Index n = bloch.rows();
    Eigen::VectorXd alpha(3 * n);
    for (Eigen::Index j = 0; j < n; ++j) {
        Eigen::Vector3d t = transverse_direction(bloch.row(j).transpose());
        double cross = 0.0;
        for (Eigen::Index i = 0; i < j; ++i) {
            cross += alpha.segment<3>(3 * i).dot(v.block<3, 3>(3 * i, 3 * j) * t);
        }
        if (cross < 0.0) t = -t;
        alpha.segment<3>(3 * j) = t;
    }
    return alpha;
}

SpinOrientation to_strict(const Eigen::VectorXd& alpha) {
    Eigen::VectorXd a = alpha;
    normalize_sites(a);
    return SpinOrientation::from_flat(a);
}

}  // namespace

VcmUpperBound vcm_upper_bound(const Vcm& v) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(v.matrix);
    if (solver.info() != Eigen::Success) throw std::runtime_error("vcm_upper_bound: eigensolver failed");
    const Eigen::Index top = v.matrix.rows() - 1;
    const double lambda1 = solver.eigenvalues()[top];
    const Eigen::VectorXd lead = solver.eigenvectors().col(top) * std::sqrt(static_cast<double>(v.n_qubits));
    return {.bound = v.n_qubits * lambda1, .lambda1 = lambda1, .candidate = SpinOrientation::from_flat(lead)};
}

BetaLowerBound beta_lower_bound(const PureState& state, const SpinOrientation& candidate) {
    const int n = state.n_qubits();
    if (candidate.size() != n) throw std::invalid_argument("candidate size does not match state");
    const Eigen::MatrixX3d bloch = bloch_vectors(state);
    std::vector<Eigen::Vector3d> beta(n);
    for (int j = 0; j < n; ++j) {
        const double weight = candidate[j].norm();
        beta[j] = weight > 1e-8 ? Eigen::Vector3d(candidate[j] / weight)
                                : transverse_direction(bloch.row(j).transpose());
    }
    SpinOrientation strict(std::move(beta));
    const double bound = additive_variance(state, strict);
    return {.bound = bound, .beta = std::move(strict)};
}

MacroResult macroscopicity_exact(const PureState& state, const MacroOptions& options) {
    return macroscopicity_exact(state, build_vcm(state), options);
}

MacroResult macroscopicity_exact(const PureState& state, int restarts, double tol) {
    if (restarts < 1) throw std::invalid_argument("macroscopicity_exact requires restarts >= 1");
    MacroOptions options;
    options.restarts = restarts;
    options.tol = tol;
    return macroscopicity_exact(state, options);
}

MacroResult macroscopicity_exact(const PureState& state, const Vcm& vcm, const MacroOptions& options) {
    const int n = state.n_qubits();
    require_dense(n, "macroscopicity_exact");
    if (vcm.n_qubits != n) throw std::invalid_argument("VCM does not belong to this state");
    const VcmUpperBound upper = vcm_upper_bound(vcm);
    const BetaLowerBound beta = beta_lower_bound(state, upper.candidate);
    const Eigen::MatrixXd& v = vcm.matrix;
    const Eigen::MatrixX3d bloch = bloch_vectors(state);

    std::vector<Eigen::VectorXd> starts;
    starts.push_back(beta.beta.flat());
    starts.push_back(SpinOrientation::uniform(n, Eigen::Vector3d::UnitZ()).flat());
    starts.push_back(SpinOrientation::uniform(n, Eigen::Vector3d::UnitX()).flat());
    const Eigen::VectorXd transverse = greedy_transverse_start(v, bloch);
    starts.push_back(transverse);
    const int random_starts = options.restarts < 0 ? 8 + 2 * n : options.restarts;
    RngStream rng(options.seed);
    for (int r = 0; r < random_starts; ++r) {
        Eigen::VectorXd a(3 * n);
        for (int j = 0; j < n; ++j) a.segment<3>(3 * j) = rng.unit_vector3();
        starts.push_back(std::move(a));
    }

    const double step0 = 0.5 / std::max(1.0, upper.lambda1);
    const double lower = std::max(beta.bound, transverse.dot(v * transverse));
    Ascent best;
    best.value = -1.0;
    int iterations = 0;
    for (const auto& start : starts) {
        Ascent run = ascend(v, start, options, step0);
        iterations += run.iterations;
        if (run.value > best.value) best = std::move(run);
    }

    const double m_tilde = std::clamp(best.value, lower, std::max(lower, upper.bound));
    return {.m_tilde = m_tilde,
            .m_norm = n >= 2 ? normalize(m_tilde, n) : 0.0,
            .lower_bound = lower,
            .upper_bound = std::max(lower, upper.bound),
            .optimal_alpha = to_strict(best.alpha),
            .stats = {.restarts = static_cast<int>(starts.size()), .iterations = iterations, .converged = best.converged}};
}

MacroResult macroscopicity_bracket(const PureState& state, const Vcm& vcm) {
    const int n = state.n_qubits();
    if (vcm.n_qubits != n) throw std::invalid_argument("VCM does not belong to this state");
    const VcmUpperBound upper = vcm_upper_bound(vcm);
    BetaLowerBound beta = beta_lower_bound(state, upper.candidate);
    const Eigen::VectorXd transverse = greedy_transverse_start(vcm.matrix, bloch_vectors(state));
    const double transverse_value = transverse.dot(vcm.matrix * transverse);
    const bool use_beta = beta.bound >= transverse_value;
    const double lower = use_beta ? beta.bound : transverse_value;
    return {.m_tilde = lower,
            .m_norm = n >= 2 ? normalize(std::max(lower, static_cast<double>(n)), n) : 0.0,
            .lower_bound = lower,
            .upper_bound = std::max(lower, upper.bound),
            .optimal_alpha = use_beta ? std::move(beta.beta) : to_strict(transverse),
            .stats = {.restarts = 0, .iterations = 0, .converged = false}};
}

MacroResult macroscopicity_symmetric(const SymmetricState& state) {
    const int n = state.n_qubits();
    const SymmetricVcm v = build_symmetric_vcm(state);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(v.v_sym);
    const double m_tilde = n * solver.eigenvalues()[2];
    return {.m_tilde = m_tilde,
            .m_norm = n >= 2 ? normalize(m_tilde, n) : 0.0,
            .lower_bound = m_tilde,
            .upper_bound = m_tilde,
            .optimal_alpha = SpinOrientation::uniform(n, solver.eigenvectors().col(2)),
            .stats = {.restarts = 0, .iterations = 0, .converged = true}};
}

double normalize(double m_tilde, int n) {
    if (n < 2) throw std::invalid_argument("normalize requires n >= 2");
    const double nn = static_cast<double>(n);
    if (!std::isfinite(m_tilde)) throw std::invalid_argument("normalize: non-finite macroscopicity");
    if (m_tilde > nn * nn + 1e-6) throw std::invalid_argument("normalize: macroscopicity exceeds N^2");
    if (m_tilde < nn - 1e-9) throw std::invalid_argument("normalize: macroscopicity below N");
    const double clamped = std::clamp(m_tilde, nn, nn * nn);
    return std::sqrt((clamped - nn) / (nn * (nn - 1.0)));
}

IndexPEstimate fit_index_p(const std::vector<int>& sizes, const std::vector<double>& m_tilde) {
    if (sizes.size() < 3) throw std::invalid_argument("estimate_index_p needs at least 3 sizes");
    if (sizes.size() != m_tilde.size()) throw std::invalid_argument("fit_index_p: size mismatch");
    const Eigen::Index count = static_cast<Eigen::Index>(sizes.size());
    Eigen::MatrixXd design(count, 2);
    Eigen::VectorXd y(count);
    for (Eigen::Index i = 0; i < count; ++i) {
        if (sizes[i] < 1 || !(m_tilde[i] > 0.0)) throw std::invalid_argument("fit_index_p: non-positive data");
        design(i, 0) = std::log(static_cast<double>(sizes[i]));
        design(i, 1) = 1.0;
        y[i] = std::log(m_tilde[i]);
    }
    const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(y);
    const double rms = std::sqrt((design * coef - y).squaredNorm() / static_cast<double>(count));
    return {.p = coef[0], .fit_residual = rms, .sizes_used = sizes};
}

IndexPEstimate estimate_index_p(const std::function<PureState(int)>& family, const std::vector<int>& sizes,
                                const MacroOptions& options) {
    if (sizes.size() < 3) throw std::invalid_argument("estimate_index_p needs at least 3 sizes");
    std::vector<double> values;
    for (int n : sizes) values.push_back(macroscopicity_exact(family(n), options).m_tilde);
    return fit_index_p(sizes, values);
}

IndexPEstimate estimate_index_p_symmetric(const std::function<SymmetricState(int)>& family,
                                          const std::vector<int>& sizes) {
    if (sizes.size() < 3) throw std::invalid_argument("estimate_index_p needs at least 3 sizes");
    std::vector<double> values;
    for (int n : sizes) values.push_back(macroscopicity_symmetric(family(n)).m_tilde);
    return fit_index_p(sizes, values);
}

}  // namespace macrolab
