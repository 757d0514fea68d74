#include "macrolab/geometric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "macrolab/ensembles.hpp"

namespace macrolab {

namespace {

struct SweepResult {
    SeparableProduct next;
    double before = 0.0;
    double after = 0.0;
};

// Right environments: env[j] is the state contracted with conj(locals) on all
// sites > j; site j is then the least significant bit of env[j].
SweepResult sweep(const PureState& state, const SeparableProduct& current) {
    const int n = state.n_qubits();
    if (current.size() != n) throw std::invalid_argument("product size does not match state");
    std::vector<Amplitudes> env(n);
    env[n - 1] = state.amplitudes();
    for (int j = n - 1; j >= 1; --j) {
        const Complex c0 = std::conj(current.locals[j][0]);
        const Complex c1 = std::conj(current.locals[j][1]);
        const Amplitudes& src = env[j];
        Amplitudes dst(src.size() / 2);
        for (Eigen::Index i = 0; i < dst.size(); ++i) dst[i] = c0 * src[2 * i] + c1 * src[2 * i + 1];
        env[j - 1] = std::move(dst);
    }
    SweepResult out;
    out.before = std::norm(std::conj(current.locals[0][0]) * env[0][0] + std::conj(current.locals[0][1]) * env[0][1]);
    if (std::sqrt(out.before) <= 1e-14) {
        throw RestartRequired("closest_separable_step: product state is orthogonal to the input");
    }
    out.next = current;
    for (int j = 0; j < n; ++j) {
        Amplitudes t = env[j];
        // Contract the already updated sites 0..j-1, most significant first.
        for (int s = 0; s < j; ++s) {
            const Complex c0 = std::conj(out.next.locals[s][0]);
            const Complex c1 = std::conj(out.next.locals[s][1]);
            const Eigen::Index half = t.size() / 2;
            t = (c0 * t.head(half) + c1 * t.tail(half)).eval();
        }
        const Eigen::Vector2cd v(t[0], t[1]);
        const double norm = v.norm();
        if (norm <= 1e-14) throw RestartRequired("closest_separable_step: vanishing partial contraction");
        out.next.locals[j] = v / norm;
        out.after = norm * norm;
    }
    return out;
}

Eigen::Vector2cd spinor(double x, double y) { return {std::cos(x), std::polar(1.0, y) * std::sin(x)}; }

// h(p, q) = sum_j binom(n,j)^{1/2} conj(c_j) p^{n-j} q^j = conj(<phi^n|psi>) and
// its partial derivatives, by Horner in q/p or p/q.
class SymmetricAmplitude {
public:
    explicit SymmetricAmplitude(const SymmetricState& state) : n_(state.n_qubits()), w_(n_ + 1) {
        if (n_ > 1000) throw std::invalid_argument("symmetric overlap supports n <= 1000");
        for (int j = 0; j <= n_; ++j) w_[j] = std::exp(0.5 * log_binomial(n_, j)) * std::conj(state.coeff(j));
    }

    struct Value {
        Complex h, dp, dq;
    };

    Value evaluate(const Eigen::Vector2cd& phi) const {
        const Complex p = phi[0];
        const Complex q = phi[1];
        Complex h = 0.0, hp = 0.0, hq = 0.0;
        if (std::abs(p) >= std::abs(q)) {
            const Complex t = q / p;
            for (int j = n_; j >= 0; --j) {
                h = h * t + w_[j];
                hp = hp * t + w_[j] * static_cast<double>(n_ - j);
                if (j >= 1) hq = hq * t + w_[j] * static_cast<double>(j);
            }
            const Complex lead = power(p, n_ - 1);
            return {lead * p * h, lead * hp, lead * hq};
        }
        const Complex s = p / q;
        for (int j = 0; j <= n_; ++j) {
            h = h * s + w_[j];
            if (j < n_) hp = hp * s + w_[j] * static_cast<double>(n_ - j);
            hq = hq * s + w_[j] * static_cast<double>(j);
        }
        const Complex lead = power(q, n_ - 1);
        return {lead * q * h, lead * hp, lead * hq};
    }

    double overlap(const Eigen::Vector2cd& phi) const { return std::norm(evaluate(phi).h); }
    int n() const { return n_; }

private:
    static Complex power(Complex base, int exponent) {
        Complex result = 1.0;
        while (exponent > 0) {
            if (exponent & 1) result *= base;
            base *= base;
            exponent >>= 1;
        }
        return result;
    }

    int n_;
    std::vector<Complex> w_;
};

struct SymmetricRun {
    Eigen::Vector2cd phi;
    double value = 0.0;
    bool converged = false;
};

SymmetricRun local_ascent(const SymmetricAmplitude& amp, Eigen::Vector2cd phi, const SymmetricGeomOptions& options) {
    phi.normalize();
    auto current = amp.evaluate(phi);
    double value = std::norm(current.h);
    double step = 1.0 / std::max(1, amp.n());
    SymmetricRun run;
    for (int it = 0; it < options.max_iterations; ++it) {
        Eigen::Vector2cd grad(2.0 * current.h * std::conj(current.dp), 2.0 * current.h * std::conj(current.dq));
        grad -= phi.dot(grad).real() * phi;
        const double grad_norm = grad.norm();
        if (grad_norm <= 1e-15) {
            run.converged = true;
            break;
        }
        bool accepted = false;
        Eigen::Vector2cd trial;
        SymmetricAmplitude::Value trial_value{};
        while (step > 1e-20) {
            trial = (phi + step * grad).normalized();
            trial_value = amp.evaluate(trial);
            if (std::norm(trial_value.h) >= value) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            run.converged = true;
            break;
        }
        const double improvement = std::norm(trial_value.h) - value;
        phi = trial;
        current = trial_value;
        value = std::norm(current.h);
        step *= 1.5;
        if (improvement <= options.tol && grad_norm <= 1e-7) {
            run.converged = true;
            break;
        }
    }
    run.phi = phi;
    run.value = value;
    return run;
}

SymmetricRun majorana_iteration(const SymmetricAmplitude& amp, const std::vector<Eigen::Vector2cd>& points,
                                Eigen::Vector2cd phi, const SymmetricGeomOptions& options) {
    phi.normalize();
    SymmetricRun run;
    run.phi = phi;
    run.value = amp.overlap(phi);
    double previous = run.value;
    for (int it = 0; it < options.max_iterations; ++it) {
        Eigen::Vector2cd next = Eigen::Vector2cd::Zero();
        for (const auto& eps : points) {
            const Complex proj = phi.dot(eps);  // <phi|eps_j>
            if (std::abs(proj) < 1e-300) return run;
            next += eps / proj;
        }
        if (!(next.norm() > 0.0)) return run;
        phi = next.normalized();
        const double value = amp.overlap(phi);
        if (value > run.value) {
            run.value = value;
            run.phi = phi;
        }
        if (std::abs(value - previous) <= options.tol) {
            run.converged = true;
            break;
        }
        previous = value;
    }
    return run;
}

}  // namespace

SeparableProduct SeparableProduct::from_angles(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty()) throw std::invalid_argument("from_angles: mismatched angle lists");
    SeparableProduct p;
    for (std::size_t j = 0; j < x.size(); ++j) p.locals.push_back(spinor(x[j], y[j]));
    return p;
}

SeparableProduct SeparableProduct::uniform(int n, const Eigen::Vector2cd& local) {
    if (n < 1) throw std::invalid_argument("SeparableProduct needs at least one site");
    return {std::vector<Eigen::Vector2cd>(n, local.normalized())};
}

std::pair<double, double> SeparableProduct::angles(int site) const {
    const Eigen::Vector2cd& v = locals.at(site);
    const double x = std::atan2(std::abs(v[1]), std::abs(v[0]));
    const double y = std::abs(v[1]) > 0.0 && std::abs(v[0]) > 0.0 ? std::arg(v[1]) - std::arg(v[0]) : 0.0;
    return {x, std::remainder(y, 2.0 * std::numbers::pi)};
}

PureState SeparableProduct::to_state() const { return PureState::product(locals); }

double overlap(const PureState& state, const SeparableProduct& product) {
    if (product.size() != state.n_qubits()) throw std::invalid_argument("product size does not match state");
    return std::norm(product.to_state().amplitudes().dot(state.amplitudes()));
}

SeparableProduct closest_separable_step(const PureState& state, const SeparableProduct& current) {
    return sweep(state, current).next;
}

GeomResult geometric_entanglement(const PureState& state, const GeomOptions& options) {
    const int n = state.n_qubits();
    require_dense(n, "geometric_entanglement");
    const int random_starts = options.restarts < 0 ? 4 + n : options.restarts;
    RngStream rng(options.seed);

    Eigen::Index dominant = 0;
    state.amplitudes().cwiseAbs2().maxCoeff(&dominant);
    SeparableProduct basis_start;
    for (int j = 0; j < n; ++j) {
        const bool one = (static_cast<std::uint64_t>(dominant) & site_mask(n, j)) != 0;
        basis_start.locals.push_back(one ? Eigen::Vector2cd(0.0, 1.0) : Eigen::Vector2cd(1.0, 0.0));
    }

    GeomResult best;
    best.eta = -1.0;
    int used = 0;
    for (int r = 0; r <= random_starts; ++r) {
        SeparableProduct current;
        if (r == 0) {
            current = basis_start;
        } else {
            for (int j = 0; j < n; ++j) current.locals.push_back(rng.unit_spinor());
        }
        bool converged = false;
        double value = 0.0;
        bool ok = false;
        for (int attempt = 0; attempt < 16 && !ok; ++attempt) {
            try {
                SweepResult step = sweep(state, current);
                double previous = step.before;
                current = std::move(step.next);
                value = step.after;
                for (int it = 1; it < options.max_iterations; ++it) {
                    if (std::abs(value - previous) < options.tol) {
                        converged = true;
                        break;
                    }
                    step = sweep(state, current);
                    previous = value;
                    current = std::move(step.next);
                    value = step.after;
                }
                if (!converged && std::abs(value - previous) < options.tol) converged = true;
                ok = true;
            } catch (const RestartRequired&) {
                current.locals.clear();
                for (int j = 0; j < n; ++j) current.locals.push_back(rng.unit_spinor());
            }
        }
        if (!ok) continue;
        ++used;
        if (value > best.eta) {
            best.eta = value;
            best.witness = current;
            best.converged = converged;
        }
    }
    if (best.eta <= 0.0) throw std::runtime_error("geometric_entanglement: no start converged");
    best.eta = std::min(1.0, overlap(state, best.witness));
    best.e_g = std::max(0.0, -std::log2(best.eta));
    best.restarts_used = used;
    return best;
}

GeomResult geometric_entanglement(const PureState& state, int restarts, double tol) {
    if (restarts < 0) throw std::invalid_argument("restarts must be non-negative");
    GeomOptions options;
    options.restarts = restarts;
    options.tol = tol;
    return geometric_entanglement(state, options);
}

double symmetric_overlap(const SymmetricState& state, double x, double y) {
    return symmetric_overlap(state, spinor(x, y));
}

double symmetric_overlap(const SymmetricState& state, const Eigen::Vector2cd& phi) {
    const double norm = phi.norm();
    if (std::abs(norm - 1.0) > 1e-12) throw std::invalid_argument("symmetric_overlap: phi must be unit norm");
    return SymmetricAmplitude(state).overlap(phi);
}

GeomResult geometric_entanglement_symmetric(const SymmetricState& state, const SymmetricGeomOptions& options) {
    const int n = state.n_qubits();
    const SymmetricAmplitude amp(state);
    std::vector<Eigen::Vector2cd> starts;
    for (int ix = 0; ix < 4; ++ix) {
        for (int iy = 0; iy < 4; ++iy) starts.push_back(spinor(ix * std::numbers::pi / 6.0, iy * std::numbers::pi / 2.0));
    }
    RngStream rng(options.seed);
    const int random_starts = options.restarts < 0 ? 8 : options.restarts;
    for (int r = 0; r < random_starts; ++r) starts.push_back(rng.unit_spinor());

    std::vector<Eigen::Vector2cd> points;
    if (options.engine == SymmetricEngine::MajoranaIteration) points = majorana_points(state).points;

    SymmetricRun best;
    best.value = -1.0;
    for (const auto& start : starts) {
        SymmetricRun run = options.engine == SymmetricEngine::LocalAscent
                               ? local_ascent(amp, start, options)
                               : majorana_iteration(amp, points, start, options);
        if (run.value > best.value) best = run;
    }
    GeomResult result;
    result.witness = SeparableProduct::uniform(n, best.phi);
    result.eta = std::min(1.0, amp.overlap(result.witness.locals[0]));
    result.e_g = std::max(0.0, -std::log2(result.eta));
    result.restarts_used = static_cast<int>(starts.size());
    result.converged = best.converged;
    return result;
}

GeomResult geometric_entanglement_symmetric(const SymmetricState& state, int restarts, double tol) {
    if (restarts < 0) throw std::invalid_argument("restarts must be non-negative");
    SymmetricGeomOptions options;
    options.restarts = restarts;
    options.tol = tol;
    return geometric_entanglement_symmetric(state, options);
}

}  // namespace macrolab
