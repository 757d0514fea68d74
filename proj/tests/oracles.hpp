// Independent reference implementations built from explicit Kronecker
// products and brute-force searches. Only meant for a handful of qubits.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

inline Eigen::Matrix2cd pauli(int axis) {
    Eigen::Matrix2cd m;
    const cd i(0.0, 1.0);
    switch (axis) {
        case 0: m << 0.0, 1.0, 1.0, 0.0; break;
        case 1: m << 0.0, -i, i, 0.0; break;
        default: m << 1.0, 0.0, 0.0, -1.0; break;
    }
    return m;
}

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
    return out;
}

/// Single-site operator embedded at `site` (site 0 leftmost factor).
inline MatrixXcd embed(int n, int site, const MatrixXcd& op) {
    MatrixXcd out = MatrixXcd::Identity(1, 1);
    for (int j = 0; j < n; ++j) out = kron(out, j == site ? op : MatrixXcd(MatrixXcd::Identity(2, 2)));
    return out;
}

inline MatrixXcd spin_operator(int n, const std::vector<Eigen::Vector3d>& alpha) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    MatrixXcd s = MatrixXcd::Zero(dim, dim);
    for (int j = 0; j < n; ++j) {
        MatrixXcd local = alpha[j][0] * pauli(0) + alpha[j][1] * pauli(1) + alpha[j][2] * pauli(2);
        s += embed(n, j, local);
    }
    return s;
}

inline double expectation(const VectorXcd& psi, const MatrixXcd& op) { return psi.dot(op * psi).real(); }

inline double variance(const VectorXcd& psi, int n, const std::vector<Eigen::Vector3d>& alpha) {
    const MatrixXcd s = spin_operator(n, alpha);
    const double mean = expectation(psi, s);
    return expectation(psi, s * s) - mean * mean;
}

/// Symmetrised covariance matrix of all Pauli operators, index 3 site + axis.
inline Eigen::MatrixXd vcm(const VectorXcd& psi, int n) {
    std::vector<MatrixXcd> ops;
    for (int j = 0; j < n; ++j) {
        for (int a = 0; a < 3; ++a) ops.push_back(embed(n, j, pauli(a)));
    }
    const int m = 3 * n;
    Eigen::MatrixXd v(m, m);
    for (int p = 0; p < m; ++p) {
        for (int q = 0; q < m; ++q) {
            const MatrixXcd anti = 0.5 * (ops[p] * ops[q] + ops[q] * ops[p]);
            v(p, q) = expectation(psi, anti) - expectation(psi, ops[p]) * expectation(psi, ops[q]);
        }
    }
    return v;
}

inline Eigen::Vector3d direction(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

/// Maximal variance for n <= 3: coarse grid over all sites followed by a
/// shrinking-step pattern search in spherical angles.
inline double max_variance(const VectorXcd& psi, int n) {
    std::vector<std::pair<double, double>> grid;
    for (int t = 0; t <= 6; ++t) {
        for (int p = 0; p < (t == 0 || t == 6 ? 1 : 6); ++p) grid.emplace_back(t * std::numbers::pi / 6.0, p * std::numbers::pi / 3.0);
    }
    std::vector<double> angles(2 * n);
    std::vector<MatrixXcd> ops;
    for (int j = 0; j < n; ++j) {
        for (int a = 0; a < 3; ++a) ops.push_back(embed(n, j, pauli(a)));
    }
    auto eval = [&](const std::vector<double>& a) {
        MatrixXcd s = MatrixXcd::Zero(psi.size(), psi.size());
        for (int j = 0; j < n; ++j) {
            const Eigen::Vector3d d = direction(a[2 * j], a[2 * j + 1]);
            for (int k = 0; k < 3; ++k) s += d[k] * ops[3 * j + k];
        }
        const VectorXcd sp = s * psi;
        const double mean = psi.dot(sp).real();
        return sp.squaredNorm() - mean * mean;
    };
    std::vector<std::vector<double>> seeds;
    std::vector<double> seed_values;
    std::vector<int> idx(n, 0);
    for (;;) {
        for (int j = 0; j < n; ++j) {
            angles[2 * j] = grid[idx[j]].first;
            angles[2 * j + 1] = grid[idx[j]].second;
        }
        seeds.push_back(angles);
        seed_values.push_back(eval(angles));
        int j = 0;
        while (j < n && ++idx[j] == static_cast<int>(grid.size())) idx[j++] = 0;
        if (j == n) break;
    }
    std::vector<std::size_t> order(seeds.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return seed_values[a] > seed_values[b]; });
    double best = -1.0;
    for (std::size_t r = 0; r < std::min<std::size_t>(6, order.size()); ++r) {
        std::vector<double> a = seeds[order[r]];
        double value = seed_values[order[r]];
        for (double step = 0.3; step > 1e-10; step *= 0.5) {
            bool improved = true;
            while (improved) {
                improved = false;
                for (std::size_t c = 0; c < a.size(); ++c) {
                    for (double sign : {1.0, -1.0}) {
                        std::vector<double> t = a;
                        t[c] += sign * step;
                        const double v = eval(t);
                        if (v > value + 1e-15) {
                            a = t;
                            value = v;
                            improved = true;
                        }
                    }
                }
            }
        }
        best = std::max(best, value);
    }
    return best;
}

/// Largest squared overlap with a product state for two qubits: the square of
/// the largest Schmidt coefficient.
inline double two_qubit_eta(const VectorXcd& psi) {
    Eigen::Matrix2cd c;
    c << psi[0], psi[1], psi[2], psi[3];
    const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(c);
    return svd.singularValues()[0] * svd.singularValues()[0];
}

inline Eigen::Vector2cd spinor(double x, double y) { return {std::cos(x), std::polar(1.0, y) * std::sin(x)}; }

/// Three-qubit eta: grid over the first two local states, the third one is
/// optimal in closed form; refined by pattern search.
inline double three_qubit_eta(const VectorXcd& psi) {
    auto eval = [&](const std::vector<double>& a) {
        const Eigen::Vector2cd u = spinor(a[0], a[1]);
        const Eigen::Vector2cd v = spinor(a[2], a[3]);
        Eigen::Vector2cd rest = Eigen::Vector2cd::Zero();
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                for (int k = 0; k < 2; ++k) rest[k] += std::conj(u[i]) * std::conj(v[j]) * psi[4 * i + 2 * j + k];
            }
        }
        return rest.squaredNorm();
    };
    const int steps = 12;
    std::vector<double> best_a(4);
    double best = -1.0;
    for (int a = 0; a <= steps; ++a) {
        for (int b = 0; b < 2 * steps; ++b) {
            for (int c = 0; c <= steps; ++c) {
                for (int d = 0; d < 2 * steps; ++d) {
                    std::vector<double> x = {a * std::numbers::pi / 2.0 / steps, b * std::numbers::pi / steps,
                                             c * std::numbers::pi / 2.0 / steps, d * std::numbers::pi / steps};
                    const double v = eval(x);
                    if (v > best) {
                        best = v;
                        best_a = x;
                    }
                }
            }
        }
    }
    for (double step = 0.2; step > 1e-10; step *= 0.5) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (std::size_t c = 0; c < 4; ++c) {
                for (double sign : {1.0, -1.0}) {
                    std::vector<double> t = best_a;
                    t[c] += sign * step;
                    const double v = eval(t);
                    if (v > best + 1e-16) {
                        best_a = t;
                        best = v;
                        improved = true;
                    }
                }
            }
        }
    }
    return best;
}

/// Symmetric-state eta by a 2-parameter grid over phi^{(x)n}, using explicit
/// dense products; refined by pattern search.
inline double symmetric_eta_grid(const VectorXcd& psi, int n) {
    auto eval = [&](double x, double y) {
        VectorXcd prod = VectorXcd::Ones(1);
        const Eigen::Vector2cd phi = spinor(x, y);
        for (int j = 0; j < n; ++j) prod = kron(prod, phi);
        return std::norm(prod.dot(psi));
    };
    double best = -1.0, bx = 0.0, by = 0.0;
    const int steps = 90;
    for (int a = 0; a <= steps; ++a) {
        for (int b = 0; b < 2 * steps; ++b) {
            const double x = a * std::numbers::pi / 2.0 / steps;
            const double y = b * std::numbers::pi / steps;
            const double v = eval(x, y);
            if (v > best) {
                best = v;
                bx = x;
                by = y;
            }
        }
    }
    for (double step = 0.05; step > 1e-11; step *= 0.5) {
        bool improved = true;
        while (improved) {
            improved = false;
            for (auto [dx, dy] : {std::pair{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}}) {
                const double v = eval(bx + dx, by + dy);
                if (v > best + 1e-16) {
                    best = v;
                    bx += dx;
                    by += dy;
                    improved = true;
                }
            }
        }
    }
    return best;
}

/// Dense vector of a symmetric state from its Dicke coefficients, summing
/// over basis strings by popcount.
inline VectorXcd dicke_to_dense(const VectorXcd& c, int n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    VectorXcd out(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
        const int ones = __builtin_popcountll(static_cast<unsigned long long>(b));
        double count = 1.0;
        for (int i = 0; i < ones; ++i) count = count * (n - i) / (i + 1);
        out[b] = c[ones] / std::sqrt(count);
    }
    return out;
}

}  // namespace oracle
