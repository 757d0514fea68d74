// core.hpp
// Shared scalar aliases, error types and the dense-representation size cap.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace macrolab {

using Complex = std::complex<double>;
using Amplitudes = Eigen::VectorXcd;

/// Pauli axis; the integer value is the row offset inside a 3-block.
enum class Axis : int { X = 0, Y = 1, Z = 2 };

inline constexpr Axis kAxes[3] = {Axis::X, Axis::Y, Axis::Z};

char axis_name(Axis axis);

/// A dense representation would exceed the configured qubit cap.
class ResourceLimit : public std::runtime_error {
public:
    ResourceLimit(const std::string& what, int n_qubits, int cap);
    int n_qubits() const { return n_qubits_; }
    int cap() const { return cap_; }

private:
    int n_qubits_;
    int cap_;
};

/// An iterative search hit an orthogonal (zero-overlap) configuration.
class RestartRequired : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultDenseCap = 20;

/// Largest qubit count allowed for dense state vectors. Initialised from
/// MACROLAB_DENSE_CAP when set, otherwise kDefaultDenseCap.
int dense_cap();
void set_dense_cap(int cap);

/// Throws ResourceLimit if n exceeds the dense cap.
void require_dense(int n_qubits, const char* what);

double log_binomial(int n, int k);
double binomial(int n, int k);

/// Bit mask of qubit `site` (0-based) in an n-qubit basis index. Site 0 is
/// the most significant bit.
inline std::uint64_t site_mask(int n_qubits, int site) {
    return std::uint64_t{1} << (n_qubits - 1 - site);
}

}  // namespace macrolab
