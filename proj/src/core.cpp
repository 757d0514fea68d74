#include "macrolab/core.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

namespace macrolab {

namespace {

int initial_cap() {
    if (const char* env = std::getenv("MACROLAB_DENSE_CAP")) {
        char* end = nullptr;
        const long value = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && value >= 1 && value <= 30) {
            return static_cast<int>(value);
        }
    }
    return kDefaultDenseCap;
}

std::atomic<int>& cap_storage() {
    static std::atomic<int> cap{initial_cap()};
    return cap;
}

}  // namespace

char axis_name(Axis axis) {
    switch (axis) {
        case Axis::X: return 'x';
        case Axis::Y: return 'y';
        case Axis::Z: return 'z';
    }
    return '?';
}

ResourceLimit::ResourceLimit(const std::string& what, int n_qubits, int cap)
    : std::runtime_error(what + ": n=" + std::to_string(n_qubits) +
                         " exceeds dense cap " + std::to_string(cap)),
      n_qubits_(n_qubits),
      cap_(cap) {}

int dense_cap() { return cap_storage().load(std::memory_order_relaxed); }

void set_dense_cap(int cap) {
    if (cap < 1 || cap > 30) {
        throw std::invalid_argument("dense cap must lie in [1, 30]");
    }
    cap_storage().store(cap, std::memory_order_relaxed);
}

void require_dense(int n_qubits, const char* what) {
    const int cap = dense_cap();
    if (n_qubits > cap) throw ResourceLimit(what, n_qubits, cap);
}

double log_binomial(int n, int k) {
    if (k < 0 || k > n) return -INFINITY;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double result = 1.0;
    for (int i = 1; i <= k; ++i) {
        result = result * (n - k + i) / i;
    }
    return result < 9.0e15 ? std::round(result) : result;
}

}  // namespace macrolab
