#include "csdfd/vec.hpp"

#include <cmath>
#include <stdexcept>

namespace csdfd {

double dot(const DenseVector& a, const DenseVector& b) {
    require_same_length(a, b, "dot");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

double norm(const DenseVector& a) {
    double acc = 0.0;
    for (double v : a) acc += v * v;
    return std::sqrt(acc);
}

DenseVector add(const DenseVector& a, const DenseVector& b) {
    require_same_length(a, b, "add");
    DenseVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

DenseVector sub(const DenseVector& a, const DenseVector& b) {
    require_same_length(a, b, "sub");
    DenseVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

DenseVector scaled(const DenseVector& a, double s) {
    DenseVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * s;
    return out;
}

DenseVector hadamard(const DenseVector& a, const DenseVector& b) {
    require_same_length(a, b, "hadamard");
    DenseVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

void axpy(double s, const DenseVector& x, DenseVector& y) {
    require_same_length(x, y, "axpy");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

bool all_finite(const DenseVector& a) {
    for (double v : a) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

bool all_finite(const Matrix& m) {
    for (double v : m.data) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void require_same_length(const DenseVector& a, const DenseVector& b, const char* what) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(std::string(what) + ": length mismatch (" +
                                    std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
}

double safe_cosine(const DenseVector& a, const DenseVector& b, double eps) {
    const double na = norm(a);
    const double nb = norm(b);
    if (na <= eps || nb <= eps) return 0.0;
    double c = dot(a, b) / (na * nb);
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return c;
}

}  // namespace csdfd
