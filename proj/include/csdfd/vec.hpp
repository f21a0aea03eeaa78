#pragma once

#include <cstddef>
#include <vector>

namespace csdfd {

// Flat sequence of 64-bit floats. All gradient surgery in this library
// operates on flat parameter-space vectors with a frozen layout, so a plain
// vector plus free functions is the whole linear-algebra story.
using DenseVector = std::vector<double>;
using GradientVector = DenseVector;

// Row-major dense matrix; used for batches of samples and layer weights.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    bool operator==(const Matrix&) const = default;
};

double dot(const DenseVector& a, const DenseVector& b);
double norm(const DenseVector& a);

DenseVector add(const DenseVector& a, const DenseVector& b);
DenseVector sub(const DenseVector& a, const DenseVector& b);
DenseVector scaled(const DenseVector& a, double s);
DenseVector hadamard(const DenseVector& a, const DenseVector& b);

// y += s * x
void axpy(double s, const DenseVector& x, DenseVector& y);

bool all_finite(const DenseVector& a);
bool all_finite(const Matrix& m);

// Throws std::invalid_argument mentioning `what` when lengths differ.
void require_same_length(const DenseVector& a, const DenseVector& b, const char* what);

// cos(a, b), or 0 when either norm is below eps. For logging paths that
// must never throw; conflict measurement proper lives in cgr.
double safe_cosine(const DenseVector& a, const DenseVector& b, double eps = 1e-12);

}  // namespace csdfd
