// Test-side oracles, coded independently of the library paths they check.
#pragma once

#include "csdfd/rng.hpp"
#include "csdfd/vec.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracles {

// Sort-based Euclidean projection onto the probability simplex (general n),
// independent of the closed-form 2-D projection in the library.
inline std::vector<double> simplex_project_sort(std::vector<double> raw) {
    std::vector<double> sorted = raw;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double running = 0.0;
    double theta = 0.0;
    int support = 0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        running += sorted[k];
        const double candidate = (running - 1.0) / static_cast<double>(k + 1);
        if (sorted[k] - candidate > 0.0) {
            theta = candidate;
            support = static_cast<int>(k + 1);
        }
    }
    (void)support;
    for (double& v : raw) v = std::max(0.0, v - theta);
    return raw;
}

// Pairwise-counting AUC, ties at 1/2. O(n^2).
inline double auc_pairwise(const std::vector<double>& scores, const std::vector<double>& labels) {
    double wins = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < scores.size(); ++a) {
        if (labels[a] != 1.0) continue;
        for (std::size_t b = 0; b < scores.size(); ++b) {
            if (labels[b] != 0.0) continue;
            ++pairs;
            if (scores[a] > scores[b]) wins += 1.0;
            else if (scores[a] == scores[b]) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

// Element-by-element transcription of the projection-layer gradient formula:
//   g1 + g2 - tau / (|g1| |g2|) * (g1 g1 g2 + g2 g2 g1), all products Hadamard.
inline std::vector<double> cgr_gradient_elementwise(const std::vector<double>& g1,
                                                    const std::vector<double>& g2, double tau) {
    double n1 = 0.0, n2 = 0.0;
    for (double v : g1) n1 += v * v;
    for (double v : g2) n2 += v * v;
    n1 = std::sqrt(n1);
    n2 = std::sqrt(n2);
    const double gamma = tau / (n1 * n2);
    std::vector<double> out(g1.size());
    for (std::size_t i = 0; i < g1.size(); ++i) {
        out[i] = g1[i] + g2[i] - gamma * (g1[i] * g1[i] * g2[i] + g2[i] * g2[i] * g1[i]);
    }
    return out;
}

inline std::vector<double> random_vector(csdfd::Rng& rng, std::size_t n) {
    std::vector<double> out(n);
    for (double& v : out) v = rng.normal();
    return out;
}

// Ridge-regularized least-squares probe: w = (X^T X + lambda I)^-1 X^T y via
// Gaussian elimination. Closed-form, independent of the MLP machinery.
inline std::vector<double> least_squares_probe(const csdfd::Matrix& x,
                                               const std::vector<double>& y,
                                               double lambda = 1e-6) {
    const std::size_t d = x.cols;
    std::vector<std::vector<double>> a(d, std::vector<double>(d + 1, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double acc = 0.0;
            for (std::size_t r = 0; r < x.rows; ++r) acc += x.at(r, i) * x.at(r, j);
            a[i][j] = acc + (i == j ? lambda : 0.0);
        }
        double acc = 0.0;
        for (std::size_t r = 0; r < x.rows; ++r) acc += x.at(r, i) * y[r];
        a[i][d] = acc;
    }
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < d; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        }
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (std::size_t j = col; j <= d; ++j) a[r][j] -= f * a[col][j];
        }
    }
    std::vector<double> w(d);
    for (std::size_t i = 0; i < d; ++i) w[i] = a[i][d] / a[i][i];
    return w;
}

}  // namespace oracles
