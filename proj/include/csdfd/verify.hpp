#pragma once

#include "csdfd/rng.hpp"
#include "csdfd/vec.hpp"

#include <string>
#include <vector>

namespace csdfd {

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;  // worst-case residual, check-specific
    std::string detail;
};

// Oracle suites behind the `verify` subcommand: dual grid optimality,
// constraint activeness, ball-sampled max-min dominance, finite-difference
// backprop checks, simplex projection properties, AUC pairwise counting.
// `full` raises the sample counts to acceptance scale.
std::vector<CheckResult> run_verification(bool full);

// Seeded standard-normal vector; shared by verification and tests.
DenseVector random_gradient(Rng& rng, std::size_t dim);

}  // namespace csdfd
