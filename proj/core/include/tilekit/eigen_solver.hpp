#pragma once

#include <functional>
#include <vector>

#include "tilekit/clock.hpp"

namespace tilekit {

struct EigenPairs {
  std::vector<double> values;                // k smallest, ascending
  std::vector<std::vector<double>> vectors;  // matching unit eigenvectors
  int iterations = 0;
  std::vector<double> residuals;             // ||Hx - lambda x|| per pair
};

struct EigenOptions {
  double tol = 1e-11;        // absolute residual target per pair
  int maxBasis = 64;         // Lanczos vectors kept between restarts
  int maxRestarts = 400;
  unsigned long long seed = 12345;  // deterministic start vector
  std::int64_t denseCutoff = 3200;  // dense diagonalization below this
};

// k smallest eigenpairs of a symmetric operator.  Dense diagonalization at
// small dimensions; otherwise thick-restart Lanczos with full
// reorthogonalization against the retained basis, matrix-free application.
EigenPairs lowestEigenpairs(const SparseOperator& h, int k, const EigenOptions& opts = {});

// Generic entry point for matrix-free operators.
EigenPairs lowestEigenpairs(std::int64_t dim,
                            const std::function<void(const double*, double*)>& apply, int k,
                            const EigenOptions& opts = {});

}  // namespace tilekit
