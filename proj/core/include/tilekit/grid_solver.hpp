#pragma once

#include <optional>

#include "tilekit/tiles.hpp"

namespace tilekit {

enum class SolveMode { Exists, Count, MinCost };

struct SolveResult {
  bool exists = false;
  BigInt count = 0;
  std::optional<Weight> minCost;     // empty = infeasible
  std::optional<Tiling> witness;     // cost <= p(N) witness (Exists semantics)
  std::optional<Tiling> witnessMin;  // a minimum-cost witness (MinCost semantics)
};

struct SolverLimits {
  // Hard cap on the brute-force search tree (m^(N^2)).
  double enumerationCap = 6.0e8;
  // Row-transfer DP is used while the valid-row count stays below this;
  // beyond it the solver falls back to backtracking.
  std::size_t maxRows = 4096;
  // Rough memory budget in bytes; TILEKIT_MEM_BUDGET overrides when set.
  std::size_t memBudget = std::size_t(2) << 30;

  static SolverLimits fromEnv();
};

// Exact solver.  Row-transfer dynamic programming over horizontally
// consistent rows when the row count fits the budget, otherwise cell-by-cell
// backtracking with forward checking and most-constrained-cell ordering.
// Witnesses are the lexicographically least tiling in row-major tile-index
// order.  Deterministic for fixed input.
SolveResult solveGrid(const TilingInstance& instance, int n, SolveMode mode,
                      const SolverLimits& limits = SolverLimits::fromEnv());

// Exhaustive reference oracle over all m^(N^2) assignments.  Answers all
// three modes at once.
SolveResult bruteForceGrid(const TilingInstance& instance, int n,
                           const SolverLimits& limits = SolverLimits::fromEnv());

}  // namespace tilekit
