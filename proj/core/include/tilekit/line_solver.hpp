#pragma once

#include <optional>

#include "tilekit/grid_solver.hpp"
#include "tilekit/tiles.hpp"

namespace tilekit {

// Directed graph over tiles: edge (i,j) present iff placing i left of j is
// allowed, carrying that edge's cost.  Nodes may carry their own cost (used
// by the pair-of-rows analyses, zero for plain line tiling).
struct TileGraph {
  int m = 0;
  std::vector<Weight> edge;      // m*m, kForbid = no edge
  std::vector<Weight> nodeCost;  // size m

  Weight e(int i, int j) const { return edge[i * m + j]; }
  bool hasEdge(int i, int j) const { return !isForbid(edge[i * m + j]); }

  static TileGraph fromRules(const RuleSet& rules);
};

// A simple path (no repeated nodes); when first == last and the walk has at
// least one edge it is a simple cycle rooted at that node.  `length` counts
// nodes for paths and edges (= distinct nodes) for cycles.  Costs follow the
// pair-of-rows convention: a path pays every node it visits, a cycle pays
// each distinct node once.
struct SimpleWalk {
  std::vector<int> nodes;
  long long length = 0;
  Weight cost = 0;
  uint64_t nodeSet = 0;
};

struct CycleCatalog {
  std::vector<SimpleWalk> paths;   // t0 -> t1, deterministic order
  std::vector<SimpleWalk> cycles;  // all simple cycles, rooted
};

// Exhaustive catalog of simple paths t0 -> t1 and all rooted simple cycles.
// Requires m <= 64.
CycleCatalog simpleCycles(const TileGraph& g, int t0, int t1);

// True iff the cycles of Q can be admitted one at a time, each sharing a node
// with the path or a previously admitted cycle.
bool isAllowedSet(uint64_t pathNodes, const std::vector<uint64_t>& cycleNodes);
bool isAllowedSet(const SimpleWalk& p, const std::vector<SimpleWalk>& q);

// Unbounded-knapsack feasibility: can `target` be written as a nonnegative
// combination of `lengths`?  Direct DP below m'*g (g = lcm), gcd divisibility
// beyond.
bool knapsackReachable(const std::vector<long long>& lengths, const BigInt& target);

// Per-length best costs with the lookup table the minimum-cost queries use.
struct KnapsackTable {
  std::vector<long long> lengths;  // distinct a_k
  std::vector<Weight> costs;       // per-length best c_k
  long long g = 1;                 // lcm of the lengths
  std::vector<Weight> minCost;     // index t: min cost of writing t, or kNoLine
  static constexpr Weight kUnreachable = kForbid * 1000000;

  static KnapsackTable build(const std::vector<long long>& lengths,
                             const std::vector<Weight>& costs);
  // Minimum cost of reaching `target`; empty when unreachable.  Polylog in
  // the magnitude of target.
  std::optional<BigInt> minCostFor(const BigInt& target) const;
  bool reachable(const BigInt& target) const;
  // Per-length multiplicities achieving minCostFor(target); target must fit
  // in a long long (witness materialization only).
  std::optional<std::vector<long long>> copiesFor(long long target) const;
};

struct LineResult {
  bool exists = false;
  std::optional<BigInt> minCost;
  std::optional<std::vector<int>> witness;  // explicit line tiling
};

// The polynomial-time line solver: N arrives in binary (arbitrary precision)
// and the runtime after constant preprocessing is polylog in N.  Witnesses
// are materialized only for N below `witnessCap`.
LineResult solveLine(const RuleSet& rules, int t0, int t1, const BigInt& n, SolveMode mode,
                     long long witnessCap = 100000);
LineResult solveLineOnGraph(const TileGraph& g, int t0, int t1, const BigInt& n, SolveMode mode,
                            long long witnessCap = 100000);

// Direct Viterbi over walk length (poly in N); start/end masks select the
// admissible endpoints.  Used by the pair-of-rows analyses and as a simple
// reference route.
struct LineDpResult {
  bool exists = false;
  std::optional<Weight> minCost;
  std::vector<int> witness;
};
LineDpResult lineDP(const TileGraph& g, const std::vector<uint8_t>& startOk,
                    const std::vector<uint8_t>& endOk, long long n);

}  // namespace tilekit
