#include "tilekit/grid_solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>
#include <vector>

namespace tilekit {

SolverLimits SolverLimits::fromEnv() {
  SolverLimits l;
  if (const char* s = std::getenv("TILEKIT_MEM_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) l.memBudget = static_cast<std::size_t>(v);
  }
  return l;
}

namespace {

constexpr Weight kNoPath = kForbid * 1000;  // "infinity" for DP accumulators

struct PinMap {
  // tile index pinned at a cell, or -1
  std::vector<int> pin;
  int n;
  explicit PinMap(const BoundaryCondition& bc, int n_) : pin(n_ * n_, -1), n(n_) {
    for (auto& [site, tile] : boundaryPins(bc, n_)) {
      int& slot = pin[(site.row - 1) * n_ + (site.col - 1)];
      slot = tile;
    }
  }
  int at(int row, int col) const { return pin[(row - 1) * n + (col - 1)]; }
};

// ---------------------------------------------------------------------------
// Brute force

struct BruteForcer {
  const TilingInstance& inst;
  const int n, m;
  const bool wrap;
  const PinMap pins;
  const BigInt bound;
  Tiling t;
  Weight cost = 0;

  SolveResult res;
  bool haveMin = false;
  Weight best = 0;

  BruteForcer(const TilingInstance& inst_, int n_)
      : inst(inst_),
        n(n_),
        m(inst_.rules.size()),
        wrap(inst_.bc.wraps()),
        pins(inst_.bc, n_),
        bound(inst_.costBound.eval(n_)),
        t(n_, n_) {}

  void place(int idx) {
    if (idx == n * n) {
      if (BigInt(cost) <= bound) {
        res.count += 1;
        if (!res.exists) {
          res.exists = true;
          res.witness = t;
        }
      }
      if (!haveMin || cost < best) {
        haveMin = true;
        best = cost;
        res.witnessMin = t;
      }
      return;
    }
    const int r = idx / n + 1, c = idx % n + 1;
    const int pinned = pins.at(r, c);
    const auto& rules = inst.rules;
    for (int tile = 0; tile < m; ++tile) {
      if (pinned >= 0 && tile != pinned) continue;
      Weight add = 0;
      if (c > 1) add = addWeight(add, rules.h(t.at(r, c - 1), tile));
      if (r > 1) add = addWeight(add, rules.v(tile, t.at(r - 1, c)));
      if (wrap && c == n) add = addWeight(add, rules.h(tile, t.at(r, 1)));
      if (wrap && r == n) add = addWeight(add, rules.v(t.at(1, c), tile));
      if (wrap && n == 1) {
        // single-cell torus: both self pairs
        add = addWeight(add, addWeight(rules.h(tile, tile), rules.v(tile, tile)));
      }
      if (isForbid(add)) continue;
      t.at(r, c) = tile;
      cost += add;
      place(idx + 1);
      cost -= add;
    }
  }

  SolveResult run() {
    if (n == 1 && wrap) {
      // handled inline above; the generic neighbour code below covers n >= 2
      const int pinned = pins.at(1, 1);
      for (int tile = 0; tile < m; ++tile) {
        if (pinned >= 0 && tile != pinned) continue;
        Weight w = addWeight(inst.rules.h(tile, tile), inst.rules.v(tile, tile));
        if (isForbid(w)) continue;
        if (BigInt(w) <= bound) {
          res.count += 1;
          if (!res.exists) {
            res.exists = true;
            res.witness = Tiling(1, 1, tile);
          }
        }
        if (!haveMin || w < best) {
          haveMin = true;
          best = w;
          res.witnessMin = Tiling(1, 1, tile);
        }
      }
    } else {
      place(0);
    }
    if (haveMin) res.minCost = best;
    return res;
  }
};

// ---------------------------------------------------------------------------
// Row-transfer DP

struct RowTable {
  std::vector<std::vector<int>> rows;  // lexicographically sorted
  std::vector<Weight> rowCost;         // internal horizontal cost (wrap incl.)
  bool overflow = false;
};

RowTable enumerateRows(const RuleSet& rules, int n, bool wrap, std::size_t cap) {
  RowTable table;
  std::vector<int> cur(n);
  const int m = rules.size();

  auto dfs = [&](auto&& self, int col, Weight cost) -> bool {
    if (table.rows.size() > cap) {
      table.overflow = true;
      return false;
    }
    if (col == n) {
      Weight full = cost;
      if (wrap) full = addWeight(full, rules.h(cur[n - 1], cur[0]));
      if (isForbid(full)) return true;
      table.rows.push_back(cur);
      table.rowCost.push_back(full);
      return true;
    }
    for (int tile = 0; tile < m; ++tile) {
      Weight add = col > 0 ? rules.h(cur[col - 1], tile) : 0;
      if (isForbid(add)) continue;
      cur[col] = tile;
      if (!self(self, col + 1, cost + add)) return false;
    }
    return true;
  };
  dfs(dfs, 0, 0);
  return table;
}

struct DpContext {
  const TilingInstance& inst;
  int n;
  RowTable table;
  PinMap pins;
  // Sentinel-free vertical transition cost between row ids, or kNoPath.
  std::vector<Weight> vcost;

  DpContext(const TilingInstance& inst_, int n_, RowTable t)
      : inst(inst_), n(n_), table(std::move(t)), pins(inst_.bc, n_) {
    const std::size_t R = table.rows.size();
    vcost.assign(R * R, kNoPath);
    for (std::size_t a = 0; a < R; ++a)
      for (std::size_t b = 0; b < R; ++b) {
        Weight w = 0;
        for (int c = 0; c < n; ++c) {
          w = addWeight(w, inst.rules.v(table.rows[b][c], table.rows[a][c]));
          if (isForbid(w)) break;
        }
        if (!isForbid(w)) vcost[a * R + b] = w;
      }
  }

  bool rowOkAt(std::size_t id, int row) const {
    for (int c = 1; c <= n; ++c) {
      int p = pins.at(row, c);
      if (p >= 0 && table.rows[id][c - 1] != p) return false;
    }
    return true;
  }

  Tiling assemble(const std::vector<std::size_t>& ids) const {
    Tiling t(n, n);
    for (int r = 1; r <= n; ++r)
      for (int c = 1; c <= n; ++c) t.at(r, c) = table.rows[ids[r - 1]][c - 1];
    return t;
  }
};

struct PathOpt {
  Weight cost = kNoPath;
  std::vector<std::size_t> ids;
};

struct GridDp {
  const DpContext& ctx;
  explicit GridDp(const DpContext& c) : ctx(c) {}

  // Suffix minima given an optional forced first row (periodic mode wraps
  // the last row back onto it vertically).
  PathOpt solveMin(std::optional<std::size_t> first) const {
    const std::size_t R = ctx.table.rows.size();
    const int n = ctx.n;
    std::vector<std::vector<Weight>> suf(n + 2, std::vector<Weight>(R, kNoPath));
    for (std::size_t i = 0; i < R; ++i) {
      if (!ctx.rowOkAt(i, n)) continue;
      Weight w = ctx.table.rowCost[i];
      if (first) {
        // wrap: row 1 sits below row n on the torus
        Weight e = ctx.vcost[(i)*R + *first];
        if (e >= kNoPath) continue;
        w += e;
      }
      suf[n][i] = w;
    }
    for (int r = n - 1; r >= 1; --r) {
      for (std::size_t i = 0; i < R; ++i) {
        if (!ctx.rowOkAt(i, r)) continue;
        if (first && r == 1 && i != *first) continue;
        Weight best = kNoPath;
        for (std::size_t j = 0; j < R; ++j) {
          if (suf[r + 1][j] >= kNoPath) continue;
          Weight e = ctx.vcost[i * R + j];
          if (e >= kNoPath) continue;
          Weight cand = ctx.table.rowCost[i] + e + suf[r + 1][j];
          if (cand < best) best = cand;
        }
        suf[r][i] = best;
      }
    }
    PathOpt out;
    std::size_t pick = R;
    for (std::size_t i = 0; i < R; ++i) {
      if (first && i != *first) continue;
      if (suf[1][i] < out.cost) {
        out.cost = suf[1][i];
        pick = i;
      }
    }
    if (pick == R) return out;
    // Greedy lex-least reconstruction; rows are lex-sorted so the first
    // consistent id is the least.
    out.ids.assign(ctx.n, 0);
    out.ids[0] = pick;
    Weight remaining = out.cost;
    for (int r = 1; r < n; ++r) {
      std::size_t i = out.ids[r - 1];
      remaining -= ctx.table.rowCost[i];
      for (std::size_t j = 0; j < R; ++j) {
        Weight e = ctx.vcost[i * R + j];
        if (e >= kNoPath || suf[r + 1][j] >= kNoPath) continue;
        if (e + suf[r + 1][j] == remaining) {
          out.ids[r] = j;
          remaining -= e;
          break;
        }
      }
    }
    return out;
  }

  // Number of tilings with total cost <= bound (sentinel-free throughout).
  BigInt solveCount(std::optional<std::size_t> first, const BigInt& bound) const {
    const std::size_t R = ctx.table.rows.size();
    const int n = ctx.n;
    using Dist = std::map<Weight, BigInt>;
    std::vector<Dist> cur(R);
    for (std::size_t i = 0; i < R; ++i) {
      if (!ctx.rowOkAt(i, 1)) continue;
      if (first && i != *first) continue;
      cur[i][ctx.table.rowCost[i]] += 1;
    }
    for (int r = 2; r <= n; ++r) {
      std::vector<Dist> next(R);
      for (std::size_t i = 0; i < R; ++i) {
        if (cur[i].empty()) continue;
        for (std::size_t j = 0; j < R; ++j) {
          if (!ctx.rowOkAt(j, r)) continue;
          Weight e = ctx.vcost[i * R + j];
          if (e >= kNoPath) continue;
          for (auto& [w, cnt] : cur[i]) next[j][w + e + ctx.table.rowCost[j]] += cnt;
        }
      }
      cur.swap(next);
    }
    BigInt total = 0;
    for (std::size_t i = 0; i < R; ++i) {
      Weight wrapEdge = 0;
      if (first) {
        Weight e = ctx.vcost[i * R + *first];
        if (e >= kNoPath) continue;
        wrapEdge = e;
      }
      for (auto& [w, cnt] : cur[i])
        if (BigInt(w + wrapEdge) <= bound) total += cnt;
    }
    return total;
  }
};

// ---------------------------------------------------------------------------
// Backtracking with forward checking (hard constraints only)

struct Backtracker {
  const TilingInstance& inst;
  const int n, m;
  const bool wrap;
  const int words;
  std::vector<uint64_t> rightOf, leftOf, aboveOf, belowOf;  // per tile masks

  explicit Backtracker(const TilingInstance& inst_, int n_)
      : inst(inst_),
        n(n_),
        m(inst_.rules.size()),
        wrap(inst_.bc.wraps()),
        words((inst_.rules.size() + 63) / 64) {
    rightOf.assign((std::size_t)m * words, 0);
    leftOf.assign((std::size_t)m * words, 0);
    aboveOf.assign((std::size_t)m * words, 0);
    belowOf.assign((std::size_t)m * words, 0);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        if (!isForbid(inst.rules.h(a, b))) {
          rightOf[(std::size_t)a * words + b / 64] |= 1ull << (b % 64);
          leftOf[(std::size_t)b * words + a / 64] |= 1ull << (a % 64);
        }
        // v(a,b): a below b -> b may sit above a, a may sit below b
        if (!isForbid(inst.rules.v(a, b))) {
          aboveOf[(std::size_t)a * words + b / 64] |= 1ull << (b % 64);
          belowOf[(std::size_t)b * words + a / 64] |= 1ull << (a % 64);
        }
      }
  }

  struct Neighbour {
    int cell;
    const uint64_t* masks;  // masks[t]: allowed values of *this* cell given
                            // neighbour value t
  };
  std::vector<std::vector<Neighbour>> nbrs;

  void buildNeighbours() {
    nbrs.assign(n * n, {});
    auto id = [&](int r, int c) { return r * n + c; };
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        auto& list = nbrs[id(r, c)];
        auto addNb = [&](int rr, int cc, const std::vector<uint64_t>& m_) {
          list.push_back({id(rr, cc), m_.data()});
        };
        // value of this cell constrained by neighbour's value
        if (c + 1 < n) addNb(r, c + 1, leftOf);  // this is left of (r,c+1)
        else if (wrap && n > 1) addNb(r, 0, leftOf);
        if (c > 0) addNb(r, c - 1, rightOf);
        else if (wrap && n > 1) addNb(r, n - 1, rightOf);
        if (r + 1 < n) addNb(r + 1, c, aboveOf);  // this above (r+1,c)
        else if (wrap && n > 1) addNb(0, c, aboveOf);
        if (r > 0) addNb(r - 1, c, belowOf);
        else if (wrap && n > 1) addNb(n - 1, c, belowOf);
      }
  }

  using Domains = std::vector<uint64_t>;  // n*n*words

  bool propagate(Domains& dom, std::vector<int>& queue) const {
    while (!queue.empty()) {
      int y = queue.back();
      queue.pop_back();
      // revise every neighbour of y against y's current domain; a cell can be
      // adjacent to y along more than one edge on small tori, so apply every
      // matching orientation
      for (const auto& nb : nbrs[y]) {
        int x = nb.cell;
        for (const auto& back : nbrs[x]) {
          if (back.cell != y) continue;
          std::vector<uint64_t> support(words, 0);
          const uint64_t* dy = &dom[(std::size_t)y * words];
          for (int w = 0; w < words; ++w) {
            uint64_t bits = dy[w];
            while (bits) {
              int b = std::countr_zero(bits);
              bits &= bits - 1;
              int t = w * 64 + b;
              const uint64_t* mask = back.masks + (std::size_t)t * words;
              for (int k = 0; k < words; ++k) support[k] |= mask[k];
            }
          }
          bool changed = false, empty = true;
          uint64_t* dx = &dom[(std::size_t)x * words];
          for (int k = 0; k < words; ++k) {
            uint64_t nv = dx[k] & support[k];
            if (nv != dx[k]) changed = true;
            dx[k] = nv;
            if (nv) empty = false;
          }
          if (empty) return false;
          if (changed) queue.push_back(x);
        }
      }
    }
    return true;
  }

  int domainSize(const Domains& dom, int cell) const {
    int s = 0;
    for (int k = 0; k < words; ++k) s += std::popcount(dom[(std::size_t)cell * words + k]);
    return s;
  }

  bool search(Domains dom, std::vector<int>& out) const {
    // find most constrained unassigned cell
    int best = -1, bestSize = m + 1;
    for (int cellIdx = 0; cellIdx < n * n; ++cellIdx) {
      int s = domainSize(dom, cellIdx);
      if (s == 0) return false;
      if (s > 1 && s < bestSize) {
        bestSize = s;
        best = cellIdx;
      }
    }
    if (best < 0) {  // fully assigned
      out.assign(n * n, 0);
      for (int cellIdx = 0; cellIdx < n * n; ++cellIdx)
        for (int k = 0; k < words; ++k)
          if (dom[(std::size_t)cellIdx * words + k])
            out[cellIdx] = k * 64 + std::countr_zero(dom[(std::size_t)cellIdx * words + k]);
      return true;
    }
    for (int k = 0; k < words; ++k) {
      uint64_t bits = dom[(std::size_t)best * words + k];
      while (bits) {
        int b = std::countr_zero(bits);
        bits &= bits - 1;
        Domains trial = dom;
        for (int w = 0; w < words; ++w) trial[(std::size_t)best * words + w] = 0;
        trial[(std::size_t)best * words + k] = 1ull << b;
        std::vector<int> queue{best};
        if (propagate(trial, queue) && search(std::move(trial), out)) return true;
      }
    }
    return false;
  }

  Domains initialDomains(const PinMap& pins) const {
    Domains dom((std::size_t)n * n * words, 0);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        int p = pins.at(r + 1, c + 1);
        uint64_t* d = &dom[((std::size_t)r * n + c) * words];
        if (p >= 0) {
          d[p / 64] = 1ull << (p % 64);
        } else {
          for (int t = 0; t < m; ++t) d[t / 64] |= 1ull << (t % 64);
        }
      }
    return dom;
  }

  // Deterministic search: most-constrained cell first (lowest index on ties),
  // tile values ascending.
  std::optional<Tiling> solve() {
    buildNeighbours();
    PinMap pins(inst.bc, n);
    Domains dom = initialDomains(pins);
    std::vector<int> queue;
    for (int cellIdx = 0; cellIdx < n * n; ++cellIdx) queue.push_back(cellIdx);
    if (!propagate(dom, queue)) return std::nullopt;
    std::vector<int> out;
    if (!search(dom, out)) return std::nullopt;
    Tiling t(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) t.at(r + 1, c + 1) = out[r * n + c];
    return t;
  }
};

}  // namespace

SolveResult bruteForceGrid(const TilingInstance& instance, int n, const SolverLimits& limits) {
  instance.checkInvariants();
  if (n < 1) throw std::invalid_argument("N must be positive");
  double total = std::pow((double)instance.rules.size(), (double)n * n);
  if (total > limits.enumerationCap)
    throw ResourceError("bruteForceGrid: m^(N^2) exceeds the enumeration cap");
  BruteForcer bf(instance, n);
  return bf.run();
}

SolveResult solveGrid(const TilingInstance& instance, int n, SolveMode mode,
                      const SolverLimits& limits) {
  instance.checkInvariants();
  if (n < 1) throw std::invalid_argument("N must be positive");

  const bool wrap = instance.bc.wraps();
  RowTable table = enumerateRows(instance.rules, n, wrap, limits.maxRows);
  const BigInt bound = instance.costBound.eval(n);

  // Periodic DP scans every candidate first row, so it only pays off while
  // the row table is small.
  if (wrap && table.rows.size() > 512) table.overflow = true;

  if (!table.overflow) {
    const std::size_t R = table.rows.size();
    // vcost matrix memory check
    if (R * R * sizeof(Weight) > limits.memBudget)
      throw ResourceError("solveGrid: row transition table exceeds the memory budget");
    DpContext ctx(instance, n, std::move(table));
    GridDp dp(ctx);
    SolveResult res;
    const std::size_t rowCount = ctx.table.rows.size();

    auto runMin = [&]() -> PathOpt {
      if (!wrap) return dp.solveMin(std::nullopt);
      PathOpt best;
      // pass 1: global optimum over all first rows
      for (std::size_t f = 0; f < rowCount; ++f) {
        PathOpt p = dp.solveMin(f);
        if (p.cost < best.cost) best = p;
      }
      // lex-least witness: first (lex) first-row achieving the optimum, and
      // solveMin's inner reconstruction is already lex-greedy
      for (std::size_t f = 0; f < rowCount; ++f) {
        PathOpt p = dp.solveMin(f);
        if (p.cost == best.cost) return p;
      }
      return best;
    };

    switch (mode) {
      case SolveMode::MinCost: {
        PathOpt p = runMin();
        if (p.cost < kNoPath) {
          res.minCost = p.cost;
          res.exists = BigInt(p.cost) <= bound;
          res.witnessMin = ctx.assemble(p.ids);
          res.witness = res.witnessMin;
        }
        return res;
      }
      case SolveMode::Exists: {
        PathOpt p = runMin();
        if (p.cost < kNoPath && BigInt(p.cost) <= bound) {
          res.exists = true;
          res.minCost = p.cost;
          res.witness = ctx.assemble(p.ids);
        }
        return res;
      }
      case SolveMode::Count: {
        if (!wrap) {
          res.count = dp.solveCount(std::nullopt, bound);
        } else {
          for (std::size_t f = 0; f < rowCount; ++f) res.count += dp.solveCount(f, bound);
        }
        res.exists = res.count > 0;
        return res;
      }
    }
    return res;
  }

  // Backtracking fallback: hard constraints only.
  if (!instance.rules.unweighted())
    throw ResourceError(
        "solveGrid: weighted instance too large for row DP (no backtracking route for weights)");
  if (mode == SolveMode::Count)
    throw ResourceError("solveGrid: counting requires the row-DP route; instance too large");

  Backtracker bt(instance, n);
  SolveResult res;
  auto witness = bt.solve();
  if (witness) {
    res.exists = true;
    res.minCost = 0;
    res.witness = witness;
    res.witnessMin = witness;
  } else if (mode == SolveMode::MinCost) {
    res.minCost = std::nullopt;
  }
  return res;
}

}  // namespace tilekit
