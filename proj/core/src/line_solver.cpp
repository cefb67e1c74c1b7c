#include "tilekit/line_solver.hpp"

#include <algorithm>
#include <numeric>

namespace tilekit {

namespace {
constexpr Weight kNoLine = KnapsackTable::kUnreachable;
}

TileGraph TileGraph::fromRules(const RuleSet& rules) {
  TileGraph g;
  g.m = rules.size();
  g.edge = rules.hWeight;
  g.nodeCost.assign(g.m, 0);
  return g;
}

CycleCatalog simpleCycles(const TileGraph& g, int t0, int t1) {
  if (g.m > 64) throw ResourceError("simpleCycles: more than 64 nodes");
  if (t0 < 0 || t0 >= g.m || t1 < 0 || t1 >= g.m)
    throw std::invalid_argument("simpleCycles: endpoint out of range");
  CycleCatalog cat;

  // Simple paths t0 -> t1, DFS with ascending successors.
  {
    std::vector<int> cur{t0};
    uint64_t used = 1ull << t0;
    Weight cost = g.nodeCost[t0];
    auto dfs = [&](auto&& self) -> void {
      if (cur.back() == t1 && !(cur.size() == 1 && t0 != t1)) {
        cat.paths.push_back({cur, (long long)cur.size(), cost, used});
        // keep extending: longer simple paths may also end at t1 later
      }
      for (int nxt = 0; nxt < g.m; ++nxt) {
        if (used >> nxt & 1) continue;
        if (!g.hasEdge(cur.back(), nxt)) continue;
        Weight add = g.e(cur.back(), nxt) + g.nodeCost[nxt];
        cur.push_back(nxt);
        used |= 1ull << nxt;
        cost += add;
        self(self);
        cost -= add;
        used &= ~(1ull << nxt);
        cur.pop_back();
      }
    };
    dfs(dfs);
  }

  // Rooted simple cycles: closed walks with no interior repetition.  The root
  // node's cost counts once.
  for (int root = 0; root < g.m; ++root) {
    std::vector<int> cur{root};
    uint64_t used = 1ull << root;
    Weight cost = g.nodeCost[root];
    auto dfs = [&](auto&& self) -> void {
      if (cur.size() > 1 && g.hasEdge(cur.back(), root)) {
        Weight total = cost + g.e(cur.back(), root);
        std::vector<int> cyc = cur;
        cyc.push_back(root);
        cat.cycles.push_back({cyc, (long long)cur.size(), total, used});
      }
      if (cur.size() == 1 && g.hasEdge(root, root)) {
        cat.cycles.push_back({{root, root}, 1, cost + g.e(root, root), used});
      }
      for (int nxt = 0; nxt < g.m; ++nxt) {
        if (used >> nxt & 1) continue;
        if (!g.hasEdge(cur.back(), nxt)) continue;
        Weight add = g.e(cur.back(), nxt) + g.nodeCost[nxt];
        cur.push_back(nxt);
        used |= 1ull << nxt;
        cost += add;
        self(self);
        cost -= add;
        used &= ~(1ull << nxt);
        cur.pop_back();
      }
    };
    dfs(dfs);
  }

  auto key = [](const SimpleWalk& w) { return std::make_tuple(w.length, w.cost, w.nodes); };
  std::sort(cat.paths.begin(), cat.paths.end(),
            [&](const SimpleWalk& a, const SimpleWalk& b) { return key(a) < key(b); });
  std::sort(cat.cycles.begin(), cat.cycles.end(),
            [&](const SimpleWalk& a, const SimpleWalk& b) { return key(a) < key(b); });
  return cat;
}

bool isAllowedSet(uint64_t pathNodes, const std::vector<uint64_t>& cycleNodes) {
  uint64_t reach = pathNodes;
  std::vector<bool> in(cycleNodes.size(), false);
  bool progress = true;
  std::size_t remaining = cycleNodes.size();
  while (progress && remaining > 0) {
    progress = false;
    for (std::size_t i = 0; i < cycleNodes.size(); ++i) {
      if (in[i]) continue;
      if (cycleNodes[i] & reach) {
        in[i] = true;
        reach |= cycleNodes[i];
        progress = true;
        --remaining;
      }
    }
  }
  return remaining == 0;
}

bool isAllowedSet(const SimpleWalk& p, const std::vector<SimpleWalk>& q) {
  std::vector<uint64_t> sets;
  sets.reserve(q.size());
  for (const auto& c : q) sets.push_back(c.nodeSet);
  return isAllowedSet(p.nodeSet, sets);
}

KnapsackTable KnapsackTable::build(const std::vector<long long>& lengths,
                                   const std::vector<Weight>& costs) {
  KnapsackTable t;
  if (lengths.empty()) throw std::invalid_argument("knapsack: empty length set");
  // aggregate: keep the cheapest cost per distinct length
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] <= 0) throw std::invalid_argument("knapsack: lengths must be positive");
    bool found = false;
    for (std::size_t k = 0; k < t.lengths.size(); ++k)
      if (t.lengths[k] == lengths[i]) {
        t.costs[k] = std::min(t.costs[k], costs[i]);
        found = true;
      }
    if (!found) {
      t.lengths.push_back(lengths[i]);
      t.costs.push_back(costs[i]);
    }
  }
  t.g = 1;
  for (long long a : t.lengths) {
    t.g = std::lcm(t.g, a);
    if (t.g > 100000) throw ResourceError("knapsack: lcm of cycle lengths too large");
  }
  const long long mPrime = static_cast<long long>(t.lengths.size());
  const long long span = (mPrime + 1) * t.g;  // covers the (m'-1)g..m'g base window
  t.minCost.assign(span, kNoLine);
  t.minCost[0] = 0;
  for (long long v = 1; v < span; ++v) {
    Weight best = kNoLine;
    for (std::size_t k = 0; k < t.lengths.size(); ++k) {
      if (t.lengths[k] > v) continue;
      Weight prev = t.minCost[v - t.lengths[k]];
      if (prev == kNoLine) continue;
      best = std::min(best, prev + t.costs[k]);
    }
    t.minCost[v] = best;
  }
  return t;
}

bool KnapsackTable::reachable(const BigInt& target) const {
  if (target < 0) return false;
  const long long mPrime = static_cast<long long>(lengths.size());
  if (target < mPrime * g) {
    long long v = target.convert_to<long long>();
    return minCost[v] != kNoLine;
  }
  long long d = 0;
  for (long long a : lengths) d = std::gcd(d, a);
  return target % d == 0;
}

std::optional<BigInt> KnapsackTable::minCostFor(const BigInt& target) const {
  if (target < 0) return std::nullopt;
  const long long mPrime = static_cast<long long>(lengths.size());
  if (target < mPrime * g) {
    long long v = target.convert_to<long long>();
    if (minCost[v] == kNoLine) return std::nullopt;
    return BigInt(minCost[v]);
  }
  if (!reachable(target)) return std::nullopt;
  // target = d*g + r with d >= m': take the tabulated optimum at (m'-1)g + r
  // and extend with (d-m'+1) g-length blocks of the best-ratio cycle.
  BigInt r = target % g;
  BigInt d = (target - r) / g;
  long long rr = r.convert_to<long long>();
  long long base = (mPrime - 1) * g + rr;
  if (minCost[base] == kNoLine) return std::nullopt;  // gcd-compatible targets never hit this
  // best ratio c_k/a_k
  std::size_t bestK = 0;
  for (std::size_t k = 1; k < lengths.size(); ++k) {
    // compare costs[k]/lengths[k] < costs[bestK]/lengths[bestK] exactly
    if ((long long)costs[k] * lengths[bestK] < (long long)costs[bestK] * lengths[k]) bestK = k;
  }
  BigInt blocks = d - (mPrime - 1);
  BigInt extra = blocks * (g / lengths[bestK]) * costs[bestK];
  return BigInt(minCost[base]) + extra;
}

std::optional<std::vector<long long>> KnapsackTable::copiesFor(long long target) const {
  if (target < 0 || !reachable(BigInt(target))) return std::nullopt;
  std::vector<long long> uses(lengths.size(), 0);
  const long long mPrime = static_cast<long long>(lengths.size());
  long long v = target;
  if (v >= mPrime * g) {
    // peel whole g-blocks of the best-ratio length down to the table window
    std::size_t bestK = 0;
    for (std::size_t k = 1; k < lengths.size(); ++k)
      if ((long long)costs[k] * lengths[bestK] < (long long)costs[bestK] * lengths[k]) bestK = k;
    long long r = v % g;
    long long base = (mPrime - 1) * g + r;
    long long blocks = (v - base) / g;
    uses[bestK] += blocks * (g / lengths[bestK]);
    v = base;
  }
  while (v > 0) {
    bool stepped = false;
    for (std::size_t k = 0; k < lengths.size(); ++k) {
      if (lengths[k] <= v && minCost[v - lengths[k]] != kNoLine &&
          minCost[v - lengths[k]] + costs[k] == minCost[v]) {
        uses[k]++;
        v -= lengths[k];
        stepped = true;
        break;
      }
    }
    if (!stepped) return std::nullopt;
  }
  return uses;
}

bool knapsackReachable(const std::vector<long long>& lengths, const BigInt& target) {
  std::vector<Weight> zero(lengths.size(), 0);
  return KnapsackTable::build(lengths, zero).reachable(target);
}

namespace {

// Insert admitted cycles into the path to materialize an explicit walk.
std::vector<int> spliceWalk(const SimpleWalk& path, std::vector<const SimpleWalk*> cycles,
                            std::vector<long long> copies) {
  std::vector<int> walk = path.nodes;
  uint64_t reach = path.nodeSet;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < cycles.size(); ++i) {
      if (copies[i] == 0 || !(cycles[i]->nodeSet & reach)) continue;
      // rotate the cycle to start at a node already on the walk
      const auto& cyc = cycles[i]->nodes;  // closed: front == back
      int hook = -1;
      for (std::size_t k = 0; k + 1 < cyc.size(); ++k)
        if (std::find(walk.begin(), walk.end(), cyc[k]) != walk.end()) {
          hook = static_cast<int>(k);
          break;
        }
      std::vector<int> rotated;  // hook ... hook (closed loop body, hook excluded at end)
      for (std::size_t k = 0; k + 1 < cyc.size(); ++k)
        rotated.push_back(cyc[(hook + k) % (cyc.size() - 1)]);
      auto pos = std::find(walk.begin(), walk.end(), rotated.front());
      std::vector<int> block;
      for (long long rep = 0; rep < copies[i]; ++rep)
        block.insert(block.end(), rotated.begin(), rotated.end());
      walk.insert(pos, block.begin(), block.end());
      reach |= cycles[i]->nodeSet;
      copies[i] = 0;
      progress = true;
    }
  }
  return walk;
}

}  // namespace

namespace {

// Direct Viterbi route for dense graphs whose simple-cycle catalogs are not
// desk-enumerable; poly in N rather than polylog.
LineResult solveLineDirect(const TileGraph& g, int t0, int t1, long long n, SolveMode mode) {
  std::vector<uint8_t> startOk(g.m, 0), endOk(g.m, 0);
  startOk[t0] = 1;
  endOk[t1] = 1;
  auto dp = lineDP(g, startOk, endOk, n);
  LineResult out;
  out.exists = dp.exists;
  if (dp.exists) {
    if (mode == SolveMode::MinCost) out.minCost = BigInt(*dp.minCost);
    out.witness = dp.witness;
  }
  return out;
}

}  // namespace

LineResult solveLineOnGraph(const TileGraph& g, int t0, int t1, const BigInt& n, SolveMode mode,
                            long long witnessCap) {
  if (n < 1) throw std::invalid_argument("solveLine: N must be positive");
  // Catalog enumeration is constant-time only as a function of N; its
  // constant explodes with dense tile graphs.  Small-N requests on such
  // graphs take the direct route instead.
  const bool catalogFeasible = g.m <= 6;
  if (!catalogFeasible) {
    if (n <= 1000000) return solveLineDirect(g, t0, t1, n.convert_to<long long>(), mode);
    throw ResourceError("solveLine: cycle catalog too large to enumerate for this graph");
  }
  CycleCatalog cat = simpleCycles(g, t0, t1);

  // Deduplicate cycles for subset enumeration: node set + length, cheapest
  // representative kept.
  struct Entry {
    uint64_t nodes;
    long long length;
    Weight cost;
    const SimpleWalk* walk;
  };
  std::vector<Entry> entries;
  for (const auto& c : cat.cycles) {
    bool merged = false;
    for (auto& e : entries)
      if (e.nodes == c.nodeSet && e.length == c.length) {
        if (c.cost < e.cost) {
          e.cost = c.cost;
          e.walk = &c;
        }
        merged = true;
      }
    if (!merged) entries.push_back({c.nodeSet, c.length, c.cost, &c});
  }
  if (entries.size() > 22) {
    if (n <= 1000000) return solveLineDirect(g, t0, t1, n.convert_to<long long>(), mode);
    throw ResourceError("solveLine: cycle catalog too large to enumerate");
  }

  LineResult res;
  std::optional<BigInt> best;
  struct Achiever {
    const SimpleWalk* path;
    std::vector<const SimpleWalk*> cycles;
    std::vector<long long> copies;
  };
  std::optional<Achiever> bestWitness;

  const std::size_t S = entries.size();
  for (const auto& p : cat.paths) {
    if (BigInt(p.length) > n) continue;
    for (uint64_t sub = 0; sub < (1ull << S); ++sub) {
      std::vector<uint64_t> sets;
      std::vector<std::size_t> idx;
      BigInt baseLen = p.length;
      Weight baseCost = p.cost;
      for (std::size_t k = 0; k < S; ++k)
        if (sub >> k & 1) {
          sets.push_back(entries[k].nodes);
          idx.push_back(k);
          baseLen += entries[k].length;
          baseCost += entries[k].cost;
        }
      if (baseLen > n) continue;
      if (!isAllowedSet(p.nodeSet, sets)) continue;
      BigInt rem = n - baseLen;
      std::vector<long long> lengths;
      std::vector<Weight> costs;
      for (std::size_t k : idx) {
        lengths.push_back(entries[k].length);
        costs.push_back(entries[k].cost);
      }
      if (rem == 0) {
        // exact fit with one copy of each chosen cycle
        res.exists = true;
        if (!best || BigInt(baseCost) < *best) {
          best = BigInt(baseCost);
          bestWitness = Achiever{&p, {}, {}};
          for (std::size_t k : idx) {
            bestWitness->cycles.push_back(entries[k].walk);
            bestWitness->copies.push_back(1);
          }
        }
        continue;
      }
      if (lengths.empty()) continue;  // leftover length but nothing to repeat
      KnapsackTable table = KnapsackTable::build(lengths, costs);
      if (mode == SolveMode::Exists && n > witnessCap) {
        // reachability only; no witness materialization for huge N
        if (table.reachable(rem)) {
          res.exists = true;
          return res;
        }
        continue;
      }
      auto extra = table.minCostFor(rem);
      if (!extra) continue;
      res.exists = true;
      BigInt total = BigInt(baseCost) + *extra;
      if (!best || total < *best) {
        best = total;
        if (n <= witnessCap) {
          auto useByLen = table.copiesFor(rem.convert_to<long long>());
          // attribute per-length uses to the cheapest chosen cycle of that length
          bestWitness = Achiever{&p, {}, {}};
          std::vector<long long> uses = useByLen ? *useByLen
                                                 : std::vector<long long>(table.lengths.size(), 0);
          for (std::size_t q = 0; q < idx.size(); ++q) {
            long long extraCopies = 0;
            for (std::size_t k = 0; k < table.lengths.size(); ++k)
              if (table.lengths[k] == entries[idx[q]].length &&
                  entries[idx[q]].cost == table.costs[k]) {
                extraCopies = uses[k];
                uses[k] = 0;
              }
            bestWitness->cycles.push_back(entries[idx[q]].walk);
            bestWitness->copies.push_back(1 + extraCopies);
          }
        } else {
          bestWitness.reset();
        }
      }
    }
  }

  if (mode == SolveMode::MinCost && best) res.minCost = best;
  if (res.exists && bestWitness && n <= witnessCap) {
    res.witness = spliceWalk(*bestWitness->path, bestWitness->cycles, bestWitness->copies);
  }
  return res;
}

LineResult solveLine(const RuleSet& rules, int t0, int t1, const BigInt& n, SolveMode mode,
                     long long witnessCap) {
  return solveLineOnGraph(TileGraph::fromRules(rules), t0, t1, n, mode, witnessCap);
}

LineDpResult lineDP(const TileGraph& g, const std::vector<uint8_t>& startOk,
                    const std::vector<uint8_t>& endOk, long long n) {
  LineDpResult res;
  if (n < 1) return res;
  const int m = g.m;
  std::vector<Weight> cur(m, kNoLine);
  std::vector<std::vector<int>> choice;  // for witness backtrack
  for (int i = 0; i < m; ++i)
    if (startOk[i]) cur[i] = g.nodeCost[i];
  choice.reserve(n);
  for (long long pos = 1; pos < n; ++pos) {
    std::vector<Weight> next(m, kNoLine);
    std::vector<int> from(m, -1);
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) {
        if (cur[i] == kNoLine || !g.hasEdge(i, j)) continue;
        Weight cand = cur[i] + g.e(i, j) + g.nodeCost[j];
        if (cand < next[j]) {
          next[j] = cand;
          from[j] = i;
        }
      }
    }
    choice.push_back(from);
    cur.swap(next);
  }
  Weight best = kNoLine;
  int last = -1;
  for (int i = 0; i < m; ++i) {
    if (!endOk[i] || cur[i] == kNoLine) continue;
    if (cur[i] < best) {
      best = cur[i];
      last = i;
    }
  }
  if (last < 0) return res;
  res.exists = true;
  res.minCost = best;
  res.witness.assign(n, 0);
  res.witness[n - 1] = last;
  for (long long pos = n - 1; pos >= 1; --pos) {
    last = choice[pos - 1][last];
    res.witness[pos - 1] = last;
  }
  return res;
}

}  // namespace tilekit
