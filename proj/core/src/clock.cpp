#include "tilekit/clock.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

namespace tilekit {

namespace {

const char* t1Name(T1 a) {
  switch (a) {
    case T1::BlankL: return "_l";
    case T1::BlankR: return "_r";
    case T1::R0: return "R0";
    case T1::R1: return "R1";
    case T1::R2: return "R2";
    case T1::L0: return "L0";
    case T1::L1: return "L1";
    case T1::L2: return "L2";
  }
  return "?";
}

const char* t2Name(T2 b) {
  switch (b) {
    case T2::Zero: return "0";
    case T2::One: return "1";
    case T2::Two: return "2";
    case T2::ZeroB: return "0B";
    case T2::OneB: return "1B";
  }
  return "?";
}

bool isArrow(T1 a) { return a != T1::BlankL && a != T1::BlankR; }
bool isRightArrow(T1 a) { return a == T1::R0 || a == T1::R1 || a == T1::R2; }

}  // namespace

std::string siteName(SiteCode c) {
  if (c == kLeftEnd) return "<|";
  if (c == kRightEnd) return "|>";
  return std::string("[") + t1Name(track1(c)) + "," + t2Name(track2(c)) + "]";
}

std::string chainName(const ChainState& s) {
  std::string out;
  for (SiteCode c : s.sites) out += siteName(c);
  return out;
}

bool isBracketed(const ChainState& s) {
  if (s.n() < 2) return false;
  if (s.sites.front() != kLeftEnd || s.sites.back() != kRightEnd) return false;
  for (int i = 1; i + 1 < s.n(); ++i)
    if (!isInterior(s.sites[i])) return false;
  return true;
}

bool isWellFormed(const ChainState& s) {
  if (!isBracketed(s)) return false;
  // Track 1: _l* (R+L) _r*
  int arrowPos = -1;
  for (int i = 1; i + 1 < s.n(); ++i) {
    T1 a = track1(s.sites[i]);
    if (isArrow(a)) {
      if (arrowPos >= 0) return false;
      arrowPos = i;
    } else if (arrowPos < 0 && a != T1::BlankL) {
      return false;
    } else if (arrowPos >= 0 && i > arrowPos && a != T1::BlankR) {
      return false;
    }
  }
  if (arrowPos < 0) return false;
  // Track 2: 1* (0B 0* + 1B 2*)
  int markPos = -1;
  bool markIsZeroB = false;
  for (int i = 1; i + 1 < s.n(); ++i) {
    T2 b = track2(s.sites[i]);
    if (b == T2::ZeroB || b == T2::OneB) {
      if (markPos >= 0) return false;
      markPos = i;
      markIsZeroB = (b == T2::ZeroB);
    } else if (markPos < 0) {
      if (b != T2::One) return false;
    } else {
      if (markIsZeroB && b != T2::Zero) return false;
      if (!markIsZeroB && b != T2::Two) return false;
    }
  }
  return markPos >= 0;
}

// ---------------------------------------------------------------------------
// Transition rules

const std::vector<PairRule>& transitionRules() {
  static const std::vector<PairRule> rules = [] {
    std::vector<PairRule> out;
    auto add = [&](SiteCode a, SiteCode b, SiteCode c, SiteCode d) {
      PairRule r{a, b, c, d};
      for (const auto& q : out)
        if (q == r) return;
      out.push_back(r);
    };
    auto allT2 = {T2::Zero, T2::One, T2::Two, T2::ZeroB, T2::OneB};

    // right-moving sweeps: arrow hops right, both tracks 2 untouched
    for (T1 arr : {T1::R0, T1::R1}) {
      for (T2 x : allT2)
        for (T2 y : allT2)
          add(interiorCode(arr, x), interiorCode(T1::BlankR, y),
              interiorCode(T1::BlankL, x), interiorCode(arr, y));
    }
    // R2 sweeps only over matching 1s or 2s, and the minute-advance rule
    for (T2 x : {T2::One, T2::Two})
      add(interiorCode(T1::R2, x), interiorCode(T1::BlankR, x),
          interiorCode(T1::BlankL, x), interiorCode(T1::R2, x));
    add(interiorCode(T1::R2, T2::One), interiorCode(T1::BlankR, T2::OneB),
        interiorCode(T1::BlankL, T2::OneB), interiorCode(T1::R2, T2::Two));

    // left-moving sweeps
    for (T2 x : allT2)
      for (T2 y : allT2) {
        add(interiorCode(T1::BlankL, x), interiorCode(T1::L0, y),
            interiorCode(T1::L0, x), interiorCode(T1::BlankR, y));
        add(interiorCode(T1::BlankL, x), interiorCode(T1::L2, y),
            interiorCode(T1::L2, x), interiorCode(T1::BlankR, y));
      }
    // L1 sweeps over matching 0s or 1s, and the minute-advance rule
    for (T2 x : {T2::Zero, T2::One})
      add(interiorCode(T1::BlankL, x), interiorCode(T1::L1, x),
          interiorCode(T1::L1, x), interiorCode(T1::BlankR, x));
    add(interiorCode(T1::BlankL, T2::ZeroB), interiorCode(T1::L1, T2::Zero),
        interiorCode(T1::L1, T2::One), interiorCode(T1::BlankR, T2::ZeroB));

    // right-end turns; the R2 turn ranges over its phase-legal Track-2
    // values only ([R2,1B] is an illegal site, and including it would give
    // the [L2,1B] end pair a second preimage)
    for (T2 x : allT2) add(interiorCode(T1::R0, x), kRightEnd, interiorCode(T1::L0, x), kRightEnd);
    add(interiorCode(T1::R1, T2::Zero), kRightEnd, interiorCode(T1::L1, T2::Zero), kRightEnd);
    add(interiorCode(T1::R1, T2::ZeroB), kRightEnd, interiorCode(T1::L2, T2::OneB), kRightEnd);
    for (T2 x : {T2::One, T2::Two})
      add(interiorCode(T1::R2, x), kRightEnd, interiorCode(T1::L2, x), kRightEnd);

    // left-end turns
    add(kLeftEnd, interiorCode(T1::L0, T2::ZeroB), kLeftEnd, interiorCode(T1::R1, T2::ZeroB));
    add(kLeftEnd, interiorCode(T1::L1, T2::One), kLeftEnd, interiorCode(T1::R1, T2::One));
    add(kLeftEnd, interiorCode(T1::L2, T2::One), kLeftEnd, interiorCode(T1::R2, T2::One));
    return out;
  }();
  return rules;
}

std::optional<ChainState> clockTransition(const ChainState& s, bool forward) {
  if (!isWellFormed(s)) throw std::invalid_argument("clockTransition: state is not well-formed");
  const auto& rules = transitionRules();
  std::optional<ChainState> found;
  for (int i = 0; i + 1 < s.n(); ++i) {
    for (const auto& r : rules) {
      bool match = forward ? (s.sites[i] == r.a && s.sites[i + 1] == r.b)
                           : (s.sites[i] == r.c && s.sites[i + 1] == r.d);
      if (!match) continue;
      ChainState next = s;
      next.sites[i] = forward ? r.c : r.a;
      next.sites[i + 1] = forward ? r.d : r.b;
      if (found && !(*found == next))
        throw std::logic_error("clockTransition: more than one rule applies");
      found = next;
    }
  }
  return found;
}

std::vector<ChainState> clockSequence(int n) {
  if (n < 4) throw std::invalid_argument("clockSequence: N >= 4");
  ChainState s;
  s.sites.push_back(kLeftEnd);
  s.sites.push_back(interiorCode(T1::R0, T2::ZeroB));
  for (int i = 0; i < n - 3; ++i) s.sites.push_back(interiorCode(T1::BlankR, T2::Zero));
  s.sites.push_back(kRightEnd);

  std::vector<ChainState> seq{s};
  while (auto next = clockTransition(seq.back(), /*forward=*/true)) seq.push_back(*next);
  return seq;
}

// ---------------------------------------------------------------------------
// Illegal patterns

IllegalPatterns illegalPairSet() {
  IllegalPatterns out;

  // Phase prohibitions on single sites.
  for (T2 b : {T2::One, T2::Two, T2::OneB})
    for (T1 a : {T1::R0, T1::L0}) out.sites.push_back(interiorCode(a, b));
  for (T2 b : {T2::Two, T2::OneB})
    for (T1 a : {T1::R1, T1::L1}) out.sites.push_back(interiorCode(a, b));
  for (T2 b : {T2::Zero, T2::ZeroB})
    for (T1 a : {T1::R2, T1::L2}) out.sites.push_back(interiorCode(a, b));
  out.sites.push_back(interiorCode(T1::L1, T2::ZeroB));
  out.sites.push_back(interiorCode(T1::R2, T2::OneB));
  std::sort(out.sites.begin(), out.sites.end());
  out.sites.erase(std::unique(out.sites.begin(), out.sites.end()), out.sites.end());

  // The named forbidden pair [R2,1][_r,0B].
  out.pairs.push_back({interiorCode(T1::R2, T2::One), interiorCode(T1::BlankR, T2::ZeroB)});

  // Track-shape pairs from the two regular expressions.  Follower classes on
  // Track 1:   |- , _l -> {_l, arrows};  arrows, _r -> {_r, -|};  -| -> {}.
  auto t1Class = [](SiteCode c) -> int {
    if (c == kLeftEnd) return 0;
    if (c == kRightEnd) return 4;
    T1 a = track1(c);
    if (a == T1::BlankL) return 1;
    if (isArrow(a)) return 2;
    return 3;  // _r
  };
  auto t1Follows = [](int x, int y) {
    switch (x) {
      case 0:
      case 1: return y == 1 || y == 2;
      case 2:
      case 3: return y == 3 || y == 4;
      default: return false;  // nothing follows the right end
    }
  };
  // Track 2 follower classes: |-, 1 -> {1, 0B, 1B}; 0B,0 -> {0,-|};
  // 1B,2 -> {2,-|}; -| -> {}.
  auto t2Class = [](SiteCode c) -> int {
    if (c == kLeftEnd) return 0;
    if (c == kRightEnd) return 5;
    switch (track2(c)) {
      case T2::One: return 1;
      case T2::ZeroB: return 2;
      case T2::Zero: return 3;
      case T2::OneB: return 4;
      default: return 6;  // Two
    }
  };
  auto t2Follows = [](int x, int y) {
    switch (x) {
      case 0:
      case 1: return y == 1 || y == 2 || y == 4;
      case 2:
      case 3: return y == 3 || y == 5;
      case 4:
      case 6: return y == 6 || y == 5;
      default: return false;
    }
  };

  for (int a = 0; a < kSiteStates; ++a)
    for (int b = 0; b < kSiteStates; ++b) {
      SiteCode ca = static_cast<SiteCode>(a), cb = static_cast<SiteCode>(b);
      if (!t1Follows(t1Class(ca), t1Class(cb)) || !t2Follows(t2Class(ca), t2Class(cb)))
        out.pairs.push_back({ca, cb});
    }
  std::sort(out.pairs.begin(), out.pairs.end());
  out.pairs.erase(std::unique(out.pairs.begin(), out.pairs.end()), out.pairs.end());
  return out;
}

std::vector<std::pair<SiteCode, SiteCode>> expandedIllegalPairs() {
  IllegalPatterns pats = illegalPairSet();
  std::set<std::pair<SiteCode, SiteCode>> pairs(pats.pairs.begin(), pats.pairs.end());
  for (SiteCode s : pats.sites)
    for (int other = 0; other < kSiteStates; ++other) {
      pairs.insert({s, static_cast<SiteCode>(other)});
      pairs.insert({static_cast<SiteCode>(other), s});
    }
  return {pairs.begin(), pairs.end()};
}

// ---------------------------------------------------------------------------
// Hamiltonian

namespace {

struct Assembler {
  int n;
  bool boundary;
  // triplet accumulation per row via sorted maps is too slow at scale; we
  // assemble bond contributions directly in CSR form after computing the
  // exact sparsity pattern per row on the fly.
  std::vector<std::pair<SiteCode, SiteCode>> illegal;
  std::vector<PairRule> rules;
  // rule lookups keyed by the left pair / right pair
  std::unordered_map<uint32_t, std::vector<int>> byLhs, byRhs;

  explicit Assembler(int n_, bool boundary_) : n(n_), boundary(boundary_) {
    illegal = expandedIllegalPairs();
    rules = transitionRules();
    for (int i = 0; i < (int)rules.size(); ++i) {
      byLhs[key(rules[i].a, rules[i].b)].push_back(i);
      byRhs[key(rules[i].c, rules[i].d)].push_back(i);
    }
    illegalSet.assign(kSiteStates * kSiteStates, 0);
    for (auto& [a, b] : illegal) illegalSet[a * kSiteStates + b] = 1;
  }
  std::vector<uint8_t> illegalSet;
  static uint32_t key(SiteCode a, SiteCode b) { return a * 64u + b; }

  double weight() const { return boundary ? 3.0 : 1.0; }

  template <typename Decode, typename Encode>
  void assemble(SparseOperator& op, std::int64_t dim, Decode decode, Encode encode) {
    op.dim = dim;
    op.rowPtr.assign(dim + 1, 0);
    std::vector<SiteCode> st;
    // two passes: count, then fill
    std::vector<std::pair<std::int64_t, double>> cols;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::int64_t row = 0; row < dim; ++row) {
        decode(row, st);
        cols.clear();
        double diag = 0;
        for (int i = 0; i + 1 < (int)st.size(); ++i) {
          SiteCode a = st[i], b = st[i + 1];
          if (illegalSet[a * kSiteStates + b]) diag += weight();
          auto itL = byLhs.find(key(a, b));
          if (itL != byLhs.end())
            for (int ri : itL->second) {
              const PairRule& r = rules[ri];
              diag += 0.5 * weight();
              SiteCode sa = st[i], sb = st[i + 1];
              st[i] = r.c;
              st[i + 1] = r.d;
              std::int64_t col = encode(st);
              st[i] = sa;
              st[i + 1] = sb;
              if (col >= 0) cols.push_back({col, -0.5 * weight()});
            }
          auto itR = byRhs.find(key(a, b));
          if (itR != byRhs.end())
            for (int ri : itR->second) {
              const PairRule& r = rules[ri];
              diag += 0.5 * weight();
              SiteCode sa = st[i], sb = st[i + 1];
              st[i] = r.a;
              st[i + 1] = r.b;
              std::int64_t col = encode(st);
              st[i] = sa;
              st[i + 1] = sb;
              if (col >= 0) cols.push_back({col, -0.5 * weight()});
            }
        }
        if (boundary) {
          for (SiteCode c : st) diag += (c == kLeftEnd || c == kRightEnd) ? 0.0 : 1.0;
        }
        cols.push_back({row, diag});
        // merge duplicate columns
        std::sort(cols.begin(), cols.end());
        std::size_t out = 0;
        for (std::size_t k = 0; k < cols.size(); ++k) {
          if (out > 0 && cols[out - 1].first == cols[k].first)
            cols[out - 1].second += cols[k].second;
          else
            cols[out++] = cols[k];
        }
        cols.resize(out);
        if (pass == 0) {
          op.rowPtr[row + 1] = static_cast<std::int64_t>(cols.size());
        } else {
          std::int64_t base = op.rowPtr[row];
          for (std::size_t k = 0; k < cols.size(); ++k) {
            op.col[base + k] = static_cast<std::int32_t>(cols[k].first);
            op.val[base + k] = cols[k].second;
          }
        }
      }
      if (pass == 0) {
        for (std::int64_t r = 0; r < dim; ++r) op.rowPtr[r + 1] += op.rowPtr[r];
        op.col.resize(op.rowPtr[dim]);
        op.val.resize(op.rowPtr[dim]);
      }
    }
  }
};

}  // namespace

void SparseOperator::apply(const double* x, double* y) const {
  for (std::int64_t r = 0; r < dim; ++r) {
    double acc = 0;
    for (std::int64_t k = rowPtr[r]; k < rowPtr[r + 1]; ++k) acc += val[k] * x[col[k]];
    y[r] = acc;
  }
}

std::vector<double> SparseOperator::apply(const std::vector<double>& x) const {
  std::vector<double> y(dim);
  apply(x.data(), y.data());
  return y;
}

std::int64_t basisIndex(const SparseOperator& op, const ChainState& s) {
  if (!op.basis.empty()) {
    for (std::size_t i = 0; i < op.basis.size(); ++i)
      if (op.basis[i] == s) return static_cast<std::int64_t>(i);
    return -1;
  }
  // product bases
  if (op.sector == Sector::BracketedAll) {
    if (!isBracketed(s)) return -1;
    std::int64_t idx = 0;
    for (int i = 1; i + 1 < s.n(); ++i) idx = idx * kInteriorStates + (s.sites[i] - 2);
    return idx;
  }
  std::int64_t idx = 0;
  for (int i = 0; i < s.n(); ++i) idx = idx * kSiteStates + s.sites[i];
  return idx;
}

SparseOperator buildHamiltonian(int n, Sector sector, bool boundaryTerm, std::size_t memBudget) {
  if (n < 4) throw std::invalid_argument("buildHamiltonian: N >= 4");
  if (boundaryTerm && sector != Sector::FullChain)
    throw std::invalid_argument("buildHamiltonian: the boundary term runs on the full chain");

  SparseOperator op;
  op.n = n;
  op.sector = sector;
  op.boundaryTerm = boundaryTerm;
  Assembler as(n, boundaryTerm);

  if (sector == Sector::LegalPath || sector == Sector::BracketedWellFormed) {
    std::vector<ChainState> basis;
    if (sector == Sector::LegalPath) {
      basis = clockSequence(n);
    } else {
      // enumerate all well-formed states: arrow kind x position, and the
      // Track-2 mark kind x count of leading ones
      for (int pos = 1; pos <= n - 2; ++pos)
        for (T1 arr : {T1::R0, T1::R1, T1::R2, T1::L0, T1::L1, T1::L2})
          for (int phase = 0; phase < 2; ++phase)
            for (int ones = 0; ones <= n - 3; ++ones) {
              ChainState s;
              s.sites.push_back(kLeftEnd);
              for (int i = 1; i <= n - 2; ++i) {
                T2 b;
                if (i <= ones)
                  b = T2::One;
                else if (i == ones + 1)
                  b = phase == 0 ? T2::ZeroB : T2::OneB;
                else
                  b = phase == 0 ? T2::Zero : T2::Two;
                T1 a = i < pos ? T1::BlankL : (i == pos ? arr : T1::BlankR);
                s.sites.push_back(interiorCode(a, b));
              }
              s.sites.push_back(kRightEnd);
              basis.push_back(s);
            }
    }
    std::unordered_map<std::string, std::int64_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index[chainName(basis[i])] = i;
    op.basis = basis;
    auto decode = [&](std::int64_t row, std::vector<SiteCode>& st) { st = basis[row].sites; };
    auto encode = [&](const std::vector<SiteCode>& st) -> std::int64_t {
      ChainState s;
      s.sites = st;
      auto it = index.find(chainName(s));
      return it == index.end() ? -1 : it->second;
    };
    as.assemble(op, basis.size(), decode, encode);
    return op;
  }

  if (sector == Sector::BracketedAll) {
    std::int64_t dim = 1;
    for (int i = 0; i < n - 2; ++i) dim *= kInteriorStates;
    if ((std::size_t)dim * 10 * 12 > memBudget)
      throw ResourceError("buildHamiltonian: bracketed basis exceeds the memory budget");
    auto decode = [&](std::int64_t row, std::vector<SiteCode>& st) {
      st.assign(n, 0);
      st[0] = kLeftEnd;
      st[n - 1] = kRightEnd;
      std::int64_t v = row;
      for (int i = n - 2; i >= 1; --i) {
        st[i] = static_cast<SiteCode>(2 + v % kInteriorStates);
        v /= kInteriorStates;
      }
    };
    auto encode = [&](const std::vector<SiteCode>& st) -> std::int64_t {
      std::int64_t idx = 0;
      for (int i = 1; i <= n - 2; ++i) {
        if (!isInterior(st[i])) return -1;
        idx = idx * kInteriorStates + (st[i] - 2);
      }
      return idx;
    };
    as.assemble(op, dim, decode, encode);
    return op;
  }

  // full chain
  std::int64_t dim = 1;
  for (int i = 0; i < n; ++i) dim *= kSiteStates;
  if ((std::size_t)dim * 10 * 12 > memBudget)
    throw ResourceError("buildHamiltonian: full-chain basis exceeds the memory budget");
  auto decode = [&](std::int64_t row, std::vector<SiteCode>& st) {
    st.assign(n, 0);
    std::int64_t v = row;
    for (int i = n - 1; i >= 0; --i) {
      st[i] = static_cast<SiteCode>(v % kSiteStates);
      v /= kSiteStates;
    }
  };
  auto encode = [&](const std::vector<SiteCode>& st) -> std::int64_t {
    std::int64_t idx = 0;
    for (int i = 0; i < n; ++i) idx = idx * kSiteStates + st[i];
    return idx;
  };
  as.assemble(op, dim, decode, encode);
  return op;
}

}  // namespace tilekit
