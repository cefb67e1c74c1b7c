#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tilekit/tiles.hpp"

namespace tilekit {

// Track-1 states: blanks pointing at the arrow, and the arrow in its three
// phase varieties per direction.
enum class T1 : uint8_t { BlankL, BlankR, R0, R1, R2, L0, L1, L2 };
// Track-2 states.
enum class T2 : uint8_t { Zero, One, Two, ZeroB, OneB };

// Site codes: the two end markers are whole-site states; interior sites hold
// a (Track 1, Track 2) pair.  42 codes in total, 40 of them interior.
using SiteCode = uint8_t;
inline constexpr SiteCode kLeftEnd = 0;
inline constexpr SiteCode kRightEnd = 1;
inline constexpr int kInteriorStates = 40;
inline constexpr int kSiteStates = 42;

inline SiteCode interiorCode(T1 a, T2 b) {
  return static_cast<SiteCode>(2 + static_cast<int>(a) * 5 + static_cast<int>(b));
}
inline bool isInterior(SiteCode c) { return c >= 2; }
inline T1 track1(SiteCode c) { return static_cast<T1>((c - 2) / 5); }
inline T2 track2(SiteCode c) { return static_cast<T2>((c - 2) % 5); }

std::string siteName(SiteCode c);

struct ChainState {
  std::vector<SiteCode> sites;
  bool operator==(const ChainState&) const = default;
  int n() const { return static_cast<int>(sites.size()); }
};

std::string chainName(const ChainState& s);

bool isBracketed(const ChainState& s);
// Track 1 matches  |- _l* (R+L) _r* -|  and Track 2 matches
// |- 1* (0B 0* + 1B 2*) -| .
bool isWellFormed(const ChainState& s);

// ---------------------------------------------------------------------------
// Transition rules (Type II terms) as concrete pair rewrites ab -> cd.

struct PairRule {
  SiteCode a, b, c, d;
  bool operator==(const PairRule&) const = default;
};

// The full concrete rule list; no pair occurs twice on a left-hand side nor
// twice on a right-hand side.
const std::vector<PairRule>& transitionRules();

// The unique forward/backward successor of a well-formed state; empty at the
// ends of the clock sequence.  Throws if more than one rule applies.
std::optional<ChainState> clockTransition(const ChainState& s, bool forward);

// The 4(N-2)^2 clock states from |-[R0,0B][_r,0]*-| to |-[L2,1B][_r,2]*-|.
std::vector<ChainState> clockSequence(int n);

// ---------------------------------------------------------------------------
// Illegal patterns (Type I terms)

struct IllegalPatterns {
  std::vector<SiteCode> sites;                       // single-site prohibitions
  std::vector<std::pair<SiteCode, SiteCode>> pairs;  // ordered adjacent pairs
};

// Patterns assembled from the two track regular expressions, the phase
// prohibitions, and the named pairs.
IllegalPatterns illegalPairSet();

// Single-site prohibitions folded into pair form (any pair containing the
// site), merged with the listed pairs; deduplicated.
std::vector<std::pair<SiteCode, SiteCode>> expandedIllegalPairs();

// ---------------------------------------------------------------------------
// Hamiltonian assembly

enum class Sector { LegalPath, BracketedWellFormed, BracketedAll, FullChain };

struct SparseOperator {
  std::int64_t dim = 0;
  std::vector<std::int64_t> rowPtr;
  std::vector<std::int32_t> col;
  std::vector<double> val;
  // basis bookkeeping: explicit states for enumerated sectors
  std::vector<ChainState> basis;
  int n = 0;
  Sector sector = Sector::LegalPath;
  bool boundaryTerm = false;

  void apply(const double* x, double* y) const;
  std::vector<double> apply(const std::vector<double>& x) const;
};

// H = sum of illegal-pair projectors and Table-10 transition terms over the
// chosen sector basis; with boundaryTerm the operator becomes
// 3H + sum_sites (I - |left)(left| - |right)(right|) over the unrestricted
// 42^N product basis.
SparseOperator buildHamiltonian(int n, Sector sector, bool boundaryTerm = false,
                                std::size_t memBudget = std::size_t(6) << 30);

// index of a chain state within the operator's basis, or -1
std::int64_t basisIndex(const SparseOperator& op, const ChainState& s);

}  // namespace tilekit
