#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tilekit/tiles.hpp"

namespace tilekit {

struct TMRule {
  std::string q, a;   // state, symbol read
  std::string b, q2;  // symbol written, next state
  bool moveRight = true;
};

// Single-tape machine on a one-way-infinite tape; the head starts in `start`
// at cell 1.  Nondeterministic unless `deterministic` is set.
struct TMSpec {
  std::vector<std::string> alphabet;
  std::string blank = "#";
  std::vector<std::string> states;
  std::string start = "q0";
  std::string accept = "qA";
  std::vector<TMRule> delta;
  bool deterministic = true;

  int symIndex(const std::string& s) const;
  int stateIndex(const std::string& s) const;

  // Structural invariants: declared symbols/states only, no transition out of
  // the accept state, none re-entering the start state.
  void validate() const;
};

struct TMConfig {
  std::vector<int> tape;  // interned symbols, cell 1 first; blanks trimmed
  int head = 0;           // 0-based cell index
  int state = 0;

  bool operator==(const TMConfig&) const = default;
};

struct TMRunResult {
  TMConfig config;          // final configuration (deterministic runs)
  long long stepsExecuted = 0;
  bool stuck = false;       // no applicable transition before the bound
  bool accepted = false;    // state == accept at the end of the run
  std::vector<TMConfig> trace;  // filled when requested
};

// Faithful single-tape simulation for `steps` steps.  A move left from cell 1
// kills the branch (deterministic runs become "stuck").
TMRunResult runTM(const TMSpec& tm, const std::string& inputSymbols, long long steps,
                  bool keepTrace = false);

// Same, but the input is a list of symbol names (for multi-character symbols).
TMRunResult runTM(const TMSpec& tm, const std::vector<std::string>& input, long long steps,
                  bool keepTrace = false);

// One deterministic step from an arbitrary configuration; empty when stuck.
std::optional<TMConfig> stepTM(const TMSpec& tm, const TMConfig& c);

enum class AcceptanceLayout { AtLeftEnd, Anywhere };

// Breadth-first acceptance over all nondeterministic branches: accept iff
// some branch is in the accept state after exactly `steps` steps (branches
// that die or finish early do not count).  `layout` additionally requires the
// head at cell 1.
bool runTMAccepts(const TMSpec& tm, const std::vector<std::string>& input, long long steps,
                  AcceptanceLayout layout = AcceptanceLayout::AtLeftEnd,
                  std::size_t configCap = 2000000);

// Tape readout as symbol names with trailing blanks trimmed.
std::vector<std::string> tapeSymbols(const TMSpec& tm, const TMConfig& c);

// Reversible normal form: every state is entered from a single direction and
// no two transitions share the (written symbol, next state, move) image.
struct NormalFormReport {
  bool ok = true;
  std::vector<std::string> issues;
  // +1 right-entered, -1 left-entered, 0 unknown; indexed by state
  std::vector<int> entryDirection;
};
NormalFormReport checkReversibleNormalForm(const TMSpec& tm);

}  // namespace tilekit
