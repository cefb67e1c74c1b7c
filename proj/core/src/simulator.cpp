#include "tilekit/simulator.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace tilekit {

namespace {

std::string zip(const std::string& work, int bit) { return work + "|" + std::to_string(bit); }

bool unzip(const std::string& z, std::string& work, int& bit) {
  auto pos = z.rfind('|');
  if (pos == std::string::npos) return false;
  work = z.substr(0, pos);
  std::string b = z.substr(pos + 1);
  if (b != "0" && b != "1") return false;
  bit = b == "1" ? 1 : 0;
  return true;
}

// Interned machine for the track couplings.
struct Machine {
  const TMSpec& spec;
  bool zipped;  // reads/writes track 3 zipped with track 6
  int q0;
  int states;
  std::vector<int> entryDir;  // +1 R, -1 L, 0 unknown
  struct Move {
    int write;  // index into the machine's own alphabet
    int next;
    bool right;
  };
  std::map<std::pair<int, int>, Move> delta;              // (state, symbol) ->
  std::map<std::tuple<int, int, bool>, std::pair<int, int>> inverse;  // (write,next,dir) -> (q,a)

  Machine(const TMSpec& tm, bool zipped_) : spec(tm), zipped(zipped_) {
    tm.validate();
    if (!tm.deterministic)
      throw std::invalid_argument("simulateConstruction: machines must be deterministic");
    auto rep = checkReversibleNormalForm(tm);
    if (!rep.ok) {
      std::string msg = "simulateConstruction: machine is not reversible:";
      for (const auto& s : rep.issues) msg += " " + s;
      throw std::invalid_argument(msg);
    }
    entryDir = rep.entryDirection;
    q0 = tm.stateIndex(tm.start);
    states = static_cast<int>(tm.states.size());
    for (const auto& r : tm.delta) {
      Move mv{tm.symIndex(r.b), tm.stateIndex(r.q2), r.moveRight};
      delta[{tm.stateIndex(r.q), tm.symIndex(r.a)}] = mv;
      inverse[{mv.write, mv.next, mv.right}] = {tm.stateIndex(r.q), tm.symIndex(r.a)};
    }
  }
  bool isLeftEntered(int q) const { return entryDir[q] < 0; }
};

struct SymbolTable {
  std::vector<std::string> names;
  std::unordered_map<std::string, int> index;
  int intern(const std::string& s) {
    auto it = index.find(s);
    if (it != index.end()) return it->second;
    index[s] = static_cast<int>(names.size());
    names.push_back(s);
    return static_cast<int>(names.size()) - 1;
  }
};

struct Engine {
  int n;
  Machine counter, verifier;
  SymbolTable syms;
  int blank3;
  std::vector<int> counterSym;  // counter alphabet -> track-3 symbol id

  Engine(int n_, const TMSpec& c, const TMSpec& v)
      : n(n_), counter(c, false), verifier(v, true) {
    blank3 = syms.intern(c.blank);
    for (const auto& a : c.alphabet) syms.intern(a);
    counterSym.clear();
    for (const auto& a : c.alphabet) counterSym.push_back(syms.intern(a));
    // verifier letters decompose into (work, bit)
    for (const auto& a : v.alphabet) {
      std::string work;
      int bit;
      if (!unzip(a, work, bit))
        throw std::invalid_argument("simulateConstruction: verifier symbols must be 'work|bit'");
      syms.intern(work);
    }
  }

  int cells() const { return n - 2; }

  SimState initial(const std::vector<uint8_t>& witness) const {
    SimState s;
    s.n = n;
    s.t1.assign(cells(), T1::BlankR);
    s.t1[0] = T1::R0;
    s.t2.assign(cells(), T2::Zero);
    s.t2[0] = T2::ZeroB;
    s.t3.assign(cells(), blank3);
    s.t4.assign(cells(), SimState::kBlankR);
    s.t4[0] = counter.q0;
    s.t5.assign(cells(), SimState::kBlankR);
    s.t5[0] = verifier.q0;
    s.t6.assign(cells(), 0);
    for (std::size_t i = 0; i < witness.size() && i < (std::size_t)cells(); ++i)
      s.t6[i] = witness[i] ? 1 : 0;
    return s;
  }

  ChainState clockOf(const SimState& s) const {
    ChainState c;
    c.sites.push_back(kLeftEnd);
    for (int i = 0; i < cells(); ++i) c.sites.push_back(interiorCode(s.t1[i], s.t2[i]));
    c.sites.push_back(kRightEnd);
    return c;
  }

  // ---- machine couplings ------------------------------------------------

  int readSym(const Machine& m, const SimState& s, int cell) const {
    if (!m.zipped) {
      return m.spec.symIndex(syms.names[s.t3[cell]]);
    }
    return m.spec.symIndex(zip(syms.names[s.t3[cell]], s.t6[cell]));
  }
  void writeSym(const Machine& m, SimState& s, int cell, int machineSym) {
    const std::string& name = m.spec.alphabet[machineSym];
    if (!m.zipped) {
      s.t3[cell] = syms.intern(name);
      return;
    }
    std::string work;
    int bit;
    unzip(name, work, bit);
    s.t3[cell] = syms.intern(work);
    s.t6[cell] = static_cast<uint8_t>(bit);
  }

  // a machine step driven by the arrow moving from cell i to i+1 (0-based)
  void coupleSweep(const Machine& m, std::vector<int>& head, SimState& s, int i,
                   long long& stepCount) {
    int left = head[i], right = head[i + 1];
    auto isState = [&](int v) { return v >= 0 && v < m.states; };
    auto isPrimed = [&](int v) { return v >= m.states; };
    if (left == SimState::kBlankL && isState(right)) {
      // execute the move for the head one right of the arrow's origin
      auto it = m.delta.find({right, readSym(m, s, i + 1)});
      if (it == m.delta.end())
        throw std::logic_error("simulateConstruction: machine has no applicable move");
      writeSym(m, s, i + 1, it->second.write);
      if (it->second.right) {
        head[i + 1] = it->second.next + m.states;  // primed: completed next tick
      } else {
        head[i] = it->second.next;
        head[i + 1] = SimState::kBlankR;
      }
      ++stepCount;
      return;
    }
    if (isPrimed(left) && right == SimState::kBlankR) {
      head[i] = SimState::kBlankL;
      head[i + 1] = left - m.states;
      return;
    }
    if (isState(left) && right == SimState::kBlankR) {
      if (m.isLeftEntered(left))
        throw std::logic_error("simulateConstruction: control over a left-entered head state");
      return;  // pass
    }
    if ((left == SimState::kBlankL && right == SimState::kBlankL) ||
        (left == SimState::kBlankR && right == SimState::kBlankR) ||
        (left == SimState::kBlankL && right == SimState::kBlankR)) {
      return;  // away from the head
    }
    throw std::logic_error("simulateConstruction: malformed head track at the control bond");
  }

  void coupleLeftTurn(const Machine& m, std::vector<int>& head, SimState& s,
                      long long& stepCount) {
    int h = head[0];
    if (h == SimState::kBlankL || h == SimState::kBlankR) return;  // head elsewhere
    if (h >= m.states)
      throw std::logic_error("simulateConstruction: unresolved primed head at the left end");
    auto it = m.delta.find({h, readSym(m, s, 0)});
    if (it == m.delta.end())
      throw std::logic_error("simulateConstruction: machine has no applicable move at cell 1");
    if (!it->second.right)
      throw std::logic_error("simulateConstruction: machine moves left from cell 1");
    writeSym(m, s, 0, it->second.write);
    head[0] = it->second.next + m.states;
    ++stepCount;
  }

  // inverse couplings for the backward check
  void uncoupleSweep(const Machine& m, std::vector<int>& head, SimState& s, int i) {
    int left = head[i], right = head[i + 1];
    auto isState = [&](int v) { return v >= 0 && v < m.states; };
    auto isPrimed = [&](int v) { return v >= m.states; };
    if (isState(left) && right == SimState::kBlankR && m.isLeftEntered(left)) {
      // undo a left-moving execution
      auto it = m.inverse.find({readSymRaw(m, s, i + 1), left, false});
      if (it == m.inverse.end()) throw std::logic_error("backward: no preimage (left move)");
      head[i] = SimState::kBlankL;
      head[i + 1] = it->second.first;
      writeSym(m, s, i + 1, it->second.second);
      return;
    }
    if (left == SimState::kBlankL && isPrimed(right)) {
      // undo a right-moving execution (part one)
      auto it = m.inverse.find({readSymRaw(m, s, i + 1), right - m.states, true});
      if (it == m.inverse.end()) throw std::logic_error("backward: no preimage (right move)");
      head[i + 1] = it->second.first;
      writeSym(m, s, i + 1, it->second.second);
      return;
    }
    if (left == SimState::kBlankL && isState(right)) {
      // undo the completion tick
      head[i] = right + m.states;
      head[i + 1] = SimState::kBlankR;
      return;
    }
    // passes undo to themselves
  }

  void uncoupleLeftTurn(const Machine& m, std::vector<int>& head, SimState& s) {
    int h = head[0];
    if (h == SimState::kBlankL || h == SimState::kBlankR) return;
    if (h < m.states)
      throw std::logic_error("backward: left-end head not primed after an executing turn");
    auto it = m.inverse.find({readSymRaw(m, s, 0), h - m.states, true});
    if (it == m.inverse.end()) throw std::logic_error("backward: no preimage at cell 1");
    head[0] = it->second.first;
    writeSym(m, s, 0, it->second.second);
  }

  int readSymRaw(const Machine& m, const SimState& s, int cell) const {
    // like readSym but for symbols the machine itself wrote (post-state)
    return readSym(m, s, cell);
  }

  // ---- one clock tick with couplings ------------------------------------

  struct Tick {
    int bond;       // 0-based bond in the bracketed chain (0 = left end pair)
    PairRule rule;
  };

  Tick findClockRule(const SimState& s, bool forward) const {
    ChainState c = clockOf(s);
    const auto& rules = transitionRules();
    std::optional<Tick> found;
    for (int i = 0; i + 1 < c.n(); ++i)
      for (const auto& r : rules) {
        bool match = forward ? (c.sites[i] == r.a && c.sites[i + 1] == r.b)
                             : (c.sites[i] == r.c && c.sites[i + 1] == r.d);
        if (!match) continue;
        if (found && !(found->bond == i && found->rule == r))
          throw std::logic_error("simulateConstruction: clock transition ambiguity");
        found = Tick{i, r};
      }
    if (!found) return Tick{-1, PairRule{}};
    return *found;
  }

  bool stepForward(SimState& s, SimReport& rep) {
    Tick t = findClockRule(s, true);
    if (t.bond < 0) return false;
    const PairRule& r = t.rule;
    // apply the track-1/2 rewrite
    auto setSite = [&](int chainPos, SiteCode code) {
      if (chainPos == 0 || chainPos == n - 1) return;  // end markers never change
      s.t1[chainPos - 1] = track1(code);
      s.t2[chainPos - 1] = track2(code);
    };

    // classify before rewriting
    bool rightMove = isInterior(r.a) && isInterior(r.b) && track1(r.b) == T1::BlankR &&
                     (track1(r.a) == T1::R0 || track1(r.a) == T1::R1 || track1(r.a) == T1::R2);
    bool leftTurn = r.a == kLeftEnd;
    T1 arrowKind = isInterior(r.a) ? track1(r.a) : (isInterior(r.d) ? track1(r.d) : T1::BlankL);

    (void)arrowKind;
    if (rightMove) {
      int i = t.bond - 1;  // 0-based interior cell of the arrow
      if (track1(r.a) == T1::R1) coupleSweep(counter, s.t4, s, i, rep.counterSteps);
      if (track1(r.a) == T1::R2) coupleSweep(verifier, s.t5, s, i, rep.verifierSteps);
    } else if (leftTurn) {
      if (track1(r.d) == T1::R1) {
        ++rep.rightSweepsR1;
        coupleLeftTurn(counter, s.t4, s, rep.counterSteps);
      }
      if (track1(r.d) == T1::R2) {
        ++rep.rightSweepsR2;
        coupleLeftTurn(verifier, s.t5, s, rep.verifierSteps);
      }
    }
    setSite(t.bond, r.c);
    setSite(t.bond + 1, r.d);
    return true;
  }

  void stepBackward(SimState& s) {
    Tick t = findClockRule(s, false);
    if (t.bond < 0) throw std::logic_error("backward: no transition applies");
    const PairRule& r = t.rule;
    auto setSite = [&](int chainPos, SiteCode code) {
      if (chainPos == 0 || chainPos == n - 1) return;
      s.t1[chainPos - 1] = track1(code);
      s.t2[chainPos - 1] = track2(code);
    };
    bool rightMove = isInterior(r.a) && isInterior(r.b) && track1(r.b) == T1::BlankR &&
                     (track1(r.a) == T1::R0 || track1(r.a) == T1::R1 || track1(r.a) == T1::R2);
    bool leftTurn = r.a == kLeftEnd;
    // undo tracks 1/2 first so couplings see the pre-rewrite shape
    setSite(t.bond, r.a);
    setSite(t.bond + 1, r.b);
    if (rightMove) {
      int i = t.bond - 1;
      if (track1(r.a) == T1::R1) uncoupleSweep(counter, s.t4, s, i);
      if (track1(r.a) == T1::R2) uncoupleSweep(verifier, s.t5, s, i);
    } else if (leftTurn) {
      if (track1(r.d) == T1::R1) uncoupleLeftTurn(counter, s.t4, s);
      if (track1(r.d) == T1::R2) uncoupleLeftTurn(verifier, s.t5, s);
    }
  }

  // ---- illegal-pattern scan ----------------------------------------------

  std::optional<std::string> scanIllegal(const SimState& s) const {
    // clock-track patterns
    ChainState c = clockOf(s);
    static const auto pairs = expandedIllegalPairs();
    for (int i = 0; i + 1 < c.n(); ++i)
      for (const auto& [a, b] : pairs)
        if (c.sites[i] == a && c.sites[i + 1] == b)
          return "clock pair " + siteName(a) + siteName(b) + " at bond " + std::to_string(i);

    // head-track shapes: _l* (state|primed) _r*
    auto shapeOk = [&](const std::vector<int>& head, const char* what)
        -> std::optional<std::string> {
      int seen = 0;
      bool afterHead = false;
      for (int i = 0; i < cells(); ++i) {
        if (head[i] == SimState::kBlankL) {
          if (afterHead) return std::string(what) + ": left blank after the head";
          if (seen) return std::string(what) + ": left blank after the head";
        } else if (head[i] == SimState::kBlankR) {
          afterHead = true;
        } else {
          if (seen) return std::string(what) + ": two heads";
          if (afterHead) return std::string(what) + ": head after right blanks";
          seen = 1;
        }
      }
      if (!seen) return std::string(what) + ": no head";
      return std::nullopt;
    };
    if (auto bad = shapeOk(s.t4, "track 4")) return bad;
    if (auto bad = shapeOk(s.t5, "track 5")) return bad;

    // initialization checks while the first-minute arrow sweeps
    for (int i = 0; i < cells(); ++i) {
      if (s.t1[i] != T1::R0) continue;
      if (s.t3[i] != blank3) return "R0 over a non-blank work cell";
      bool t4ok = i == 0 ? s.t4[i] == counter.q0 : s.t4[i] == SimState::kBlankR;
      bool t5ok = i == 0 ? s.t5[i] == verifier.q0 : s.t5[i] == SimState::kBlankR;
      if (!t4ok) return "R0 over a corrupted counter track";
      if (!t5ok) return "R0 over a corrupted verifier track";
    }

    // control/primed co-location rules
    auto invalid = [&](T1 arrow, const std::vector<int>& head, const Machine& m,
                       const char* what) -> std::optional<std::string> {
      int arrowPos = -1;
      for (int i = 0; i < cells(); ++i)
        if (s.t1[i] == arrow) arrowPos = i;
      if (arrowPos < 0) return std::nullopt;
      for (int i = 0; i < cells(); ++i) {
        if (head[i] >= m.states && i != arrowPos)
          return std::string(what) + ": primed head away from the control";
        if (i == arrowPos && head[i] >= 0 && head[i] < m.states && m.isLeftEntered(head[i]))
          return std::string(what) + ": control over a left-entered state";
      }
      return std::nullopt;
    };
    if (auto bad = invalid(T1::R1, s.t4, counter, "track 4")) return bad;
    if (auto bad = invalid(T1::R2, s.t5, verifier, "track 5")) return bad;
    return std::nullopt;
  }
};

}  // namespace

SimReport simulateConstruction(int n, const TMSpec& counterSpec, const TMSpec& verifierSpec,
                               const std::vector<uint8_t>& witness, const SimOptions& opts) {
  if (n < 4) throw std::invalid_argument("simulateConstruction: N >= 4");
  Engine eng(n, counterSpec, verifierSpec);
  SimReport rep;
  SimState s = opts.initialOverride ? *opts.initialOverride : eng.initial(witness);
  rep.counterStepsPerSweep.clear();

  if (opts.keepTrace) rep.trace.push_back(s);
  if (auto bad = eng.scanIllegal(s)) {
    rep.illegalStep = 0;
    rep.illegalWhat = bad;
    if (opts.stopAtIllegal) {
      rep.finalState = s;
      rep.symbols = eng.syms.names;
      return rep;
    }
  }

  long long lastCounter = 0, lastVerifier = 0;
  while (true) {
    SimState before = s;
    long long c0 = rep.counterSteps, v0 = rep.verifierSteps;
    long long r1 = rep.rightSweepsR1, r2 = rep.rightSweepsR2;
    if (!eng.stepForward(s, rep)) break;
    ++rep.steps;
    // a new right sweep begins: record what the previous sweep executed
    if (rep.rightSweepsR1 > r1) {
      rep.counterStepsPerSweep.push_back(c0 - lastCounter);
      lastCounter = c0;
    }
    if (rep.rightSweepsR2 > r2) {
      rep.verifierStepsPerSweep.push_back(v0 - lastVerifier);
      lastVerifier = v0;
    }
    if (opts.checkBackward) {
      SimState back = s;
      eng.stepBackward(back);
      if (!(back == before))
        throw std::logic_error("simulateConstruction: backward step does not invert forward");
    }
    if (opts.keepTrace) rep.trace.push_back(s);
    if (!rep.illegalStep) {
      if (auto bad = eng.scanIllegal(s)) {
        rep.illegalStep = rep.steps;
        rep.illegalWhat = bad;
        if (opts.stopAtIllegal) break;
      }
    }
  }

  rep.finalState = s;
  rep.symbols = eng.syms.names;
  std::vector<std::string> accepts = opts.acceptStates;
  if (accepts.empty()) accepts.push_back(verifierSpec.accept);
  if (!s.t5.empty() && s.t5[0] >= 0 && s.t5[0] < (int)verifierSpec.states.size()) {
    const std::string& st = verifierSpec.states[s.t5[0]];
    rep.accepted = std::find(accepts.begin(), accepts.end(), st) != accepts.end();
  }
  return rep;
}

std::string simFrame(const SimReport& rep, const SimState& s, const TMSpec& counter,
                     const TMSpec& verifier) {
  auto headName = [](const std::vector<std::string>& states, int v) -> std::string {
    if (v == SimState::kBlankL) return "_l";
    if (v == SimState::kBlankR) return "_r";
    int q = v % static_cast<int>(states.size());
    std::string name = states[q];
    if (v >= (int)states.size()) name += "'";
    return name;
  };
  std::ostringstream out;
  const int cells = s.n - 2;
  auto row = [&](const std::string& label, auto cellText) {
    out << label << " <|";
    for (int i = 0; i < cells; ++i) out << " " << cellText(i);
    out << " |>\n";
  };
  row("t1", [&](int i) {
    switch (s.t1[i]) {
      case T1::BlankL: return std::string("_l");
      case T1::BlankR: return std::string("_r");
      case T1::R0: return std::string("R0");
      case T1::R1: return std::string("R1");
      case T1::R2: return std::string("R2");
      case T1::L0: return std::string("L0");
      case T1::L1: return std::string("L1");
      default: return std::string("L2");
    }
  });
  row("t2", [&](int i) {
    switch (s.t2[i]) {
      case T2::Zero: return std::string("0");
      case T2::One: return std::string("1");
      case T2::Two: return std::string("2");
      case T2::ZeroB: return std::string("0B");
      default: return std::string("1B");
    }
  });
  row("t3", [&](int i) { return rep.symbols[s.t3[i]]; });
  row("t4", [&](int i) { return headName(counter.states, s.t4[i]); });
  row("t5", [&](int i) { return headName(verifier.states, s.t5[i]); });
  row("t6", [&](int i) { return std::string(1, char('0' + s.t6[i])); });
  return out.str();
}

// ---------------------------------------------------------------------------
// Reversible fixtures

TMSpec bouncerCounter() {
  TMSpec tm;
  tm.alphabet = {"#", "A1", "A2", "m", "n", "mp", "np"};
  tm.blank = "#";
  tm.states = {"q0", "Ga", "Gb", "LP", "RPa", "RPb", "qA"};
  tm.start = "q0";
  tm.accept = "qA";
  tm.deterministic = true;
  auto rule = [&](const char* q, const char* a, const char* b, const char* q2, char mv) {
    tm.delta.push_back({q, a, b, q2, mv == 'R'});
  };
  rule("q0", "#", "A1", "Ga", 'R');
  rule("Ga", "#", "mp", "LP", 'L');
  rule("Gb", "#", "np", "LP", 'L');
  rule("LP", "n", "m", "LP", 'L');
  rule("LP", "A1", "A2", "RPb", 'R');
  rule("LP", "A2", "A1", "RPa", 'R');
  rule("RPa", "m", "n", "RPa", 'R');
  rule("RPa", "np", "n", "Ga", 'R');
  rule("RPb", "m", "n", "RPb", 'R');
  rule("RPb", "mp", "n", "Gb", 'R');
  tm.validate();
  return tm;
}

TMSpec bouncerVerifier(const TMSpec& counter) {
  TMSpec tm;
  tm.blank = zip(counter.blank, 0);
  tm.states = {"q0", "Ga", "Gb", "LP", "RPa", "RPb", "qA"};
  tm.start = "q0";
  tm.accept = "qA";
  tm.deterministic = true;

  auto tagged = [](const char* tag, const std::string& x) { return std::string(tag) + "<" + x + ">"; };

  std::vector<std::string> virgin;  // counter letters the verifier may meet
  for (const auto& x : counter.alphabet) virgin.push_back(x);

  auto addSym = [&](const std::string& s) {
    if (std::find(tm.alphabet.begin(), tm.alphabet.end(), s) == tm.alphabet.end())
      tm.alphabet.push_back(s);
  };
  auto rule = [&](const std::string& q, const std::string& a, const std::string& b,
                  const std::string& q2, char mv) {
    addSym(a);
    addSym(b);
    tm.delta.push_back({q, a, b, q2, mv == 'R'});
  };

  for (const auto& x : virgin)
    for (int w = 0; w < 2; ++w) {
      std::string z = zip(x, w);
      // first visits: the bouncer skeleton with position tags carrying x
      rule("q0", z, zip(tagged("A1", x), w), "Ga", 'R');
      rule("Ga", z, zip(tagged("mp", x), w), "LP", 'L');
      rule("Gb", z, zip(tagged("np", x), w), "LP", 'L');
      // revisits over its own tagged letters
      rule("LP", zip(tagged("n", x), w), zip(tagged("m", x), w), "LP", 'L');
      rule("LP", zip(tagged("A1", x), w), zip(tagged("A2", x), w), "RPb", 'R');
      rule("LP", zip(tagged("A2", x), w), zip(tagged("A1", x), w), "RPa", 'R');
      rule("RPa", zip(tagged("m", x), w), zip(tagged("n", x), w), "RPa", 'R');
      rule("RPa", zip(tagged("np", x), w), zip(tagged("n", x), w), "Ga", 'R');
      rule("RPb", zip(tagged("m", x), w), zip(tagged("n", x), w), "RPb", 'R');
      rule("RPb", zip(tagged("mp", x), w), zip(tagged("n", x), w), "Gb", 'R');
    }
  addSym(tm.blank);
  tm.validate();
  return tm;
}

}  // namespace tilekit
