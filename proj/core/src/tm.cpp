#include "tilekit/tm.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace tilekit {

int TMSpec::symIndex(const std::string& s) const {
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    if (alphabet[i] == s) return static_cast<int>(i);
  throw std::invalid_argument("TM: unknown symbol " + s);
}

int TMSpec::stateIndex(const std::string& s) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == s) return static_cast<int>(i);
  throw std::invalid_argument("TM: unknown state " + s);
}

void TMSpec::validate() const {
  symIndex(blank);
  stateIndex(start);
  stateIndex(accept);
  std::unordered_set<std::string> seen;
  for (const auto& r : delta) {
    stateIndex(r.q);
    stateIndex(r.q2);
    symIndex(r.a);
    symIndex(r.b);
    if (r.q == accept) throw std::invalid_argument("TM: transition out of the accept state");
    if (r.q2 == start) throw std::invalid_argument("TM: transition re-enters the start state");
    if (deterministic) {
      std::string key = r.q + "\x1f" + r.a;
      if (!seen.insert(key).second)
        throw std::invalid_argument("TM: duplicate (state,symbol) in a deterministic machine");
    }
  }
}

namespace {

struct Interned {
  const TMSpec& tm;
  int blank;
  int accept;
  // delta[state][symbol] -> list of (write, next, dir)
  struct Move {
    int write, next;
    bool right;
  };
  std::vector<std::vector<std::vector<Move>>> delta;

  explicit Interned(const TMSpec& spec) : tm(spec) {
    spec.validate();
    blank = spec.symIndex(spec.blank);
    accept = spec.stateIndex(spec.accept);
    delta.assign(spec.states.size(), std::vector<std::vector<Move>>(spec.alphabet.size()));
    for (const auto& r : spec.delta)
      delta[spec.stateIndex(r.q)][spec.symIndex(r.a)].push_back(
          {spec.symIndex(r.b), spec.stateIndex(r.q2), r.moveRight});
  }

  int read(const TMConfig& c) const {
    return c.head < (int)c.tape.size() ? c.tape[c.head] : blank;
  }

  std::optional<TMConfig> apply(const TMConfig& c, const Move& mv) const {
    if (!mv.right && c.head == 0) return std::nullopt;  // never left from cell 1
    TMConfig n = c;
    if (c.head >= (int)n.tape.size()) n.tape.resize(c.head + 1, blank);
    n.tape[c.head] = mv.write;
    n.head = c.head + (mv.right ? 1 : -1);
    n.state = mv.next;
    while (!n.tape.empty() && n.tape.back() == blank && (int)n.tape.size() > n.head + 1)
      n.tape.pop_back();
    return n;
  }
};

TMConfig initialConfig(const Interned& in, const std::vector<std::string>& input) {
  TMConfig c;
  c.state = in.tm.stateIndex(in.tm.start);
  for (const auto& s : input) c.tape.push_back(in.tm.symIndex(s));
  return c;
}

std::vector<std::string> splitSymbols(const TMSpec& tm, const std::string& s) {
  // Single-character symbol names split directly; otherwise the input is a
  // whitespace-separated list.
  bool allSingle = true;
  for (const auto& a : tm.alphabet)
    if (a.size() != 1) allSingle = false;
  std::vector<std::string> out;
  if (allSingle && s.find(' ') == std::string::npos) {
    for (char ch : s) out.push_back(std::string(1, ch));
  } else {
    std::string cur;
    for (char ch : s + " ") {
      if (ch == ' ') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else {
        cur += ch;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::string> tapeSymbols(const TMSpec& tm, const TMConfig& c) {
  int blank = tm.symIndex(tm.blank);
  int last = static_cast<int>(c.tape.size());
  while (last > 0 && c.tape[last - 1] == blank) --last;
  std::vector<std::string> out;
  for (int i = 0; i < last; ++i) out.push_back(tm.alphabet[c.tape[i]]);
  return out;
}

TMRunResult runTM(const TMSpec& tm, const std::vector<std::string>& input, long long steps,
                  bool keepTrace) {
  Interned in(tm);
  TMRunResult res;
  TMConfig c = initialConfig(in, input);
  if (keepTrace) res.trace.push_back(c);
  for (long long k = 0; k < steps; ++k) {
    const auto& moves = in.delta[c.state][in.read(c)];
    if (moves.empty()) {
      res.stuck = true;
      break;
    }
    if (moves.size() > 1)
      throw std::invalid_argument("runTM: nondeterministic choice in a deterministic run");
    auto next = in.apply(c, moves[0]);
    if (!next) {
      res.stuck = true;
      break;
    }
    c = *next;
    ++res.stepsExecuted;
    if (keepTrace) res.trace.push_back(c);
  }
  res.config = c;
  res.accepted = (c.state == in.accept);
  return res;
}

TMRunResult runTM(const TMSpec& tm, const std::string& inputSymbols, long long steps,
                  bool keepTrace) {
  return runTM(tm, splitSymbols(tm, inputSymbols), steps, keepTrace);
}

std::optional<TMConfig> stepTM(const TMSpec& tm, const TMConfig& c) {
  Interned in(tm);
  const auto& moves = in.delta[c.state][in.read(c)];
  if (moves.empty()) return std::nullopt;
  if (moves.size() > 1)
    throw std::invalid_argument("stepTM: nondeterministic choice in a deterministic step");
  return in.apply(c, moves[0]);
}

namespace {

struct ConfigHash {
  std::size_t operator()(const TMConfig& c) const {
    std::size_t h = std::hash<int>()(c.head) * 1000003u + std::hash<int>()(c.state);
    for (int v : c.tape) h = h * 1099511628211ull + static_cast<std::size_t>(v + 1);
    return h;
  }
};

}  // namespace

bool runTMAccepts(const TMSpec& tm, const std::vector<std::string>& input, long long steps,
                  AcceptanceLayout layout, std::size_t configCap) {
  Interned in(tm);
  std::unordered_set<TMConfig, ConfigHash> level;
  level.insert(initialConfig(in, input));
  for (long long k = 0; k < steps; ++k) {
    std::unordered_set<TMConfig, ConfigHash> next;
    for (const auto& c : level) {
      for (const auto& mv : in.delta[c.state][in.read(c)]) {
        if (auto n = in.apply(c, mv)) {
          next.insert(std::move(*n));
          if (next.size() > configCap)
            throw ResourceError("runTMAccepts: configuration cap exceeded");
        }
      }
    }
    level.swap(next);
    if (level.empty()) return false;
  }
  for (const auto& c : level) {
    if (c.state != in.accept) continue;
    if (layout == AcceptanceLayout::Anywhere || c.head == 0) return true;
  }
  return false;
}

NormalFormReport checkReversibleNormalForm(const TMSpec& tm) {
  NormalFormReport rep;
  rep.entryDirection.assign(tm.states.size(), 0);
  std::unordered_set<std::string> images;
  for (const auto& r : tm.delta) {
    int q2 = tm.stateIndex(r.q2);
    int dir = r.moveRight ? +1 : -1;
    if (rep.entryDirection[q2] == 0) {
      rep.entryDirection[q2] = dir;
    } else if (rep.entryDirection[q2] != dir) {
      rep.ok = false;
      rep.issues.push_back("state " + r.q2 + " entered from both directions");
    }
    std::string image = r.b + "\x1f" + r.q2 + "\x1f" + (r.moveRight ? "R" : "L");
    if (!images.insert(image).second) {
      rep.ok = false;
      rep.issues.push_back("duplicate transition image (" + r.b + "," + r.q2 + "," +
                           (r.moveRight ? "R" : "L") + ")");
    }
  }
  return rep;
}

}  // namespace tilekit
