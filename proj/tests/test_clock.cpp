#include <doctest.h>

#include <cmath>
#include <set>

#include "tilekit/clock.hpp"
#include "tilekit/eigen_solver.hpp"

using namespace tilekit;

namespace {

// "R0 _r _r _r|0B 0 0 0" -> ChainState of length 6
ChainState frame(const std::string& text) {
  auto bar = text.find('|');
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s + " ") {
      if (c == ' ') {
        if (!cur.empty()) out.push_back(cur);
        cur.clear();
      } else
        cur += c;
    }
    return out;
  };
  auto t1s = split(text.substr(0, bar)), t2s = split(text.substr(bar + 1));
  REQUIRE(t1s.size() == t2s.size());
  auto parse1 = [](const std::string& s) {
    if (s == "_l") return T1::BlankL;
    if (s == "_r") return T1::BlankR;
    if (s == "R0") return T1::R0;
    if (s == "R1") return T1::R1;
    if (s == "R2") return T1::R2;
    if (s == "L0") return T1::L0;
    if (s == "L1") return T1::L1;
    return T1::L2;
  };
  auto parse2 = [](const std::string& s) {
    if (s == "0") return T2::Zero;
    if (s == "1") return T2::One;
    if (s == "2") return T2::Two;
    if (s == "0B") return T2::ZeroB;
    return T2::OneB;
  };
  ChainState st;
  st.sites.push_back(kLeftEnd);
  for (std::size_t i = 0; i < t1s.size(); ++i)
    st.sites.push_back(interiorCode(parse1(t1s[i]), parse2(t2s[i])));
  st.sites.push_back(kRightEnd);
  return st;
}

int findFrame(const std::vector<ChainState>& seq, const ChainState& s) {
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (seq[i] == s) return static_cast<int>(i);
  return -1;
}

void checkConsecutive(const std::vector<ChainState>& seq, const std::vector<const char*>& frames) {
  int at = findFrame(seq, frame(frames[0]));
  REQUIRE(at >= 0);
  for (std::size_t k = 1; k < frames.size(); ++k) {
    CAPTURE(k);
    REQUIRE(at + (int)k < (int)seq.size());
    CHECK(seq[at + k] == frame(frames[k]));
  }
}

}  // namespace

TEST_CASE("transition rule table: no pair repeats on either side") {
  const auto& rules = transitionRules();
  std::set<std::pair<SiteCode, SiteCode>> lhs, rhs;
  for (const auto& r : rules) {
    CHECK(lhs.insert({r.a, r.b}).second);
    CHECK(rhs.insert({r.c, r.d}).second);
  }
}

TEST_CASE("clock sequence length is 4(N-2)^2") {
  for (int n = 4; n <= 10; ++n) {
    auto seq = clockSequence(n);
    CAPTURE(n);
    CHECK((long long)seq.size() == 4ll * (n - 2) * (n - 2));
    // starts and ends as specified
    CHECK(seq.front() == [&] {
      ChainState s;
      s.sites.push_back(kLeftEnd);
      s.sites.push_back(interiorCode(T1::R0, T2::ZeroB));
      for (int i = 0; i < n - 3; ++i) s.sites.push_back(interiorCode(T1::BlankR, T2::Zero));
      s.sites.push_back(kRightEnd);
      return s;
    }());
    CHECK(seq.back() == [&] {
      ChainState s;
      s.sites.push_back(kLeftEnd);
      s.sites.push_back(interiorCode(T1::L2, T2::OneB));
      for (int i = 0; i < n - 3; ++i) s.sites.push_back(interiorCode(T1::BlankR, T2::Two));
      s.sites.push_back(kRightEnd);
      return s;
    }());
    // all distinct
    std::set<std::string> names;
    for (const auto& s : seq) names.insert(chainName(s));
    CHECK(names.size() == seq.size());
  }
}

TEST_CASE("figure traces at N = 6 are reproduced frame-exactly") {
  auto seq = clockSequence(6);

  SUBCASE("initial iteration of the second hand") {
    checkConsecutive(seq, {
        "R0 _r _r _r|0B 0 0 0",
        "_l R0 _r _r|0B 0 0 0",
        "_l _l R0 _r|0B 0 0 0",
        "_l _l _l R0|0B 0 0 0",
        "_l _l _l L0|0B 0 0 0",
        "_l _l L0 _r|0B 0 0 0",
        "_l L0 _r _r|0B 0 0 0",
        "L0 _r _r _r|0B 0 0 0",
        "R1 _r _r _r|0B 0 0 0",
    });
    CHECK(findFrame(seq, frame("R0 _r _r _r|0B 0 0 0")) == 0);
  }

  SUBCASE("first and last counting iterations") {
    checkConsecutive(seq, {
        "R1 _r _r _r|0B 0 0 0",
        "_l R1 _r _r|0B 0 0 0",
        "_l _l R1 _r|0B 0 0 0",
        "_l _l _l R1|0B 0 0 0",
        "_l _l _l L1|0B 0 0 0",
        "_l _l L1 _r|0B 0 0 0",
        "_l L1 _r _r|0B 0 0 0",
        "L1 _r _r _r|1 0B 0 0",
        "R1 _r _r _r|1 0B 0 0",
    });
    checkConsecutive(seq, {
        "_l _l _l L1|1 1 0B 0",
        "_l _l L1 _r|1 1 1 0B",
        "_l L1 _r _r|1 1 1 0B",
        "L1 _r _r _r|1 1 1 0B",
        "R1 _r _r _r|1 1 1 0B",
        "_l R1 _r _r|1 1 1 0B",
        "_l _l R1 _r|1 1 1 0B",
        "_l _l _l R1|1 1 1 0B",
        "_l _l _l L2|1 1 1 1B",
    });
  }

  SUBCASE("first and last computation iterations") {
    checkConsecutive(seq, {
        "_l _l _l L2|1 1 1 1B",
        "_l _l L2 _r|1 1 1 1B",
        "_l L2 _r _r|1 1 1 1B",
        "L2 _r _r _r|1 1 1 1B",
        "R2 _r _r _r|1 1 1 1B",
        "_l R2 _r _r|1 1 1 1B",
        "_l _l R2 _r|1 1 1 1B",
        "_l _l _l R2|1 1 1B 2",
        "_l _l _l L2|1 1 1B 2",
    });
    checkConsecutive(seq, {
        "R2 _r _r _r|1 1B 2 2",
        "_l R2 _r _r|1B 2 2 2",
        "_l _l R2 _r|1B 2 2 2",
        "_l _l _l R2|1B 2 2 2",
        "_l _l _l L2|1B 2 2 2",
        "_l _l L2 _r|1B 2 2 2",
        "_l L2 _r _r|1B 2 2 2",
        "L2 _r _r _r|1B 2 2 2",
    });
    CHECK(seq.back() == frame("L2 _r _r _r|1B 2 2 2"));
  }
}

TEST_CASE("the initial state has no reverse transition") {
  auto seq = clockSequence(5);
  CHECK_FALSE(clockTransition(seq.front(), false).has_value());
  CHECK_FALSE(clockTransition(seq.back(), true).has_value());
  SUBCASE("forward then backward is the identity on mid-sequence states") {
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
      auto fwd = clockTransition(seq[i], true);
      REQUIRE(fwd.has_value());
      CHECK(*fwd == seq[i + 1]);
      auto back = clockTransition(*fwd, false);
      REQUIRE(back.has_value());
      CHECK(*back == seq[i]);
    }
  }
}

namespace {

std::vector<ChainState> allWellFormed(int n) {
  std::vector<ChainState> out;
  for (int pos = 1; pos <= n - 2; ++pos)
    for (T1 arr : {T1::R0, T1::R1, T1::R2, T1::L0, T1::L1, T1::L2})
      for (int phase = 0; phase < 2; ++phase)
        for (int ones = 0; ones <= n - 3; ++ones) {
          ChainState s;
          s.sites.push_back(kLeftEnd);
          for (int i = 1; i <= n - 2; ++i) {
            T2 b = i <= ones ? T2::One
                             : (i == ones + 1 ? (phase ? T2::OneB : T2::ZeroB)
                                              : (phase ? T2::Two : T2::Zero));
            T1 a = i < pos ? T1::BlankL : (i == pos ? arr : T1::BlankR);
            s.sites.push_back(interiorCode(a, b));
          }
          s.sites.push_back(kRightEnd);
          out.push_back(s);
        }
  return out;
}

bool hasIllegalPair(const ChainState& s) {
  static const auto pairs = expandedIllegalPairs();
  for (int i = 0; i + 1 < s.n(); ++i)
    for (const auto& [a, b] : pairs)
      if (s.sites[i] == a && s.sites[i + 1] == b) return true;
  return false;
}

}  // namespace

TEST_CASE("well-formed states: count, uniqueness, closure, clairvoyance") {
  for (int n : {4, 5, 6}) {
    CAPTURE(n);
    auto states = allWellFormed(n);
    CHECK((long long)states.size() == 12ll * (n - 2) * (n - 2));

    auto seq = clockSequence(n);
    std::set<std::string> onPath;
    for (const auto& s : seq) onPath.insert(chainName(s));

    for (const auto& s : states) {
      REQUIRE(isWellFormed(s));
      // forward/backward uniqueness: clockTransition throws on ambiguity
      auto fwd = clockTransition(s, true);
      auto bwd = clockTransition(s, false);
      // closure
      if (fwd) CHECK(isWellFormed(*fwd));
      if (bwd) CHECK(isWellFormed(*bwd));

      if (onPath.count(chainName(s))) continue;
      // clairvoyance: an illegal pair within 2N transitions, one direction
      auto probes = [&](bool forward) {
        ChainState cur = s;
        for (int k = 0; k <= 2 * n; ++k) {
          if (hasIllegalPair(cur)) return true;
          auto nxt = clockTransition(cur, forward);
          if (!nxt) return false;
          cur = *nxt;
        }
        return false;
      };
      CAPTURE(chainName(s));
      CHECK((probes(true) || probes(false)));
    }
  }
}

TEST_CASE("illegal pattern list") {
  auto pats = illegalPairSet();
  // the named single-site prohibitions
  auto hasSite = [&](T1 a, T2 b) {
    return std::find(pats.sites.begin(), pats.sites.end(), interiorCode(a, b)) != pats.sites.end();
  };
  CHECK(hasSite(T1::L1, T2::ZeroB));
  CHECK(hasSite(T1::R2, T2::OneB));
  CHECK(hasSite(T1::R0, T2::One));
  CHECK(hasSite(T1::L2, T2::Zero));
  // bracket-shape pairs: nothing may follow the right end
  auto hasPair = [&](SiteCode a, SiteCode b) {
    return std::find(pats.pairs.begin(), pats.pairs.end(), std::make_pair(a, b)) !=
           pats.pairs.end();
  };
  CHECK(hasPair(kRightEnd, kLeftEnd));
  CHECK(hasPair(kRightEnd, interiorCode(T1::BlankL, T2::One)));
  CHECK(hasPair(interiorCode(T1::R2, T2::One), interiorCode(T1::BlankR, T2::ZeroB)));
  // frozen totals (regression constants, audited against the assembly rules)
  CHECK(pats.sites.size() == 16);
  CHECK(pats.pairs.size() == 1618);
  CHECK(expandedIllegalPairs().size() == 1684);
}

TEST_CASE("hamiltonian dimensions") {
  auto h4 = buildHamiltonian(4, Sector::BracketedAll);
  CHECK(h4.dim == 1600);
  auto w6 = buildHamiltonian(6, Sector::BracketedWellFormed);
  CHECK(w6.dim == 192);
  auto p4 = buildHamiltonian(4, Sector::LegalPath);
  CHECK(p4.dim == 16);
}

TEST_CASE("assembled operators are symmetric") {
  for (auto sector : {Sector::LegalPath, Sector::BracketedWellFormed}) {
    auto h = buildHamiltonian(5, sector);
    for (std::int64_t r = 0; r < h.dim; ++r)
      for (std::int64_t k = h.rowPtr[r]; k < h.rowPtr[r + 1]; ++k) {
        std::int64_t c = h.col[k];
        // find (c, r)
        double mirror = 0;
        for (std::int64_t j = h.rowPtr[c]; j < h.rowPtr[c + 1]; ++j)
          if (h.col[j] == r) mirror = h.val[j];
        CHECK(h.val[k] == doctest::Approx(mirror).epsilon(1e-14));
      }
  }
}

TEST_CASE("legal-path sector is the displayed tridiagonal & its spectrum") {
  auto h = buildHamiltonian(4, Sector::LegalPath);
  const std::int64_t T = h.dim;
  REQUIRE(T == 16);
  // explicit tridiagonal: 1/2 at the two corners, 1 inside, -1/2 off-diagonal
  for (std::int64_t r = 0; r < T; ++r)
    for (std::int64_t k = h.rowPtr[r]; k < h.rowPtr[r + 1]; ++k) {
      std::int64_t c = h.col[k];
      double expect = 0;
      if (c == r) expect = (r == 0 || r == T - 1) ? 0.5 : 1.0;
      if (c == r + 1 || c + 1 == r) expect = -0.5;
      CHECK(h.val[k] == doctest::Approx(expect).epsilon(1e-14));
    }
  auto eig = lowestEigenpairs(h, 2);
  CHECK(eig.values[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(eig.values[0]) < 1e-11);
  CHECK(eig.values[1] == doctest::Approx(1.0 - std::cos(M_PI / 16)).epsilon(1e-10));
}

TEST_CASE("bracketed sector: zero ground state uniform on the schedule") {
  auto h = buildHamiltonian(4, Sector::BracketedAll);
  auto eig = lowestEigenpairs(h, 2);
  CHECK(std::abs(eig.values[0]) < 1e-10);
  CHECK(eig.values[1] > 1e-4);

  auto seq = clockSequence(4);
  const double amp = 1.0 / std::sqrt((double)seq.size());
  std::set<std::int64_t> schedule;
  for (const auto& s : seq) schedule.insert(basisIndex(h, s));
  const auto& v = eig.vectors[0];
  // fix the global sign to the first schedule amplitude
  double sign = v[*schedule.begin()] < 0 ? -1.0 : 1.0;
  for (std::int64_t i = 0; i < h.dim; ++i) {
    double expect = schedule.count(i) ? amp : 0.0;
    CHECK(std::abs(sign * v[i] - expect) < 1e-8);
  }
}
