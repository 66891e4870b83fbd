// Copyright 2026 The coopeq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance runner: one PASS/FAIL line per criterion, with the individual
// checks listed underneath. Exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "coopeq/game.hpp"
#include "coopeq/io.hpp"
#include "coopeq/solvers.hpp"
#include "property_suites.hpp"

namespace coopeq {
namespace {

using Clock = std::chrono::steady_clock;

class Criterion {
 public:
  Criterion(int id, std::string title, double time_limit)
      : id_(id), title_(std::move(title)), limit_(time_limit),
        start_(Clock::now()) {}

  void Check(bool ok, const std::string& what) {
    ok_ = ok_ && ok;
    lines_.push_back(std::string(ok ? "    ok    " : "    FAIL  ") + what);
  }

  void Near(double got, double want, double tol, const std::string& what) {
    char buf[160];
    std::snprintf(buf, sizeof buf, ": %.12g (want %.12g +- %.1e)", got, want,
                  tol);
    Check(std::abs(got - want) <= tol, what + buf);
  }

  void Timed(const std::string& what, double seconds, double limit) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " %.3f s (limit %g s)", seconds, limit);
    Check(seconds < limit, what + buf);
  }

  bool Finish() {
    const double s = std::chrono::duration<double>(Clock::now() - start_).count();
    char buf[96];
    std::snprintf(buf, sizeof buf, "total %.3f s (limit %g s)", s, limit_);
    Check(s < limit_, buf);
    std::printf("%s criterion %d: %s\n", ok_ ? "PASS" : "FAIL", id_,
                title_.c_str());
    for (const auto& l : lines_) std::printf("%s\n", l.c_str());
    std::fflush(stdout);
    return ok_;
  }

 private:
  int id_;
  std::string title_;
  double limit_;
  Clock::time_point start_;
  bool ok_ = true;
  std::vector<std::string> lines_;
};

double Seconds(const std::function<void()>& f) {
  const auto t0 = Clock::now();
  f();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

MixedStrategy Mix(std::size_t n, std::size_t a, std::size_t b, double pa) {
  std::vector<double> p(n, 0.0);
  p[a] += pa;
  p[b] += 1.0 - pa;
  return MixedStrategy(p);
}

StrategyProfile Pure(const Game& g, std::size_t r, std::size_t c) {
  return {MixedStrategy::Pure(g.rows(), r), MixedStrategy::Pure(g.cols(), c)};
}

std::size_t IndexOf(const Game& g, Player p, const std::string& label) {
  const auto& l = g.labels(p);
  return static_cast<std::size_t>(std::find(l.begin(), l.end(), label) -
                                  l.begin());
}

bool PrisonersDilemma() {
  Criterion c(1, "Prisoner's Dilemma", 0.1);
  const Game g = io::PrisonersDilemma();
  const ValuePair bu = BestUtilities(g);
  c.Near(bu.first, 1, 1e-9, "BU1");
  c.Near(bu.second, 1, 1e-9, "BU2");
  c.Check(IsPce(g, Pure(g, 0, 0), bu), "(C,C) is PCE");
  c.Check(IsPce(g, Pure(g, 1, 1), bu), "(D,D) is PCE");
  c.Check(IsPce(g, {MixedStrategy({0.5, 0.5}), MixedStrategy::Pure(2, 0)}, bu),
          "(1/2 C + 1/2 D, C) is PCE");
  const AlphaResult m = FindMpce(g);
  c.Near(m.alpha, 2, 1e-9, "M-PCE alpha");
  c.Check(m.profile.row[0] > 1 - 1e-12 && m.profile.col[0] > 1 - 1e-12,
          "M-PCE at (C,C)");
  const ValuePair coco = CocoValue(g).value;
  c.Near(coco.first, 3, 1e-9, "coco, player 1");
  c.Near(coco.second, 3, 1e-9, "coco, player 2");
  return c.Finish();
}

bool TravelersDilemma() {
  Criterion c(2, "Traveler's Dilemma", 600);
  const Game g = io::TravelersDilemma();
  const auto at = [](int v) { return static_cast<std::size_t>(v - 2); };
  ValuePair bu;
  const double t_bu = Seconds([&] { bu = BestUtilities(g); });
  c.Check(bu.first >= 98 + 1.0 / 6 - 1e-6 && bu.first <= 99 + 1e-6,
          "BU1 = " + std::to_string(bu.first) + " in [98 1/6, 99]");
  c.Timed("best utilities", t_bu, 10);
  const double t_check = Seconds([&] {
    const ValuePair b = BestUtilities(g);  // as a standalone check would
    c.Check(IsPce(g, Pure(g, at(100), at(100)), b), "(100,100) is PCE");
    c.Check(IsPce(g, Pure(g, at(99), at(99)), b), "(99,99) is PCE");
    c.Check(!IsPce(g, Pure(g, at(98), at(98)), b), "(98,98) is not PCE");
    c.Check(!IsPce(g, Pure(g, at(2), at(2)), b), "(2,2) is not PCE");
    const MixedStrategy half = Mix(g.rows(), at(100), at(99), 0.5);
    c.Check(IsPce(g, {half, half}, b), "(1/2 100 + 1/2 99, same) is PCE");
    c.Check(IsPce(g,
                  {MixedStrategy::Pure(g.rows(), at(100)),
                   Mix(g.cols(), at(100), at(99), 2.0 / 3)},
                  b),
            "(100, 2/3 100 + 1/3 99) is PCE");
  });
  c.Timed("PCE checks", t_check, 10);
  std::optional<AlphaResult> full;
  const double t_full = Seconds([&] { full = FindMpce(g); });
  c.Near(full->utilities.first, 100, 1e-9, "M-PCE utility, player 1");
  c.Near(full->utilities.second, 100, 1e-9, "M-PCE utility, player 2");
  c.Timed("M-PCE, 99 actions", t_full, 600);
  std::optional<AlphaResult> small;
  const double t_small =
      Seconds([&] { small = FindMpce(io::TravelersDilemma(2, 30, 2)); });
  c.Near(small->utilities.first, 30, 1e-9, "M-PCE utility 2..30, player 1");
  c.Near(small->utilities.second, 30, 1e-9, "M-PCE utility 2..30, player 2");
  c.Timed("M-PCE, 2..30", t_small, 15);
  return c.Finish();
}

bool Bargaining() {
  Criterion c(3, "Nash bargaining", 61);
  const Game g = io::Bargaining();
  std::optional<AlphaResult> m;
  bool none = false;
  const double t_search = Seconds([&] {
    none = !FindPce(g).has_value();
    m = FindMpce(g);
  });
  c.Check(none, "no PCE");
  c.Near(m->alpha, -50, 1e-6, "M-PCE alpha");
  c.Near(m->utilities.first, 50, 1e-6, "M-PCE utility, player 1");
  c.Near(m->utilities.second, 50, 1e-6, "M-PCE utility, player 2");
  c.Timed("PCE and M-PCE search", t_search, 60);
  ValuePair coco, side;
  const double t_values = Seconds([&] {
    coco = CocoValue(g).value;
    side = SidepayMpceValue(g);
  });
  c.Near(coco.first, 50, 1e-6, "coco, player 1");
  c.Near(coco.second, 50, 1e-6, "coco, player 2");
  c.Near(side.first, 50, 1e-6, "side-payment value, player 1");
  c.Near(side.second, 50, 1e-6, "side-payment value, player 2");
  c.Timed("values", t_values, 1);
  return c.Finish();
}

bool Coordination() {
  Criterion c(4, "coordination games", 0.5);
  struct Case {
    double k1, k2;
  };
  for (const Case k : {Case{2, 2}, Case{0.5, 0.5}, Case{2, 0.5},
                       Case{1.5, 0.5}, Case{1.2, 0.8}}) {
    const Game g = io::Coordination(k.k1, k.k2);
    const std::string tag =
        "(" + std::to_string(k.k1) + ", " + std::to_string(k.k2) + ")";
    const double t = Seconds([&] {
      const bool mixed_interest = k.k1 > 1 && k.k2 < 1;
      // Common interest: the shared favourite cell gives both their BU.
      const double want = mixed_interest ? -std::min(k.k1 - 1, 1 - k.k2) : 0.0;
      c.Check(FindPce(g).has_value() == !mixed_interest,
              tag + (mixed_interest ? " has no PCE" : " has a PCE"));
      c.Near(FindMpce(g).alpha, want, 1e-9, tag + " M-PCE alpha");
    });
    c.Timed(tag, t, 0.1);
  }
  return c.Finish();
}

bool Centipede() {
  Criterion c(5, "centipede, T = 20", 5);
  const Game g = io::Centipede(20);
  const double K = 3.0 * (1 << 18), C = 3.0 * (1 << 17);
  const ValuePair bu = BestUtilities(g);
  const double bu1 = std::ldexp(1.0, 19) + K / (K + 1);
  const double bu2 = std::ldexp(1.0, 18) + C / (C + 1);
  c.Near(bu.first, bu1, 1e-9 * bu1, "BU1");
  c.Near(bu.second, bu2, 1e-9 * bu2, "BU2");

  const std::size_t q19 = IndexOf(g, Player::kOne, "q1,19");
  const std::size_t q1c = IndexOf(g, Player::kOne, "q1,C");
  const std::size_t q18 = IndexOf(g, Player::kTwo, "q2,18");
  const std::size_t q2c = IndexOf(g, Player::kTwo, "q2,C");
  const double lo = 1 - C / ((C + 1) * (K + 1));
  const double hi = K / (K + 1);
  // Player 1 continues and player 2 mixes. Player 1 then earns at most
  // 2^19 < BU1, so this family cannot pass.
  for (double beta : {lo, hi}) {
    const StrategyProfile s{MixedStrategy::Pure(g.rows(), q1c),
                            Mix(g.cols(), q18, q2c, beta)};
    const ValuePair u = ExpectedUtilities(g, s);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "(q1,C, b q2,18 + (1-b) q2,C), b = %.15g is PCE "
                  "[U = (%.10g, %.10g)]",
                  beta, u.first, u.second);
    c.Check(IsPce(g, s, bu, 1e-6), buf);
  }
  // Roles exchanged: player 1 mixes q1,19 / q1,C against q2,C. The same two
  // numbers bound the PCE weights, in increasing order.
  for (double beta : {hi, lo}) {
    const StrategyProfile s{Mix(g.rows(), q19, q1c, beta),
                            MixedStrategy::Pure(g.cols(), q2c)};
    char buf[120];
    std::snprintf(buf, sizeof buf,
                  "(b q1,19 + (1-b) q1,C, q2,C), b = %.15g is PCE", beta);
    c.Check(IsPce(g, s, bu, 1e-6), buf);
  }

  const ValuePair coco = CocoValue(g).value;
  const double big = std::ldexp(1.0, 19) + std::ldexp(1.0, 20);
  c.Near(coco.first, (big + 3) / 2, 1e-12 * big, "coco, player 1");
  c.Near(coco.second, (big - 1) / 2, 1e-12 * big, "coco, player 2");

  const AlphaResult m = FindMpce(g);
  const double weight = 1 / (K + 2) - C / ((K + 2) * (K + 1) * (C + 1));
  const StrategyProfile closed{Mix(g.rows(), q1c, q19, weight),
                               MixedStrategy::Pure(g.cols(), q2c)};
  c.Near(m.alpha, AlphaOf(g, closed, bu), 1e-6,
         "M-PCE alpha vs closed-form profile");
  c.Near(m.profile.row[q1c], weight, 1e-6, "M-PCE weight on q1,C");
  return c.Finish();
}

bool Xam1() {
  Criterion c(6, "1x2 example game", 0.05);
  const Game g = io::Xam1();
  c.Near(MinimaxValue(g, Player::kOne), 1, 1e-9, "mm1");
  c.Near(MinimaxValue(g, Player::kTwo), 2, 1e-9, "mm2");
  c.Near(MaxSocialWelfare(g).value, 5, 1e-9, "MSW");
  const ValuePair side = SidepayMpceValue(g);
  c.Near(side.first, 2, 1e-9, "side-payment value, player 1");
  c.Near(side.second, 3, 1e-9, "side-payment value, player 2");
  const ValuePair coco = CocoValue(g).value;
  c.Near(coco.first, 3, 1e-9, "coco, player 1");
  c.Near(coco.second, 2, 1e-9, "coco, player 2");
  c.Near(SidepayMpceProfile(g).transfer, 1, 1e-9, "transfer");
  return c.Finish();
}

bool Properties() {
  using namespace coopeq::testing;
  Criterion c(7, "property suites", 60);
  const std::vector<std::function<SuiteResult()>> suites = {
      [] { return SidepayAxioms(500, 1); },
      [] { return CocoForms(500, 2); },
      [] { return ZeroSumDuality(500, 3); },
      [] { return PceDominatesNash(500, 4); },
      [] { return ParetoClosure(500, 5); },
      [] { return MpceMatchesOracle(500, 6); },
      [] { return BilinearMatchesOracle(1000, 7); },
      [] { return ParetoOptimalMpceIsCe(500, 8); },
  };
  for (const auto& run : suites) {
    const SuiteResult r = run();
    char buf[240];
    std::snprintf(buf, sizeof buf, "%s: %d cases, %d checks, %d failures, %.2f s",
                  r.name.c_str(), r.cases, r.checks, r.failures, r.seconds);
    std::string line = buf;
    if (r.failures > 0) line += " (first: " + r.first_failure + ")";
    c.Check(r.ok() && r.cases >= 500, line);
  }
  return c.Finish();
}

bool CeFixtures() {
  Criterion c(8, "cooperative-equilibrium fixtures", 30);
  const Game td = io::TravelersDilemma();
  c.Check(!CeFalsify(td, Pure(td, 98, 97), 50),
          "Traveler's Dilemma (100, 99): no violation at grid 50");
  const Game co = io::Coordination(2, 0.5);
  const StrategyProfile ne{MixedStrategy({2.0 / 3, 1.0 / 3}),
                           MixedStrategy({1.0 / 3, 2.0 / 3})};
  const auto v = CeFalsify(co, ne, 20);
  c.Check(v.has_value(), "coordination (2, 0.5) mixed Nash: violation found");
  return c.Finish();
}

}  // namespace
}  // namespace coopeq

int main() {
  using namespace coopeq;
  const bool results[] = {PrisonersDilemma(), TravelersDilemma(), Bargaining(),
                          Coordination(),     Centipede(),        Xam1(),
                          Properties(),       CeFixtures()};
  int failed = 0;
  for (bool ok : results) failed += ok ? 0 : 1;
  std::printf("%d of 8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
