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

// Command-line front end: coopeq <command> (--game FILE | --gen NAME) ...

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "coopeq/game.hpp"
#include "coopeq/io.hpp"
#include "coopeq/solvers.hpp"
#include "json.hpp"

namespace {

using coopeq::Game;
using coopeq::MixedStrategy;
using coopeq::Player;
using coopeq::StrategyProfile;
using coopeq::ValuePair;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUsage = 2;

// Thrown for bad flag values found after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string game_path;
  std::string gen_name;
  std::vector<std::string> params;
  double tolerance = coopeq::kDefaultEpsilon;
  int grid = 20;
  std::string format = "text";
  std::string profile;
  std::string default_payoffs;
  std::string out_path;
};

std::string Num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string Pair(const ValuePair& v) {
  return "(" + Num(v.first) + ", " + Num(v.second) + ")";
}

json PairJson(const ValuePair& v) { return json::array({v.first, v.second}); }

std::string Describe(const MixedStrategy& s,
                     const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] <= 0.0) continue;
    if (!out.empty()) out += " + ";
    out += s[i] == 1.0 ? labels[i] : Num(s[i]) + "*" + labels[i];
  }
  return out;
}

json StrategyJson(const MixedStrategy& s) {
  return json(std::vector<double>(s.probs().begin(), s.probs().end()));
}

// Collects one command's report in both output formats.
class Report {
 public:
  void Line(const std::string& text) { text_ += text + "\n"; }
  json& Json() { return json_; }

  void Profile(const Game& g, const StrategyProfile& s) {
    Line("player 1: " + Describe(s.row, g.labels(Player::kOne)));
    Line("player 2: " + Describe(s.col, g.labels(Player::kTwo)));
    json_["profile"] = {StrategyJson(s.row), StrategyJson(s.col)};
  }

  void Print(const std::string& format) const {
    if (format == "json") {
      std::cout << json_.dump(2) << "\n";
    } else {
      std::cout << text_;
    }
  }

 private:
  std::string text_;
  json json_ = json::object();
};

Game LoadInput(const Options& o) {
  if (o.game_path.empty() == o.gen_name.empty())
    throw UsageError("exactly one of --game or --gen is required");
  if (!o.game_path.empty()) {
    if (!o.params.empty()) throw UsageError("--param only applies to --gen");
    try {
      return coopeq::io::LoadGame(o.game_path);
    } catch (const coopeq::io::ParseError&) {
      throw;
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
  }
  coopeq::io::Params params;
  for (const auto& p : o.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos || eq == 0)
      throw UsageError("--param expects key=value, got '" + p + "'");
    params[p.substr(0, eq)] = p.substr(eq + 1);
  }
  return coopeq::io::Generate(o.gen_name, params);
}

std::vector<double> ParseList(const std::string& text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    std::istringstream words(item);
    std::string w;
    while (words >> w) out.push_back(coopeq::io::ParseNumber(w));
  }
  return out;
}

StrategyProfile ParseProfile(const Game& g, const Options& o) {
  if (o.profile.empty()) throw UsageError("--profile is required");
  const auto semi = o.profile.find(';');
  if (semi == std::string::npos)
    throw UsageError("--profile expects \"<p1 probs>;<p2 probs>\"");
  const auto p1 = ParseList(o.profile.substr(0, semi));
  const auto p2 = ParseList(o.profile.substr(semi + 1));
  if (p1.size() != g.rows() || p2.size() != g.cols())
    throw UsageError("--profile has " + std::to_string(p1.size()) + ";" +
                     std::to_string(p2.size()) + " entries, game is " +
                     std::to_string(g.rows()) + "x" +
                     std::to_string(g.cols()));
  return {MixedStrategy(p1, o.tolerance), MixedStrategy(p2, o.tolerance)};
}

void Utilities(Report& r, const Game& g, const StrategyProfile& s) {
  const ValuePair u = coopeq::ExpectedUtilities(g, s);
  r.Line("utilities: " + Pair(u));
  r.Json()["utilities"] = PairJson(u);
}

// ---------------------------------------------------------------------------
// Commands. Each returns an exit code and fills the report.

int Info(const Game& g, const Options&, Report& r) {
  r.Line("actions: " + std::to_string(g.rows()) + " x " +
         std::to_string(g.cols()));
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
    return s;
  };
  r.Line("player 1: " + join(g.labels(Player::kOne)));
  r.Line("player 2: " + join(g.labels(Player::kTwo)));
  r.Json()["rows"] = g.rows();
  r.Json()["cols"] = g.cols();
  r.Json()["actions"] = {g.labels(Player::kOne), g.labels(Player::kTwo)};
  return kOk;
}

int Bu(const Game& g, const Options&, Report& r) {
  for (Player p : {Player::kOne, Player::kTwo}) {
    const auto w = coopeq::BestUtilityWitness(g, p);
    const auto& opp = g.labels(coopeq::Other(p));
    const std::string i = p == Player::kOne ? "1" : "2";
    r.Line("BU" + i + " = " + Num(w.value) + "  (plays " +
           Describe(w.strategy, g.labels(p)) + ", opponent answers " +
           opp[w.response] + ")");
    r.Json()["bu" + i] = w.value;
    r.Json()["witness" + i] = {{"strategy", StrategyJson(w.strategy)},
                               {"response", w.response}};
  }
  return kOk;
}

int Minimax(const Game& g, const Options&, Report& r) {
  const double m1 = coopeq::MinimaxValue(g, Player::kOne);
  const double m2 = coopeq::MinimaxValue(g, Player::kTwo);
  r.Line("mm1 = " + Num(m1));
  r.Line("mm2 = " + Num(m2));
  r.Json()["mm"] = {m1, m2};
  return kOk;
}

int Msw(const Game& g, const Options&, Report& r) {
  const auto w = coopeq::MaxSocialWelfare(g);
  r.Line("MSW = " + Num(w.value) + " at (" + g.labels(Player::kOne)[w.row] +
         ", " + g.labels(Player::kTwo)[w.col] + ")");
  r.Json()["msw"] = w.value;
  r.Json()["cell"] = {w.row, w.col};
  return kOk;
}

int DecomposeCmd(const Game& g, const Options&, Report& r) {
  const auto d = coopeq::Decompose(g);
  auto dump = [&](const char* name, const coopeq::Matrix& m) {
    r.Line(std::string(name) + ":");
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      std::string line = " ";
      json row = json::array();
      for (std::size_t j = 0; j < m.cols(); ++j) {
        line += " " + Num(m(i, j));
        row.push_back(m(i, j));
      }
      r.Line(line);
      rows.push_back(row);
    }
    r.Json()[name] = rows;
  };
  dump("team", d.team);
  dump("zero_sum", d.zero_sum);
  return kOk;
}

int Pce(const Game& g, const Options& o, Report& r) {
  const auto s = coopeq::FindPce(g, {o.tolerance});
  r.Json()["found"] = s.has_value();
  if (!s) {
    r.Line("no PCE");
    return kNegative;
  }
  r.Profile(g, *s);
  Utilities(r, g, *s);
  return kOk;
}

int CheckPce(const Game& g, const Options& o, Report& r) {
  const auto s = ParseProfile(g, o);
  const ValuePair bu = coopeq::BestUtilities(g);
  const bool ok = coopeq::IsPce(g, s, bu, o.tolerance);
  Utilities(r, g, s);
  r.Line("BU: " + Pair(bu));
  r.Line(ok ? "PCE: yes" : "PCE: no");
  r.Json()["bu"] = PairJson(bu);
  r.Json()["pce"] = ok;
  return ok ? kOk : kNegative;
}

int Alpha(const Game& g, const Options& o, Report& r) {
  const auto s = ParseProfile(g, o);
  const double a = coopeq::AlphaOf(g, s);
  r.Line("alpha = " + Num(a));
  r.Json()["alpha"] = a;
  return kOk;
}

void AlphaReport(const Game& g, const coopeq::AlphaResult& res, Report& r) {
  r.Profile(g, res.profile);
  r.Line("utilities: " + Pair(res.utilities));
  r.Line("BU: " + Pair(res.best_utilities));
  r.Line("alpha = " + Num(res.alpha));
  r.Json()["utilities"] = PairJson(res.utilities);
  r.Json()["bu"] = PairJson(res.best_utilities);
  r.Json()["alpha"] = res.alpha;
}

int Mpce(const Game& g, const Options& o, Report& r) {
  AlphaReport(g, coopeq::FindMpce(g, {o.tolerance}), r);
  return kOk;
}

int PoMpce(const Game& g, const Options& o, Report& r) {
  AlphaReport(g, coopeq::FindParetoOptimalMpce(g, {o.tolerance}), r);
  return kOk;
}

int Coco(const Game& g, const Options&, Report& r) {
  const auto c = coopeq::CocoValue(g);
  r.Line(Pair(c.value));
  r.Json()["coco"] = PairJson(c.value);
  r.Json()["team_max"] = c.team_max;
  r.Json()["zero_sum_mm"] = {c.zero_sum_mm1, c.zero_sum_mm2};
  return kOk;
}

int SidepayMpce(const Game& g, const Options& o, Report& r) {
  ValuePair v;
  if (o.default_payoffs.empty()) {
    v = coopeq::SidepayMpceValue(g);
  } else {
    const auto d = ParseList(o.default_payoffs);
    if (d.size() != 2) throw UsageError("--default-payoffs expects d1,d2");
    v = coopeq::DefaultPayoffSidepayValue(g, d[0], d[1]);
  }
  r.Line(Pair(v));
  r.Json()["value"] = PairJson(v);
  return kOk;
}

int SidepayProfile(const Game& g, const Options&, Report& r) {
  const auto d = coopeq::SidepayMpceProfile(g);
  const auto& rl = g.labels(Player::kOne);
  const auto& cl = g.labels(Player::kTwo);
  r.Line("agreed: (" + rl[d.row] + ", " + cl[d.col] + ")");
  r.Line("transfer from player 1 to player 2: " + Num(d.transfer));
  r.Line("backups: (" + rl[d.backup_row] + ", " + cl[d.backup_col] + ")");
  r.Line("payoffs: " + Pair(coopeq::DealPayoffs(g, d)));
  r.Json()["agreed"] = {d.row, d.col};
  r.Json()["transfer"] = d.transfer;
  r.Json()["backup"] = {d.backup_row, d.backup_col};
  r.Json()["payoffs"] = PairJson(coopeq::DealPayoffs(g, d));
  return kOk;
}

int CheckCe(const Game& g, const Options& o, Report& r) {
  const auto s = ParseProfile(g, o);
  if (o.grid < 1) throw UsageError("--grid must be >= 1");
  const auto v = coopeq::CeFalsify(g, s, o.grid, o.tolerance);
  r.Json()["violation"] = v.has_value();
  if (!v) {
    r.Line("no violating deviation found (grid " + std::to_string(o.grid) +
           ")");
    return kOk;
  }
  const std::string who = v->deviator == Player::kOne ? "1" : "2";
  r.Line("violation: player " + who + " deviates to " +
         Describe(v->deviation, g.labels(v->deviator)));
  r.Line("  deviator payoff under best response: " +
         Num(v->deviator_payoff));
  r.Line("  opponent best payoff: " + Num(v->opponent_best));
  r.Line("  punishment floor: " + Num(v->punishment_floor));
  r.Json()["deviator"] = v->deviator == Player::kOne ? 1 : 2;
  r.Json()["deviation"] = StrategyJson(v->deviation);
  r.Json()["deviator_payoff"] = v->deviator_payoff;
  r.Json()["opponent_best"] = v->opponent_best;
  r.Json()["punishment_floor"] = v->punishment_floor;
  return kNegative;
}

int Gen(const Game& g, const Options& o, Report&) {
  const std::string doc = coopeq::io::SerializeGame(g);
  if (o.out_path.empty()) {
    std::cout << doc;
  } else {
    std::ofstream out(o.out_path);
    if (!(out << doc)) throw std::runtime_error("cannot write " + o.out_path);
  }
  return kOk;
}

using Command = std::function<int(const Game&, const Options&, Report&)>;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooperative equilibria of 2-player normal-form games"};
  app.require_subcommand(1);
  Options o;

  struct Spec {
    const char* name;
    const char* help;
    Command run;
  };
  const std::vector<Spec> specs = {
      {"info", "Game size and action labels", Info},
      {"bu", "Best utilities under best response", Bu},
      {"minimax", "Minimax values", Minimax},
      {"msw", "Maximum social welfare", Msw},
      {"decompose", "Team and zero-sum parts", DecomposeCmd},
      {"pce", "Find a perfect cooperative equilibrium", Pce},
      {"check-pce", "Test whether --profile is a PCE", CheckPce},
      {"alpha", "Largest alpha for which --profile is an alpha-PCE", Alpha},
      {"mpce", "Find a maximum PCE", Mpce},
      {"po-mpce", "Find a Pareto-optimal maximum PCE", PoMpce},
      {"coco", "Coco value", Coco},
      {"sidepay-mpce", "M-PCE value with side payments", SidepayMpce},
      {"sidepay-profile", "Deal profile attaining the side-payment value",
       SidepayProfile},
      {"check-ce", "Search for a deviation refuting --profile as a CE",
       CheckCe},
      {"gen", "Write a generated game document", Gen},
  };

  Command selected;
  for (const auto& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("--game", o.game_path, "Game document (JSON)");
    sub->add_option("--gen", o.gen_name,
                    "Generated game: prisoners, travelers, bargaining, "
                    "coordination, centipede, xam1");
    sub->add_option("--param", o.params, "Generator parameter key=value")
        ->take_all()
        ->allow_extra_args(false);
    sub->add_option("--tolerance", o.tolerance, "Decision tolerance")
        ->capture_default_str();
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    const std::string name = spec.name;
    if (name == "check-pce" || name == "alpha" || name == "check-ce")
      sub->add_option("--profile", o.profile,
                      "\"<p1 probs>;<p2 probs>\", e.g. \"1,0;0.5,0.5\"")
          ->required();
    if (name == "check-ce")
      sub->add_option("--grid", o.grid, "Deviation grid resolution")
          ->capture_default_str();
    if (name == "sidepay-mpce")
      sub->add_option("--default-payoffs", o.default_payoffs,
                      "Use default payoffs d1,d2 instead of minimax values");
    if (name == "gen") sub->add_option("--out", o.out_path, "Output file");
    sub->callback([&selected, run = spec.run] { selected = run; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const Game g = LoadInput(o);
    Report report;
    const int code = selected(g, o, report);
    report.Print(o.format);
    return code;
  } catch (const coopeq::io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
