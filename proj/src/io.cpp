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

#include "coopeq/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"

namespace coopeq::io {
namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> LineColumn(std::string_view text,
                                               std::size_t byte) {
  std::size_t line = 1, column = 1;
  const std::size_t end = std::min(byte > 0 ? byte - 1 : 0, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what, path);
}

double PayoffValue(const json& v, const std::string& path) {
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!std::isfinite(d)) Fail(path, "non-finite payoff");
    return d;
  }
  if (v.is_string()) {
    try {
      return ParseNumber(v.get_ref<const std::string&>());
    } catch (const std::invalid_argument& e) {
      Fail(path, e.what());
    }
  }
  Fail(path, "expected a number or a numeric string");
}

std::vector<std::string> Labels(const json& v, const std::string& path) {
  if (!v.is_array()) Fail(path, "expected an array of labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const json& e = v[i];
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (e.is_string()) {
      out.push_back(e.get<std::string>());
    } else if (e.is_number()) {
      out.push_back(e.dump());
    } else {
      Fail(p, "expected a string label");
    }
  }
  if (out.empty()) Fail(path, "no actions");
  return out;
}

std::int64_t ParseInteger(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw std::invalid_argument("bad integer '" + std::string(s) + "'");
  return v;
}

std::string Trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

ParseError::ParseError(const std::string& message, std::string path,
                       std::size_t line, std::size_t column)
    : std::runtime_error(message),
      path_(std::move(path)),
      line_(line),
      column_(column) {}

double ParseNumber(std::string_view text) {
  const std::string s = Trim(text);
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::int64_t p = ParseInteger(Trim(s.substr(0, slash)));
    const std::int64_t q = ParseInteger(Trim(s.substr(slash + 1)));
    if (q == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    // Exact integers below 2^53 divide with a single correct rounding.
    constexpr std::int64_t kExact = std::int64_t{1} << 53;
    if (std::llabs(p) > kExact || std::llabs(q) > kExact)
      throw std::invalid_argument("ratio terms too large in '" + s + "'");
    return static_cast<double>(p) / static_cast<double>(q);
  }
  std::string_view v = s;
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  double d = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), d);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size() ||
      !std::isfinite(d))
    throw std::invalid_argument("bad number '" + s + "'");
  return d;
}

Game ParseGame(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, column] = LineColumn(text, e.byte);
    throw ParseError("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": malformed document",
                     "", line, column);
  }
  if (!doc.is_object()) Fail("$", "expected an object");
  if (!doc.contains("players")) Fail("players", "missing field");
  const json& players = doc["players"];
  if (!players.is_number_integer() || players.get<std::int64_t>() != 2)
    Fail("players", "unsupported player count " + players.dump());
  for (const char* key : {"actions", "payoffs"})
    if (!doc.contains(key)) Fail(key, "missing field");

  const json& actions = doc["actions"];
  if (!actions.is_array() || actions.size() != 2)
    Fail("actions", "expected two label lists");
  auto rows = Labels(actions[0], "actions[0]");
  auto cols = Labels(actions[1], "actions[1]");

  const json& payoffs = doc["payoffs"];
  if (!payoffs.is_array()) Fail("payoffs", "expected an array of rows");
  if (payoffs.size() != rows.size())
    Fail("payoffs", "has " + std::to_string(payoffs.size()) +
                        " rows, expected " + std::to_string(rows.size()));
  Matrix a(rows.size(), cols.size());
  Matrix b(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string rp = "payoffs[" + std::to_string(i) + "]";
    const json& row = payoffs[i];
    if (!row.is_array()) Fail(rp, "expected an array of cells");
    if (row.size() != cols.size())
      Fail(rp, "ragged matrix: " + std::to_string(row.size()) +
                   " cells, expected " + std::to_string(cols.size()));
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const std::string cp = rp + "[" + std::to_string(j) + "]";
      const json& cell = row[j];
      if (!cell.is_array() || cell.size() != 2)
        Fail(cp, "expected a pair [u1, u2]");
      a(i, j) = PayoffValue(cell[0], cp + "[0]");
      b(i, j) = PayoffValue(cell[1], cp + "[1]");
    }
  }
  return Game(std::move(a), std::move(b), std::move(rows), std::move(cols));
}

Game LoadGame(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseGame(ss.str());
}

std::string SerializeGame(const Game& game) {
  auto labels = [](const std::vector<std::string>& v) {
    return json(v).dump();
  };
  std::string out = "{\"players\": 2,\n \"actions\": [" +
                    labels(game.labels(Player::kOne)) + ", " +
                    labels(game.labels(Player::kTwo)) + "],\n \"payoffs\": [";
  for (std::size_t i = 0; i < game.rows(); ++i) {
    out += i == 0 ? "\n  [" : ",\n  [";
    for (std::size_t j = 0; j < game.cols(); ++j) {
      if (j > 0) out += ", ";
      out += "[" + json(game.payoff1()(i, j)).dump() + ", " +
             json(game.payoff2()(i, j)).dump() + "]";
    }
    out += "]";
  }
  out += "]}\n";
  return out;
}

// ---------------------------------------------------------------------------
// Generators

Game PrisonersDilemma() {
  return Game(Matrix(2, 2, {3, 0, 5, 1}), Matrix(2, 2, {3, 5, 0, 1}),
              {"C", "D"}, {"C", "D"});
}

Game TravelersDilemma(int lo, int hi, double bonus) {
  if (lo >= hi) throw std::invalid_argument("travelers: need lo < hi");
  if (!std::isfinite(bonus) || bonus < 0)
    throw std::invalid_argument("travelers: bonus must be >= 0");
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
  Matrix a(n, n), b(n, n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(lo + static_cast<int>(i)));
    for (std::size_t j = 0; j < n; ++j) {
      const double m = lo + static_cast<double>(i);
      const double mp = lo + static_cast<double>(j);
      if (i == j) {
        a(i, j) = b(i, j) = m;
      } else if (i < j) {
        a(i, j) = m + bonus;
        b(i, j) = m - bonus;
      } else {
        a(i, j) = mp - bonus;
        b(i, j) = mp + bonus;
      }
    }
  }
  return Game(std::move(a), std::move(b), labels, labels);
}

Game Bargaining(int total, int step) {
  if (total < 0) throw std::invalid_argument("bargaining: total must be >= 0");
  if (step <= 0 || total % step != 0)
    throw std::invalid_argument("bargaining: step must divide total");
  const std::size_t n = static_cast<std::size_t>(total / step + 1);
  Matrix a(n, n), b(n, n);
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(std::to_string(static_cast<int>(i) * step));
    for (std::size_t j = 0; j < n; ++j) {
      const double x = static_cast<double>(i) * step;
      const double y = static_cast<double>(j) * step;
      if (x + y <= total) {
        a(i, j) = x;
        b(i, j) = y;
      }
    }
  }
  return Game(std::move(a), std::move(b), labels, labels);
}

Game Coordination(double k1, double k2) {
  return Game(Matrix(2, 2, {k1, 0, 0, 1}), Matrix(2, 2, {k2, 0, 0, 1}),
              {"a", "b"}, {"a", "b"});
}

Game Centipede(int turns) {
  if (turns < 2 || turns % 2 != 0 || turns > 52)
    throw std::invalid_argument("centipede: T must be even, 2 <= T <= 52");
  // End turn of each strategy; T stands for "continue".
  std::vector<int> q1, q2;
  std::vector<std::string> l1, l2;
  for (int t = 1; t < turns; t += 2) {
    q1.push_back(t);
    l1.push_back("q1," + std::to_string(t));
  }
  for (int t = 2; t < turns; t += 2) {
    q2.push_back(t);
    l2.push_back("q2," + std::to_string(t));
  }
  q1.push_back(turns);
  l1.push_back("q1,C");
  q2.push_back(turns);
  l2.push_back("q2,C");

  Matrix a(q1.size(), q2.size()), b(q1.size(), q2.size());
  for (std::size_t i = 0; i < q1.size(); ++i) {
    for (std::size_t j = 0; j < q2.size(); ++j) {
      const int t = std::min(q1[i], q2[j]);
      const double big = std::ldexp(1.0, t) + 1;
      const double small = std::ldexp(1.0, t - 1);
      if (t % 2 == 1) {
        a(i, j) = big;
        b(i, j) = small;
      } else {
        a(i, j) = small;
        b(i, j) = big;
      }
    }
  }
  return Game(std::move(a), std::move(b), std::move(l1), std::move(l2));
}

Game Xam1() {
  return Game(Matrix(1, 2, {3, 1}), Matrix(1, 2, {2, 0}), {"c"}, {"a", "b"});
}

namespace {

class ParamReader {
 public:
  ParamReader(std::string_view game, const Params& params)
      : game_(game), params_(params) {}

  double Real(const std::string& key, double fallback) {
    used_.push_back(key);
    const auto it = params_.find(key);
    if (it == params_.end()) return fallback;
    try {
      return ParseNumber(it->second);
    } catch (const std::invalid_argument&) {
      throw std::invalid_argument(game_ + ": bad value for " + key);
    }
  }

  int Integer(const std::string& key, int fallback) {
    const double v = Real(key, fallback);
    if (v != std::floor(v) || std::abs(v) > 1e9)
      throw std::invalid_argument(game_ + ": " + key + " must be an integer");
    return static_cast<int>(v);
  }

  void RejectUnknown() const {
    for (const auto& [key, value] : params_) {
      if (std::find(used_.begin(), used_.end(), key) == used_.end())
        throw std::invalid_argument(game_ + ": unknown parameter " + key);
    }
  }

 private:
  std::string game_;
  const Params& params_;
  std::vector<std::string> used_;
};

}  // namespace

Game Generate(std::string_view name, const Params& params) {
  ParamReader r(name, params);
  auto done = [&](Game g) {
    r.RejectUnknown();
    return g;
  };
  if (name == "prisoners") return done(PrisonersDilemma());
  if (name == "xam1") return done(Xam1());
  if (name == "travelers") {
    const int lo = r.Integer("lo", 2);
    const int hi = r.Integer("hi", 100);
    return done(TravelersDilemma(lo, hi, r.Real("bonus", 2.0)));
  }
  if (name == "bargaining") {
    const int total = r.Integer("total", 100);
    return done(Bargaining(total, r.Integer("step", 1)));
  }
  if (name == "coordination") {
    const double k1 = r.Real("k1", 2.0);
    return done(Coordination(k1, r.Real("k2", 0.5)));
  }
  if (name == "centipede") return done(Centipede(r.Integer("T", 20)));
  throw std::invalid_argument("unknown game '" + std::string(name) + "'");
}

}  // namespace coopeq::io
