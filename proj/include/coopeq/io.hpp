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

#ifndef COOPEQ_IO_HPP_
#define COOPEQ_IO_HPP_

// Game documents and canonical game generators.
//
// A game document is a JSON object
//
//   {"players": 2,
//    "actions": [["C", "D"], ["C", "D"]],
//    "payoffs": [[[3, 3], [0, 5]],
//                [[5, 0], [1, 1]]]}
//
// where payoffs[i][j] = [u1, u2] for row action i and column action j.
// A payoff is a JSON number or a string holding a decimal or a ratio "p/q".

#include <cstddef>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "coopeq/game.hpp"

namespace coopeq::io {

// A malformed document. line/column are 1-based and 0 when unknown; path is
// the offending field ("payoffs[1][0][1]"), empty for syntax errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::string path, std::size_t line = 0,
             std::size_t column = 0);

  const std::string& path() const { return path_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::string path_;
  std::size_t line_;
  std::size_t column_;
};

Game ParseGame(std::string_view text);
// Throws std::runtime_error if the file cannot be read, ParseError if it
// does not hold a valid document.
Game LoadGame(const std::filesystem::path& path);

// Numbers are written in shortest round-trip form, so
// ParseGame(SerializeGame(g)) == g bit for bit.
std::string SerializeGame(const Game& game);

// "0.25", "-3", "1e-3" or "p/q" with integer p, q and q != 0.
// Throws std::invalid_argument.
double ParseNumber(std::string_view text);

// Generators. Each throws std::invalid_argument on bad parameters.
Game PrisonersDilemma();
Game TravelersDilemma(int lo = 2, int hi = 100, double bonus = 2.0);
Game Bargaining(int total = 100, int step = 1);
Game Coordination(double k1, double k2);
// Reduced strategies: player 1 quits at turn 1, 3, ..., T-1 or never (C);
// player 2 quits at turn 2, 4, ..., T-2 or never. T must be even.
Game Centipede(int turns = 20);
Game Xam1();

using Params = std::map<std::string, std::string>;

// Dispatch by name: prisoners, travelers (lo, hi, bonus), bargaining
// (total, step), coordination (k1, k2), centipede (T), xam1.
// Unknown names or parameters throw std::invalid_argument.
Game Generate(std::string_view name, const Params& params = {});

}  // namespace coopeq::io

#endif  // COOPEQ_IO_HPP_
