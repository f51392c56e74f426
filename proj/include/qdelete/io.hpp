// Copyright 2026 The qdelete Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

// Machine JSON files and CSV tables.
//
// Machine JSON: {"a0": [re, im], ..., "d1": [re, im], "m1p": real}.

#include "qdelete/machine.hpp"

#include <array>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qdelete {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::array<std::string_view, 8> kAmplitudeKeys{"a0", "b0", "c0", "d0", "a1", "b1", "c1", "d1"};

/// Throws ParseError naming the offending key on missing or non-finite values.
MachineParams<double> parse_machine_json(std::string_view text);
MachineParams<double> read_machine_file(const std::filesystem::path& path);

/// Fixed key order, 17 significant digits.
std::string machine_to_json(const MachineParams<double>& p);
void write_machine_file(const std::filesystem::path& path, const MachineParams<double>& p);

/// 17 significant digits, for files.
std::string format_full(double v);
/// 10 significant digits, for tables.
std::string format_table(double v);

struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Skips '#' lines before the header; throws ParseError on ragged or non-numeric rows.
CsvTable read_csv(std::istream& in);

}  // namespace qdelete
