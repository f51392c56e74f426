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

#include "qdelete/io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>

namespace qdelete {

namespace {

double finite_number(const nlohmann::json& v, std::string_view key) {
  if (!v.is_number()) throw ParseError("machine JSON: key '" + std::string(key) + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError("machine JSON: key '" + std::string(key) + "' is not finite");
  return d;
}

std::string format_digits(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

MachineParams<double> parse_machine_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("machine JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("machine JSON: top level must be an object");

  MachineParams<double> p;
  for (std::size_t k = 0; k < kAmplitudeKeys.size(); ++k) {
    const std::string key(kAmplitudeKeys[k]);
    if (!doc.contains(key)) throw ParseError("machine JSON: missing key '" + key + "'");
    const auto& v = doc.at(key);
    if (!v.is_array() || v.size() != 2) throw ParseError("machine JSON: key '" + key + "' must be [re, im]");
    const std::complex<double> z(finite_number(v[0], key), finite_number(v[1], key));
    (k < 4 ? p.row0 : p.row1)(static_cast<int>(k % 4)) = z;
  }
  if (!doc.contains("m1p")) throw ParseError("machine JSON: missing key 'm1p'");
  const double m1p = finite_number(doc.at("m1p"), "m1p");
  if (m1p < -1.0 || m1p > 1.0) throw ParseError("machine JSON: key 'm1p' must lie in [-1, 1]");
  p.sigma = BlankState<double>(m1p);
  return p;
}

MachineParams<double> read_machine_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open machine file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_machine_json(buf.str());
}

std::string machine_to_json(const MachineParams<double>& p) {
  std::string out = "{\n";
  for (std::size_t k = 0; k < kAmplitudeKeys.size(); ++k) {
    const auto z = (k < 4 ? p.row0 : p.row1)(static_cast<int>(k % 4));
    out += "  \"" + std::string(kAmplitudeKeys[k]) + "\": [" + format_full(z.real()) + ", " + format_full(z.imag()) +
           "],\n";
  }
  out += "  \"m1p\": " + format_full(p.sigma.m1p()) + "\n}\n";
  return out;
}

void write_machine_file(const std::filesystem::path& path, const MachineParams<double>& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << machine_to_json(p);
}

std::string format_full(double v) { return format_digits(v, 17); }
std::string format_table(double v) { return format_digits(v, 10); }

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() == '#') {
      if (!t.header.empty()) throw ParseError("CSV: comment line after header");
      t.comments.push_back(line);
      continue;
    }
    if (t.header.empty()) {
      t.header = split_commas(line);
      continue;
    }
    const auto cells = split_commas(line);
    if (cells.size() != t.header.size()) throw ParseError("CSV: row width differs from header");
    std::vector<double> row;
    for (const auto& c : cells) {
      double v = 0;
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || ptr != c.data() + c.size()) throw ParseError("CSV: non-numeric cell '" + c + "'");
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw ParseError("CSV: missing header");
  return t;
}

}  // namespace qdelete
