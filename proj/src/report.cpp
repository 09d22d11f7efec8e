// Copyright 2026 The hcembed Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hcembed/report.hpp"

#include <charconv>
#include <sstream>

namespace hcembed {

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

ExperimentReport::ExperimentReport(std::string command, std::uint64_t seed)
    : command_(std::move(command)), seed_(seed) {}

void ExperimentReport::section(const std::string& name) { body_.push_back("[" + name + "]"); }

void ExperimentReport::field(const std::string& key, const std::string& value) { body_.push_back(key + ": " + value); }

void ExperimentReport::field(const std::string& key, double value) { field(key, format_number(value)); }

void ExperimentReport::field(const std::string& key, std::uint64_t value) { field(key, std::to_string(value)); }

void ExperimentReport::counters(const std::map<std::string, std::uint64_t>& c) {
  for (const auto& [k, v] : c) field(k, v);
}

void ExperimentReport::line(const std::string& text) { body_.push_back(text); }

void ExperimentReport::embedding(const CubeEmbedding& e) {
  section("embedding");
  field("n", e.n);
  for (std::size_t mask = 0; mask < e.image.size(); ++mask)
    body_.push_back(std::to_string(mask) + (e.image[mask].side == Side::Upper ? " upper " : " lower ") +
                    std::to_string(e.image[mask].id));
}

std::string ExperimentReport::str() const {
  std::ostringstream out;
  out << "command: " << command_ << '\n' << "seed: " << seed_ << '\n' << "outcome: " << outcome_ << '\n';
  for (const auto& l : body_) out << l << '\n';
  return out.str();
}

}  // namespace hcembed
