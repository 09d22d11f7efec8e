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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hcembed/embedding.hpp"

namespace hcembed {

/**
 * Structured text report: a header (command, seed, outcome) followed by
 * "[section]" blocks of "key: value" lines. Contents depend only on the
 * command and seed, so equal inputs give byte-identical reports.
 */
class ExperimentReport {
 public:
  ExperimentReport(std::string command, std::uint64_t seed);

  void set_outcome(std::string outcome) { outcome_ = std::move(outcome); }
  const std::string& outcome() const { return outcome_; }

  void section(const std::string& name);
  void field(const std::string& key, const std::string& value);
  void field(const std::string& key, const char* value) { field(key, std::string(value)); }
  void field(const std::string& key, double value);
  void field(const std::string& key, std::uint64_t value);
  void field(const std::string& key, std::uint32_t value) { field(key, std::uint64_t{value}); }
  void field(const std::string& key, int value) { field(key, static_cast<std::uint64_t>(value)); }
  void field(const std::string& key, bool value) { field(key, std::string(value ? "yes" : "no")); }
  void counters(const std::map<std::string, std::uint64_t>& c);
  void line(const std::string& text);
  /// One "mask upper|lower id" line per cube vertex.
  void embedding(const CubeEmbedding& e);

  std::string str() const;

 private:
  std::string command_;
  std::uint64_t seed_;
  std::string outcome_ = "unknown";
  std::vector<std::string> body_;
};

/// Shortest decimal that round-trips the double.
std::string format_number(double x);

}  // namespace hcembed
