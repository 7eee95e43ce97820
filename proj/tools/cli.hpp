// Copyright 2026 The qcerase Authors
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
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcerase::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

enum class Command {
  Decompose,
  Counter,
  MeasurementFor,
  DecompositionFor,
  Purify,
  Measure,
  DistantCheck,
  Pattern,
  Simulate,
  Verify,
};

enum class OutputFormat { Json, Csv };

/// Bad flags or flag combinations (exit 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flag values; angles are already converted to radians.
struct Params {
  std::optional<double> r, p, w, theta, q, lambda;
  std::string branch = "both";
  double x_min = -10.0;
  double x_max = 10.0;
  std::size_t n = 2048;
  double separation = 4.0;
  double width = 1.5;
  double tilt = 6.0;
  std::uint64_t seed = 1;
  std::uint64_t photons = 100000;
  bool screen = false;
  std::size_t bins = 64;
  unsigned threads = 1;
  std::size_t grid_steps = 10;
};

struct RunSpec {
  Command command = Command::Verify;
  Params params;
  OutputFormat format = OutputFormat::Json;
  std::optional<std::string> out_path;
};

std::string command_name(Command c);

/// Parses argv-style arguments (without the program name). Throws UsageError.
/// Returns nullopt after printing help.
std::optional<RunSpec> parse(const std::vector<std::string>& args, std::ostream& out);

/// Runs a parsed spec, writing the artifact to `out` (or the spec's file) and
/// diagnostics to `err`. Returns the process exit code.
int execute(const RunSpec& spec, std::ostream& out, std::ostream& err);

/// parse + execute with exit-code mapping.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcerase::cli
