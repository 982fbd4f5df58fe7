// Copyright 2026 The qbridge Authors.
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

#ifndef QBRIDGE_CLI_H_
#define QBRIDGE_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qbridge/bridge.h"
#include "qbridge/strategy.h"

namespace qbridge::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kOutOfRegion = 4,
};

// Bad flags, malformed input files. Exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable input or unwritable output. Exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A sweep axis: either one fixed value or `steps` evenly spaced points from
// min to max inclusive.
struct Axis {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;
  bool ranged = false;

  double at(int i) const;
  int size() const { return ranged ? steps : 1; }
};

// "0.5" or "min:max:steps". Values must lie in [0, 1]; ranges need
// steps >= 2 and min < max. Throws UsageError.
Axis parse_axis(std::string_view text, const char* flag);

// Fixed 7-decimal rendering, locale independent, never "-0.0000000".
std::string fixed7(double value);

// CSV bodies with header row and LF line endings.
std::string curves_csv(double p_prime, const Axis& q);
std::string surface_csv(const Axis& p_prime, const Axis& q);

// Input files. Product form is `key=value` lines (p0, p1, q); joint form is
// eight whitespace-separated reals in (a0, a1, b) lexicographic order. '#'
// starts a comment in either form.
using DistributionSpec = std::variant<strategy::ProductForm, strategy::JointInputDistribution>;
DistributionSpec parse_distribution(std::string_view text);
strategy::JointInputDistribution to_joint(const DistributionSpec& spec);

// `key=value` lines: kind (rkb|defense), p0, p1, q, bypass. Missing keys take
// the kind's defaults.
bridge::ScenarioConfig parse_scenario(std::string_view text);

std::string read_file(const std::filesystem::path& path);
// Writes through a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct Options {
  bool color = false;
};

// Full command line, argv[0] included. Never throws; returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Options& options = {});

}  // namespace qbridge::cli

#endif  // QBRIDGE_CLI_H_
