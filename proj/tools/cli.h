// Copyright 2026 The infalpha Authors. All Rights Reserved.
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
// =============================================================================
#ifndef INFALPHA_TOOLS_CLI_H_
#define INFALPHA_TOOLS_CLI_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace infalpha::cli {

enum ExitCode : int {
  kOk = 0,
  kDegenerate = 1,
  kUsage = 2,
  kIoError = 3,
};

struct CliInvocation {
  std::string subcommand;
  std::optional<std::string> config_path;
  std::optional<std::string> input_path;
  std::optional<std::string> out_path;
  std::optional<std::string> csv_path;
  std::optional<std::string> pmf;        // uniform:K, power:P, exp:A, finite:x=w,...
  std::optional<std::string> reference;  // same syntax as pmf
  std::optional<std::string> estimator;
  std::optional<std::string> a;    // C,T
  std::optional<std::string> h;    // C,T
  std::optional<std::string> eps;  // C,T, tau_star, or a plain value for diagnose
  std::optional<std::vector<std::size_t>> n_grid;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<double> delta;
  std::optional<std::string> support_stats;  // SIZE,MIN_MASS
  std::optional<std::vector<double>> eps_grid;
  std::optional<std::vector<std::size_t>> m_values;
  std::string spread = "sqrt_log";
  std::string formula = "entropy";
  std::size_t jobs = 1;
  bool diagnostics = false;
  bool json = false;
  int verbosity = 0;
};

struct ParseOutcome {
  std::optional<CliInvocation> invocation;  // empty when help or an error was printed
  int exit_code = kOk;
};

// Parses argv without the program name. Help and usage errors are written to
// `out` and `err` respectively.
ParseOutcome parse_invocation(const std::vector<std::string>& args, std::ostream& out,
                              std::ostream& err);

int dispatch(const CliInvocation& inv, std::ostream& out, std::ostream& err);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infalpha::cli

#endif  // INFALPHA_TOOLS_CLI_H_
