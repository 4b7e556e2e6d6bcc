// Copyright 2026 The ptmoments Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Command-line front end: one subcommand per study, CSV or JSON tables.
 */

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ptm/core.hpp"

namespace ptm::cli {

/// One output line of the fixed-schema table.
struct Row {
    std::string family;
    Tripartition partition{1, 1, 0};
    std::string quantity;
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
};

inline constexpr const char *kCsvHeader =
    "family,N_A,N_B,N_C,quantity,value,std_error,n_samples,seed";

/// 17 significant digits; non-finite values print as nan, inf or -inf.
std::string format_number(double x);

std::string to_csv(const std::vector<Row> &rows);

/**
 * @brief Parses argv, runs the subcommand and writes the table to --out
 * (default `out`). Returns 0 on success, 1 on library errors and 2 on
 * invalid usage.
 */
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

int run(int argc, const char *const *argv);

} // namespace ptm::cli
