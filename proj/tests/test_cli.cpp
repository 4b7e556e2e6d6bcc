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

#include <catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "ptm/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "ptmoments");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code =
        ptm::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string l;
    while (std::getline(in, l)) {
        out.push_back(l);
    }
    return out;
}

} // namespace

TEST_CASE("haar-analytic full grid emits one r2 row per point") {
    const auto r = call({"haar-analytic", "--nab", "10", "--grid", "full", "--nc-max", "12"});
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE_FALSE(ls.empty());
    CHECK(ls[0] == ptm::cli::kCsvHeader);
    int r2_rows = 0;
    for (const auto &l : ls) {
        if (l.find(",r2_tilde,") != std::string::npos) {
            ++r2_rows;
        }
    }
    CHECK(r2_rows == 9 * 13);
}

TEST_CASE("Same seed gives byte-identical output") {
    const std::vector<std::string> args = {"haar-mc", "--na", "2", "--nb", "2", "--nc", "2",
                                           "--samples", "12", "--seed", "77"};
    const auto a = call(args);
    const auto b = call(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto other = args;
    other.back() = "78";
    CHECK(call(other).out != a.out);
}

TEST_CASE("Stabilizer triple row") {
    const auto r = call({"stabilizer", "--triple", "0,0,0,1,1,0,0"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("stabilizer,2,2,1,r2_tilde,1,0,1,0") != std::string::npos);
    CHECK(r.out.find("stabilizer,2,2,1,negativity,1,0,1,0") != std::string::npos);
    CHECK(r.out.find("stabilizer,2,2,1,p3,0.0625,") != std::string::npos);
}

TEST_CASE("JSON output carries the manifest") {
    const auto r = call({"fermion", "--na", "1", "--nb", "1", "--nc", "1", "--samples",
                         "3", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\"manifest\"") != std::string::npos);
    CHECK(r.out.find("\"wall_clock_seconds\"") != std::string::npos);
    CHECK(r.out.find("\"subcommand\": \"fermion\"") != std::string::npos);
}

TEST_CASE("Invalid usage and library errors") {
    CHECK(call({}).code == 2);
    CHECK(call({"nonsense"}).code == 2);
    CHECK(call({"haar-mc", "--samples", "x"}).code == 2);
    CHECK(call({"haar-analytic", "--method", "guess", "--na", "1", "--nb", "1"}).code == 2);
    const auto cap = call({"haar-mc", "--na", "20", "--nb", "10", "--samples", "1"});
    CHECK(cap.code == 1);
    CHECK(cap.err.find("dense limit") != std::string::npos);
    CHECK(call({"stabilizer", "--triple", "1,2"}).code == 1);
    CHECK(call({"haar-mc"}).code == 1);
}

TEST_CASE("Every subcommand runs at small size") {
    const std::vector<std::vector<std::string>> runs = {
        {"noise", "--na", "1", "--nb", "1", "--nc", "1", "--epsilon", "0.5", "--samples", "4"},
        {"stabilizer", "--na", "2", "--nb", "1", "--nc", "1", "--samples", "4"},
        {"mps", "--na", "2", "--nb", "2", "--nc", "2", "--chi", "2", "--samples", "3"},
        {"doped-mg", "--na", "2", "--nb", "1", "--nc", "1", "--nswap", "2", "--samples", "3"},
        {"pxp", "--n", "6", "--quench", "z2", "--window", "1,2", "--snapshots", "3"},
        {"shadows", "--na", "1", "--nb", "1", "--nc", "1", "--ns", "2", "--nu", "6", "--nm", "2"},
    };
    for (const auto &args : runs) {
        const auto r = call(args);
        INFO(args[0] << ": " << r.err);
        CHECK(r.code == 0);
        CHECK(lines(r.out).size() > 1);
    }
}
