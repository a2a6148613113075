// Copyright 2026 The qpurity Authors
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

#include <gtest/gtest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qpurity/cli.h"
#include "qpurity/errors.h"

namespace qpurity::cli {
namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "qpurity");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string &text) {
    std::vector<std::string> v;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        v.push_back(line);
    }
    return v;
}

nlohmann::json manifest_of(const Result &r) {
    auto pos = r.err.find("manifest ");
    EXPECT_NE(pos, std::string::npos);
    return nlohmann::json::parse(r.err.substr(pos + 9, r.err.find('\n', pos) - pos - 9));
}

fs::path scratch_dir(const std::string &name) {
    fs::path dir = fs::temp_directory_path() / ("qpurity_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

TEST(Helpers, CsvQuoting) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
}

TEST(Helpers, DoubleFormattingRoundTrips) {
    for (double x : {0.1, 1.0 / 3.0, 0.9536657064851384, 1e-300, 12345.0}) {
        EXPECT_EQ(std::stod(format_double(x)), x);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(Helpers, Fnv1a) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Helpers, PriorSpecs) {
    EXPECT_EQ(parse_prior("bures").lambda(), 0.5);
    EXPECT_EQ(parse_prior("hard-sphere").lambda(), 0.0);
    EXPECT_EQ(parse_prior("lambda=0.25").lambda(), 0.25);
    EXPECT_THROW(parse_prior("lambda=-1"), DomainError);
    EXPECT_THROW(parse_prior("lambda=1"), DomainError);
    EXPECT_THROW(parse_prior("lambda=0.3x"), DomainError);
    EXPECT_THROW(parse_prior("uniform"), DomainError);
    EXPECT_THROW(parse_prior("table=/nonexistent/prior.csv"), DomainError);

    fs::path dir = scratch_dir("prior");
    std::ofstream(dir / "w.csv") << "r,w\n0,0\n0.5,0.75\n1,3\n";
    PriorFamily p = parse_prior("table=" + (dir / "w.csv").string());
    EXPECT_TRUE(p.is_tabulated());
    EXPECT_NEAR(p.radial_moment(0), 1.0, 1e-12);
}

TEST(Dispatch, UsageErrors) {
    EXPECT_EQ(invoke({}).code, kUsage);
    EXPECT_EQ(invoke({"bogus"}).code, kUsage);
    EXPECT_EQ(invoke({"joint-bound", "--n", "4"}).code, kUsage);  // prior is mandatory
    EXPECT_EQ(invoke({"joint-bound", "--n", "four", "--prior", "bures"}).code, kUsage);
    EXPECT_EQ(invoke({"joint-bound", "--n", "4", "--prior", "lambda=1.2"}).code, kUsage);
    EXPECT_EQ(invoke({"joint-bound", "--n", "0", "--prior", "bures"}).code, kUsage);
    EXPECT_EQ(invoke({"simulate-adaptive", "--n", "100", "--alpha", "1.5", "--prior", "bures", "--trials", "2",
                      "--seed", "1"})
                  .code,
              kUsage);
    EXPECT_EQ(invoke({"--help"}).code, kOk);
}

TEST(Dispatch, CapabilityError) {
    Result r = invoke({"equatorial-bound", "--n", "600", "--prior", "bures"});
    EXPECT_EQ(r.code, kCapability);
    EXPECT_NE(r.err.find("512"), std::string::npos);
}

TEST(JointBoundCmd, SummaryAndBlocks) {
    Result r = invoke({"joint-bound", "--n", "4", "--prior", "hard-sphere", "--per-block"});
    ASSERT_EQ(r.code, kOk) << r.err;
    auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 5u);  // header, 3 blocks (2j = 0, 2, 4), summary
    EXPECT_EQ(rows[0], "row,n,prior,two_j,n_j_log,v_perp,v_par,r_opt,f_max,n_times_one_minus_f,panels");
    EXPECT_EQ(rows[1].rfind("block,4,lambda=0,0,", 0), 0u);
    EXPECT_EQ(rows[4].rfind("summary,4,lambda=0,,,,,,0.96124113838434", 0), 0u);
}

TEST(EquatorialCmd, HasMColumn) {
    Result r = invoke({"equatorial-bound", "--n", "3", "--prior", "bures", "--per-block"});
    ASSERT_EQ(r.code, kOk) << r.err;
    auto rows = lines(r.out);
    EXPECT_NE(rows[0].find("two_j,two_m"), std::string::npos);
    EXPECT_EQ(rows.size(), 1u + 6u + 1u);  // (2j=1: 2 rows) + (2j=3: 4 rows)
}

TEST(Fig1Cmd, ThirtyRows) {
    fs::path dir = scratch_dir("fig1");
    ::setenv(kOutputDirEnv, dir.c_str(), 1);
    Result r = invoke({"fig1", "--n-min", "10", "--n-max", "5000", "--points", "30", "--prior", "bures", "--out",
                       "fig1_bures.csv"});
    ::unsetenv(kOutputDirEnv);
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(dir / "fig1_bures.csv");
    std::stringstream body;
    body << in.rdbuf();
    auto rows = lines(body.str());
    ASSERT_EQ(rows.size(), 31u);
    EXPECT_EQ(rows[0], "n,prior,f_max,n_times_one_minus_f,joint_asymptote");
    EXPECT_EQ(rows[1].rfind("10,", 0), 0u);
    EXPECT_EQ(rows[30].rfind("5000,", 0), 0u);

    nlohmann::json m = manifest_of(r);
    char digest[32];
    std::snprintf(digest, sizeof digest, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(body.str())));
    EXPECT_EQ(m["digest"], digest);
    EXPECT_EQ(m["subcommand"], "fig1");
    EXPECT_EQ(m["params"]["points"], "30");
    EXPECT_TRUE(fs::exists(dir / "fig1_bures.csv.manifest.json"));
}

TEST(PredictCmd, DeficitBreakdown) {
    Result r = invoke({"predict", "--n", "1000", "--alpha", "0.7", "--lambda", "0.5"});
    ASSERT_EQ(r.code, kOk) << r.err;
    auto rows = lines(r.out);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0], "kind,n,alpha,lambda,term,value");
    EXPECT_EQ(rows[1].rfind("adaptive-pos-lambda,1000,0.7,0.5,one_over_2n1,", 0), 0u);
    EXPECT_EQ(rows[2].rfind("adaptive-pos-lambda,1000,0.7,0.5,tomography_correction,", 0), 0u);

    Result j = invoke({"predict", "--n", "1000", "--lambda", "0.5", "--kind", "joint"});
    ASSERT_EQ(j.code, kOk);
    EXPECT_NE(j.out.find("joint,1000,,0.5,one_over_2n,5e-04"), std::string::npos);
}

TEST(SimulateCmd, ByteIdenticalReruns) {
    std::vector<std::string> args{"simulate-adaptive", "--n", "300",  "--alpha",   "0.7", "--prior",
                                  "bures",             "--trials", "500", "--seed", "42"};
    Result a = invoke(args);
    Result b = invoke(args);
    ASSERT_EQ(a.code, kOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    args.insert(args.end(), {"--threads", "3"});
    EXPECT_EQ(invoke(args).out, a.out);
    auto rows = lines(a.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[1].rfind("adaptive,300,0.7,", 0), 0u);
}

TEST(SimulateCmd, PerTrialRows) {
    fs::path dir = scratch_dir("trials");
    Result r = invoke({"simulate-greedy", "--n", "50", "--prior", "hard-sphere", "--trials", "7", "--seed", "1",
                       "--per-trial", (dir / "t.csv").string()});
    ASSERT_EQ(r.code, kOk) << r.err;
    std::ifstream in(dir / "t.csv");
    std::stringstream body;
    body << in.rdbuf();
    auto rows = lines(body.str());
    ASSERT_EQ(rows.size(), 8u);
    EXPECT_EQ(rows[0], "r,cos_theta,R,fidelity,sq_error");
}

// Every manifest carries enough to regenerate its CSV.
TEST(Manifest, RoundTripReproducesBody) {
    const std::vector<std::vector<std::string>> runs = {
        {"joint-bound", "--n", "33", "--prior", "bures", "--per-block"},
        {"mse", "--n", "500", "--alpha", "0.6", "--r", "0.2,0.7", "--trials", "300", "--seed", "9"},
        {"compare", "--n", "200", "--prior", "hard-sphere", "--trials", "400", "--seed", "3"},
    };
    for (const auto &args : runs) {
        Result first = invoke(args);
        ASSERT_EQ(first.code, kOk) << first.err;
        nlohmann::json m = manifest_of(first);
        std::vector<std::string> replay{m["subcommand"].get<std::string>()};
        for (auto &[key, value] : m["params"].items()) {
            std::string v = value.get<std::string>();
            if (v == "true") {
                replay.push_back("--" + key);
            } else if (!v.empty() && v != "false") {
                replay.push_back("--" + key);
                replay.push_back(v);
            }
        }
        Result second = invoke(replay);
        ASSERT_EQ(second.code, kOk) << second.err;
        EXPECT_EQ(second.out, first.out) << args[0];
    }
}

}  // namespace
}  // namespace qpurity::cli
