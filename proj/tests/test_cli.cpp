/*
 * Copyright 2026 The Tornado Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tornado/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Output {
    int status;
    std::string text;
};

Output run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + TORNADO_CLI + "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string text;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) text.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path workdir() {
    const fs::path dir = fs::temp_directory_path() / "tornado_test_cli";
    fs::create_directories(dir);
    return dir;
}

fs::path small_config() {
    const fs::path p = workdir() / "small.ini";
    std::ofstream out(p);
    out << "[grid]\nnx = 8\nny = 8\nnz = 16\nh = 0.8\n"
           "[init]\nR = 5\nD = 3\nseed = 3\nlambda = random\n"
           "[time]\ndt = 0.001\nt_max = 0.005\nsnapshot_every = 2\n";
    return p;
}

}  // namespace

TEST(Cli, RunWritesNormalizedTraceAndSnapshots) {
    const fs::path out = workdir() / "run1";
    fs::remove_all(out);
    const Output r = run_cli("run " + small_config().string() + " --out " + out.string());
    ASSERT_EQ(r.status, 0) << r.text;
    EXPECT_NE(r.text.find("outcome=horizon"), std::string::npos) << r.text;
    const tornado::EnergyTrace trace = tornado::read_energy_csv((out / "energy.csv").string());
    ASSERT_EQ(trace.size(), 6u);
    EXPECT_EQ(trace[0].t, 0.0);
    EXPECT_NEAR(trace[0].mynorm, 1.0, 1e-12);
    for (const char* snap : {"snap_000000.bin", "snap_000002.bin", "snap_000004.bin", "snap_000005.bin"}) {
        EXPECT_TRUE(fs::exists(out / snap)) << snap;
    }
    EXPECT_TRUE(fs::exists(out / "diagnostics.csv"));
}

TEST(Cli, IdenticalConfigGivesIdenticalBytes) {
    const fs::path a = workdir() / "det_a";
    const fs::path b = workdir() / "det_b";
    fs::remove_all(a);
    fs::remove_all(b);
    ASSERT_EQ(run_cli("run " + small_config().string() + " --out " + a.string()).status, 0);
    ASSERT_EQ(run_cli("run " + small_config().string() + " --out " + b.string()).status, 0);
    EXPECT_EQ(slurp(a / "energy.csv"), slurp(b / "energy.csv"));
    EXPECT_EQ(slurp(a / "snap_000005.bin"), slurp(b / "snap_000005.bin"));
}

TEST(Cli, FitOnSyntheticTrace) {
    tornado::EnergyTrace trace;
    for (int i = 0; i <= 290; ++i) {
        const double t = 0.02 + 1e-4 * i;
        trace.push(t, std::pow(0.05 - t, -5.0));
    }
    const fs::path p = workdir() / "synthetic.csv";
    tornado::write_energy_csv(trace, p.string());
    const Output r = run_cli("fit " + p.string());
    ASSERT_EQ(r.status, 0) << r.text;
    const auto pos = r.text.find("alpha=");
    ASSERT_NE(pos, std::string::npos) << r.text;
    EXPECT_NEAR(std::stod(r.text.substr(pos + 6)), 5.0, 0.25);
}

TEST(Cli, SweepWithTinyAmplitudesAllDecay) {
    const fs::path out = workdir() / "sweep";
    fs::remove_all(out);
    const Output r =
        run_cli("sweep " + small_config().string() + " --amin 1e-4 --amax 1e-2 --steps 3 --out " + out.string());
    ASSERT_EQ(r.status, 0) << r.text;
    std::istringstream lines(r.text);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == 'A' || line.rfind("bracket", 0) == 0) continue;
        ++rows;
        EXPECT_NE(line.find(",decay,"), std::string::npos) << line;
    }
    EXPECT_EQ(rows, 3);
}

TEST(Cli, ReportsErrors) {
    const Output missing = run_cli("run /nonexistent/config.ini");
    EXPECT_NE(missing.status, 0);
    EXPECT_NE(missing.text.find("error"), std::string::npos);
    const fs::path bad = workdir() / "bad.ini";
    std::ofstream(bad) << "[grid]\nnx = 8\nny = 8\nnz = 8\nh = 0.5\n[init]\nR = 5\nD = 3\n[time]\ndt = 0.001\nt_max = 0.01\n";
    const Output r = run_cli("run " + bad.string());
    EXPECT_NE(r.status, 0);
    EXPECT_NE(r.text.find("lambda"), std::string::npos);
}
