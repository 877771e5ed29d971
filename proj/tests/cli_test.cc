// Copyright 2026 The ncoh Authors
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
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

namespace {

namespace fs = std::filesystem;

int run(const std::string &args) {
    std::string cmd = std::string(NCOH_SWEEP_BIN) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("ncoh_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }
    std::string out(const std::string &name) const {
        return (dir_ / name).string();
    }
    fs::path dir_;
};

TEST_F(Cli, Success) {
    EXPECT_EQ(run("--experiment qpea-sweep --m-list 3,5 --theta-steps 101 --theta-min 0.1 "
                  "--theta-max 3 --out " + out("q")),
              0);
    EXPECT_TRUE(fs::exists(out("q.csv")));
    EXPECT_TRUE(fs::exists(out("q.json")));
    EXPECT_EQ(run("--help"), 0);
    EXPECT_EQ(run("--version"), 0);
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run("--experiment qpea-sweep --bogus 1 --out " + out("x")), 2);
    EXPECT_EQ(run("--out " + out("x")), 2);
    EXPECT_EQ(run("--experiment nonsense --out " + out("x")), 2);
    EXPECT_EQ(run("--experiment coherence-pure --distance hellinger --out " + out("x")), 2);
    EXPECT_EQ(run("--experiment qpea-sweep --m-list five --out " + out("x")), 2);
}

TEST_F(Cli, DomainErrors) {
    EXPECT_EQ(run("--experiment coherence-mixed --r-min 0 --r-max 1 --r-steps 5 --out " + out("x")), 3);
    EXPECT_EQ(run("--experiment coherence-pure --theta-min 0.1 --theta-max 1 --theta-steps 1 --out " +
                  out("x")),
              3);
    EXPECT_EQ(run("--experiment qpea-sweep --m-list 30 --out " + out("x")), 3);
    EXPECT_EQ(run("--experiment coherence-pure --orders 0 --out " + out("x")), 3);
    EXPECT_EQ(run("--experiment qpea-sweep --m-list 5 --delta 0.5 --out " + out("x")), 3);
    EXPECT_FALSE(fs::exists(out("x.csv")));
}

TEST_F(Cli, UnwritableOutput) {
    EXPECT_EQ(run("--experiment qpea-sweep --m-list 3 --theta-min 0.1 --theta-max 3 --theta-steps 11 "
                  "--out /nonexistent_dir_ncoh/x"),
              1);
}

TEST_F(Cli, ThreadCountDoesNotChangeCsv) {
    const std::string common =
        "--experiment coherence-pure --theta-min 0.2 --theta-max 2.9 --theta-steps 13 --grid 201 ";
    ASSERT_EQ(run(common + "--threads 1 --out " + out("a")), 0);
    ASSERT_EQ(run(common + "--threads 3 --out " + out("b")), 0);
    EXPECT_EQ(slurp(out("a.csv")), slurp(out("b.csv")));
}

}  // namespace
