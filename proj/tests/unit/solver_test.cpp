#include <gtest/gtest.h>

#include <chrono>
#include <fstream>

#include "support.hpp"
#include "tracelogic/bench.hpp"
#include "tracelogic/error.hpp"
#include "tracelogic/solver.hpp"

using namespace tracelogic;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  auto dir = fs::temp_directory_path() / ("tracelogic-test-" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

fs::path script(const std::string& name, const std::string& body) {
  auto path = temp_dir() / name;
  std::ofstream(path) << "#!/bin/sh\n" << body << "\n";
  fs::permissions(path, fs::perms::owner_all);
  return path;
}

SolverConfig fake(const fs::path& exe, int timeout = 5) {
  SolverConfig c;
  c.name = exe.filename().string();
  c.executable = exe.string();
  c.args = {"{file}", "{timeout}", "{timeout_ms}"};
  c.timeout_seconds = timeout;
  c.results = {{"unsat", Verdict::Proved}, {"sat", Verdict::NotProved}, {"unknown", Verdict::Unknown}};
  return c;
}

}  // namespace

TEST(Solver, VerdictNames) {
  for (Verdict v : {Verdict::Proved, Verdict::NotProved, Verdict::Unknown, Verdict::Timeout, Verdict::SolverError}) {
    EXPECT_EQ(parse_verdict(to_string(v)), v);
  }
  EXPECT_FALSE(parse_verdict("maybe"));
}

TEST(Solver, ClassifyOutput) {
  auto rules = builtin_solvers().front().results;
  EXPECT_EQ(classify_output("unsat\n", rules), Verdict::Proved);
  EXPECT_EQ(classify_output("sat\n", rules), Verdict::NotProved);
  EXPECT_EQ(classify_output("  unknown \n", rules), Verdict::Unknown);
  EXPECT_EQ(classify_output("timeout\n", rules), Verdict::Timeout);
  EXPECT_EQ(classify_output("(error \"line 3: bad\")\nunsat\n", rules), Verdict::SolverError);
  EXPECT_EQ(classify_output("", rules), Verdict::SolverError);
  EXPECT_EQ(classify_output("segmentation fault\n", rules), Verdict::SolverError);
  // exact rules do not match substrings
  EXPECT_EQ(classify_output("unsatisfiable-ish\n", rules), Verdict::SolverError);

  auto vampire = select_solvers("vampire-S+A").front().results;
  EXPECT_EQ(classify_output("% Refutation found. Thanks to Tanya!\n% SZS status Unsatisfiable for x\n", vampire),
            Verdict::Proved);
  EXPECT_EQ(classify_output("% Time limit reached!\n", vampire), Verdict::Timeout);
}

TEST(Solver, BuiltinsAndSelection) {
  EXPECT_EQ(select_solvers("z3").size(), 1u);
  auto v = select_solvers("vampire");
  ASSERT_EQ(v.size(), 4u);
  EXPECT_EQ(v[0].name, "vampire-S");
  EXPECT_EQ(v[3].name, "vampire-F+A");
  for (const auto& c : v) {
    EXPECT_EQ(c.args.front(), "--input_syntax");
    EXPECT_EQ(c.timeout_seconds, 60);
  }
  EXPECT_THROW(select_solvers("nonesuch"), ConfigError);
}

TEST(Solver, ConfigFile) {
  auto path = temp_dir() / "solvers.json";
  std::ofstream(path) << R"({"solvers": [
    {"name": "z3", "executable": "/opt/z3", "args": ["{file}"], "timeout": 7},
    {"name": "mine", "executable": "mine", "results": [{"text": "QED", "verdict": "proved", "exact": false}]}
  ]})";
  auto z3 = select_solvers("z3", path);
  ASSERT_EQ(z3.size(), 1u);
  EXPECT_EQ(z3[0].executable, "/opt/z3");
  EXPECT_EQ(z3[0].timeout_seconds, 7);
  auto mine = select_solvers("mine", path);
  ASSERT_EQ(mine[0].results.size(), 1u);
  EXPECT_EQ(classify_output("... QED.", mine[0].results), Verdict::Proved);

  std::ofstream(path) << R"({"solvers": [{"name": "x", "timeout": 0}]})";
  EXPECT_THROW(load_solver_configs(path), ConfigError);
  std::ofstream(path) << R"({"solvers": [{"name": "x", "results": [{"text": "y", "verdict": "great"}]}]})";
  EXPECT_THROW(load_solver_configs(path), ConfigError);
  std::ofstream(path) << "{";
  EXPECT_THROW(load_solver_configs(path), ConfigError);
}

TEST(Solver, MissingExecutableIsConfigError) {
  SolverConfig c = fake("/nonexistent/solver");
  EXPECT_THROW(run_solver("x.smt2", c), ConfigError);
  c.executable = "definitely-not-on-path-solver";
  EXPECT_THROW(run_solver("x.smt2", c), ConfigError);
  EXPECT_FALSE(find_executable("definitely-not-on-path-solver"));
  EXPECT_TRUE(find_executable("sh"));
}

TEST(Solver, RunsProcessAndSubstitutesArguments) {
  auto exe = script("echo-args", "echo \"$1 $2 $3\" >&2\necho unsat");
  auto out = run_solver("task.smt2", fake(exe, 3));
  EXPECT_EQ(out.verdict, Verdict::Proved);
  EXPECT_NE(out.excerpt.find("task.smt2 3 3000"), std::string::npos);

  EXPECT_EQ(run_solver("t", fake(script("says-sat", "echo sat"))).verdict, Verdict::NotProved);
  EXPECT_EQ(run_solver("t", fake(script("garbled", "echo garbage; exit 3"))).verdict, Verdict::SolverError);
  EXPECT_EQ(run_solver("t", fake(script("crash", "kill -SEGV $$"))).verdict, Verdict::SolverError);
}

TEST(Solver, TimeoutKillsTheProcessGroup) {
  auto exe = script("sleeper", "sleep 100 &\nsleep 100");
  auto start = std::chrono::steady_clock::now();
  auto out = run_solver("t", fake(exe, 1));
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(out.verdict, Verdict::Timeout);
  EXPECT_LT(elapsed, 1 + 2.0);
}

TEST(Solver, JobsKeepOrder) {
  auto slow = script("slow-unsat", "sleep 0.3; echo unsat");
  auto fast = script("fast-sat", "echo sat");
  std::vector<SolverJob> jobs;
  for (int i = 0; i < 6; ++i) jobs.push_back({"t", fake(i % 2 ? fast : slow)});
  jobs.push_back({"t", fake("/nonexistent/solver")});
  auto out = run_solver_jobs(jobs, 3);
  ASSERT_EQ(out.size(), jobs.size());
  for (int i = 0; i < 6; ++i) EXPECT_EQ(out[i].verdict, i % 2 ? Verdict::NotProved : Verdict::Proved) << i;
  EXPECT_EQ(out.back().verdict, Verdict::SolverError);
}

TEST(Solver, Z3ProvesTrivialGoal) {
  if (!find_executable("z3")) GTEST_SKIP() << "z3 not on PATH";
  auto path = temp_dir() / "trivial.smt2";
  std::ofstream(path) << "(set-logic ALL)\n(declare-datatypes ((Nat 0)) (((zero) (s (p Nat)))))\n"
                         "(assert (not (= zero zero)))\n(check-sat)\n";
  EXPECT_EQ(run_solver(path, select_solvers("z3").front()).verdict, Verdict::Proved);
  std::ofstream(path) << "(set-logic ALL)\n(declare-datatypes ((Nat 0)) (((zero) (s (p Nat)))))\n"
                         "(assert (not (= zero (s zero))))\n(check-sat)\n";
  auto v = run_solver(path, select_solvers("z3").front()).verdict;
  EXPECT_TRUE(v == Verdict::NotProved || v == Verdict::Unknown) << to_string(v);
}
