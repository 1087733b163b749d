// tracelogic: encode W programs into trace logic, check the encoding against
// concrete runs, and drive external provers.
//
// Exit codes: 0 success, 1 verification or oracle failure, 2 usage/config error.

#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "tracelogic/bench.hpp"
#include "tracelogic/error.hpp"
#include "tracelogic/pipeline.hpp"
#include "tracelogic/solver.hpp"

namespace fs = std::filesystem;
using namespace tracelogic;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

struct Options {
  std::vector<std::string> paths;
  int traces = 0;
  std::string lemmas;
  bool no_lemmas = false;
  std::string mutation;
  std::string solver = "z3";
  int timeout = 60;
  std::string out = "tracelogic-out";
  std::string config;
  std::string inputs;
  int random = 0;
  std::uint64_t seed = 1;
  unsigned jobs = 0;
  std::string jsonl;
  bool verbose = false;
};

EncodeOptions encode_options(const Options& o) {
  EncodeOptions e;
  if (o.traces) e.traces = o.traces;
  e.lemmas = !o.no_lemmas;
  if (!o.lemmas.empty()) e.lemma_config = parse_lemma_list(o.lemmas);
  if (!o.mutation.empty()) {
    bool found = false;
    for (Mutation m : {Mutation::None, Mutation::DropAssignFrame, Mutation::FlipArrayGuard,
                       Mutation::LoopSuccIdentity}) {
      if (o.mutation == to_string(m)) {
        e.mutation = m;
        found = true;
      }
    }
    if (!found) throw ConfigError("unknown mutation '" + o.mutation + "'");
  }
  return e;
}

std::vector<SolverConfig> solvers(const Options& o) {
  std::optional<fs::path> cfg;
  if (!o.config.empty()) cfg = o.config;
  auto out = select_solvers(o.solver, cfg);
  for (auto& s : out) s.timeout_seconds = o.timeout;
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw ConfigError("cannot write " + path);
}

int cmd_encode(const Options& o) {
  auto opt = encode_options(o);
  for (const auto& p : o.paths) {
    auto enc = encode_file(p, opt);
    auto file = write_smtlib(enc, o.out);
    std::cout << file.string() << ": " << enc.semantics_count << " semantics axioms, " << enc.lemma_count
              << " lemmas\n";
  }
  return kOk;
}

std::vector<NamedInput> random_inputs(const EncodedSpec& enc, const Options& o) {
  std::mt19937_64 rng(o.seed);
  std::vector<NamedInput> out;
  for (int i = 0; i < o.random; ++i) {
    Input in = random_input(enc.model->program(), rng);
    out.push_back({"random-" + std::to_string(i), in});
    // a near neighbour keeps pairs with mostly equal inputs in the mix
    if (enc.model->relational()) out.push_back({"random-" + std::to_string(i) + "'", perturb_input(in, rng)});
  }
  return out;
}

int cmd_check(const Options& o) {
  auto opt = encode_options(o);
  std::ofstream jsonl;
  if (!o.jsonl.empty()) {
    jsonl.open(o.jsonl, std::ios::binary);
    if (!jsonl) throw ConfigError("cannot write " + o.jsonl);
  }
  bool ok = true;
  for (const auto& p : o.paths) {
    auto enc = encode_file(p, opt);
    std::vector<NamedInput> inputs;
    if (o.random > 0) {
      inputs = random_inputs(enc, o);
    } else {
      inputs = load_inputs(o.inputs.empty() ? inputs_dir_for(p) : fs::path(o.inputs));
    }
    auto result = check_inputs(enc, inputs);
    for (const auto& run : result.runs) {
      if (!run.report) {
        std::cout << p << " [" << run.inputs << "] error: " << run.error << '\n';
        if (jsonl) jsonl << nlohmann::json{{"spec", p}, {"inputs", run.inputs}, {"error", run.error}}.dump() << '\n';
        continue;
      }
      for (const auto& a : run.report->axioms) {
        if (o.verbose || a.verdict == Truth::False) {
          std::cout << p << " [" << run.inputs << "] " << a.label << ' ' << to_string(a.verdict) << '\n';
        }
        if (jsonl) {
          jsonl << nlohmann::json{{"spec", p}, {"inputs", run.inputs}, {"label", a.label},
                                  {"verdict", to_string(a.verdict)}}.dump() << '\n';
        }
      }
      if (o.verbose || run.report->conjecture == Truth::False) {
        std::cout << p << " [" << run.inputs << "] conjecture " << to_string(run.report->conjecture)
                  << (run.report->conjecture == Truth::False ? " (counterexample)" : "") << '\n';
      }
      if (jsonl) {
        jsonl << nlohmann::json{{"spec", p}, {"inputs", run.inputs}, {"label", "conjecture"},
                                {"verdict", to_string(run.report->conjecture)}}.dump() << '\n';
      }
    }
    std::cout << p << ": " << (result.pass() ? "PASS" : "FAIL") << " (" << result.runs.size() << " runs, "
              << result.failed_runs() << " failed)\n";
    ok &= result.pass();
  }
  return ok ? kOk : kFailure;
}

int cmd_prove(const Options& o) {
  auto opt = encode_options(o);
  auto configs = solvers(o);
  for (const auto& s : configs) {
    if (!find_executable(s.executable)) throw ConfigError("solver executable '" + s.executable + "' not found");
  }
  std::vector<SolverJob> jobs;
  for (const auto& p : o.paths) {
    auto file = write_smtlib(encode_file(p, opt), o.out);
    for (const auto& s : configs) jobs.push_back({file, s});
  }
  auto outcomes = run_solver_jobs(jobs, o.jobs);
  bool ok = true;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    std::cout << jobs[i].file.string() << ' ' << jobs[i].config.name << ' ' << to_string(outcomes[i].verdict)
              << ' ' << outcomes[i].seconds << "s\n";
    if (outcomes[i].verdict == Verdict::SolverError && !outcomes[i].excerpt.empty()) {
      std::cout << "  " << outcomes[i].excerpt << '\n';
    }
    ok &= outcomes[i].verdict == Verdict::Proved;
  }
  return ok ? kOk : kFailure;
}

int cmd_bench(const Options& o) {
  std::vector<fs::path> paths(o.paths.begin(), o.paths.end());
  auto result = run_bench(collect_specs(paths), solvers(o), encode_options(o), o.out, o.jobs);
  std::cout << result.render();
  if (!o.jsonl.empty()) write_file(o.jsonl, result.jsonl());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trace logic encoder, checker and prover driver"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("paths", o.paths, ".spec files (bench: files or directories)")->required();
    sub->add_option("--traces", o.traces, "number of traces (1 or 2), overrides the spec")
        ->check(CLI::IsMember({1, 2}));
    sub->add_option("--lemmas", o.lemmas, "comma-separated lemma schema ids to emit");
    sub->add_flag("--no-lemmas", o.no_lemmas, "emit no lemmas");
    sub->add_option("--out", o.out, "output directory for .smt2 files");
  };
  auto solver_opts = [&](CLI::App* sub) {
    sub->add_option("--solver", o.solver, "solver name or family (z3, cvc4, cvc5, vampire, vampire-S+A, ...)");
    sub->add_option("--timeout", o.timeout, "seconds per solver run")->check(CLI::PositiveNumber);
    sub->add_option("--config", o.config, "JSON solver configuration file")->check(CLI::ExistingFile);
    sub->add_option("--jobs", o.jobs, "parallel solver processes (default: CPU count)");
  };

  auto* encode = app.add_subcommand("encode", "write SMT-LIB tasks");
  common(encode);

  auto* check = app.add_subcommand("check", "evaluate the encoding on concrete runs");
  common(check);
  check->add_option("--inputs", o.inputs, "directory of .in files (default: <spec>.inputs)");
  check->add_option("--random", o.random, "use N random inputs instead of fixtures")->check(CLI::PositiveNumber);
  check->add_option("--seed", o.seed, "seed for --random");
  check->add_option("--mutation", o.mutation, "encode with a deliberate defect")
      ->check(CLI::IsMember({"drop-assign-frame", "flip-array-guard", "loop-succ-identity"}));
  check->add_option("--jsonl", o.jsonl, "write one record per axiom and run");
  check->add_flag("-v,--verbose", o.verbose, "print every verdict");

  auto* prove = app.add_subcommand("prove", "encode and run a solver");
  common(prove);
  solver_opts(prove);

  auto* bench = app.add_subcommand("bench", "run a corpus against solver settings");
  common(bench);
  solver_opts(bench);
  bench->add_option("--jsonl", o.jsonl, "write one record per cell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*encode) return cmd_encode(o);
    if (*check) return cmd_check(o);
    if (*prove) return cmd_prove(o);
    return cmd_bench(o);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
