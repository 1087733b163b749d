#include "tracelogic/solver.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "tracelogic/error.hpp"

namespace tracelogic {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Proved: return "proved";
    case Verdict::NotProved: return "not-proved";
    case Verdict::Unknown: return "unknown";
    case Verdict::Timeout: return "timeout";
    case Verdict::SolverError: return "error";
  }
  return "?";
}

std::optional<Verdict> parse_verdict(const std::string& s) {
  for (Verdict v : {Verdict::Proved, Verdict::NotProved, Verdict::Unknown, Verdict::Timeout,
                    Verdict::SolverError}) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

namespace {

std::vector<ResultRule> smt_rules() {
  return {{"unsat", Verdict::Proved},
          {"sat", Verdict::NotProved},
          {"unknown", Verdict::Unknown},
          {"timeout", Verdict::Timeout}};
}

SolverConfig vampire(const std::string& setting, const char* tha, const char* av) {
  SolverConfig c;
  c.name = "vampire-" + setting;
  c.executable = "vampire";
  c.args = {"--input_syntax", "smtlib2", "-t", "{timeout}", "-tha", tha, "-av", av, "{file}"};
  c.results = {{"SZS status Unsatisfiable", Verdict::Proved, false},
               {"SZS status Theorem", Verdict::Proved, false},
               {"Refutation found", Verdict::Proved, false},
               {"SZS status Satisfiable", Verdict::NotProved, false},
               {"SZS status CounterSatisfiable", Verdict::NotProved, false},
               {"Time limit reached", Verdict::Timeout, false},
               {"SZS status Timeout", Verdict::Timeout, false},
               {"Refutation not found", Verdict::Unknown, false},
               {"SZS status GaveUp", Verdict::Unknown, false}};
  for (auto r : smt_rules()) c.results.push_back(r);
  return c;
}

Verdict verdict_from_json(const nlohmann::json& j) {
  auto v = parse_verdict(j.get<std::string>());
  if (!v) throw ConfigError("unknown verdict '" + j.get<std::string>() + "'");
  return *v;
}

}  // namespace

std::vector<SolverConfig> builtin_solvers() {
  std::vector<SolverConfig> out;
  out.push_back({"z3", "z3", {"-smt2", "-T:{timeout}", "{file}"}, 60, smt_rules()});
  out.push_back({"cvc4", "cvc4", {"--lang", "smt2", "--tlimit={timeout_ms}", "{file}"}, 60, smt_rules()});
  out.push_back({"cvc5", "cvc5", {"--lang", "smt2", "--tlimit={timeout_ms}", "{file}"}, 60, smt_rules()});
  out.push_back(vampire("S", "some", "off"));
  out.push_back(vampire("S+A", "some", "on"));
  out.push_back(vampire("F", "on", "off"));
  out.push_back(vampire("F+A", "on", "on"));
  return out;
}

std::vector<SolverConfig> load_solver_configs(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read solver config " + path.string());
  std::vector<SolverConfig> out;
  try {
    auto j = nlohmann::json::parse(f);
    for (const auto& s : j.at("solvers")) {
      SolverConfig c;
      c.name = s.at("name").get<std::string>();
      c.executable = s.value("executable", c.name);
      c.args = s.value("args", std::vector<std::string>{"{file}"});
      c.timeout_seconds = s.value("timeout", 60);
      if (s.contains("results")) {
        for (const auto& r : s.at("results")) {
          c.results.push_back({r.at("text").get<std::string>(), verdict_from_json(r.at("verdict")),
                               r.value("exact", true)});
        }
      } else {
        c.results = smt_rules();
      }
      if (c.timeout_seconds <= 0) throw ConfigError("solver '" + c.name + "': timeout must be positive");
      out.push_back(std::move(c));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return out;
}

std::vector<SolverConfig> select_solvers(const std::string& name,
                                         const std::optional<std::filesystem::path>& config_file) {
  std::vector<SolverConfig> all = builtin_solvers();
  if (config_file) {
    for (auto& c : load_solver_configs(*config_file)) {
      bool replaced = false;
      for (auto& b : all) {
        if (b.name == c.name) {
          b = c;
          replaced = true;
        }
      }
      if (!replaced) all.push_back(std::move(c));
    }
  }
  std::vector<SolverConfig> out;
  for (const auto& c : all) {
    if (c.name == name) return {c};
    if (c.name.starts_with(name + "-")) out.push_back(c);
  }
  if (out.empty()) throw ConfigError("unknown solver '" + name + "'");
  return out;
}

std::optional<std::filesystem::path> find_executable(const std::string& name) {
  if (name.empty()) return std::nullopt;
  if (name.find('/') != std::string::npos) {
    if (::access(name.c_str(), X_OK) == 0) return std::filesystem::path(name);
    return std::nullopt;
  }
  const char* path = std::getenv("PATH");
  if (!path) return std::nullopt;
  std::stringstream ss(path);
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    if (dir.empty()) dir = ".";
    std::filesystem::path candidate = std::filesystem::path(dir) / name;
    std::error_code ec;
    if (std::filesystem::is_regular_file(candidate, ec) && ::access(candidate.c_str(), X_OK) == 0) {
      return candidate;
    }
  }
  return std::nullopt;
}

Verdict classify_output(const std::string& output, const std::vector<ResultRule>& rules) {
  std::istringstream is(output);
  std::string line;
  while (std::getline(is, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    std::string trimmed = line.substr(b, e - b + 1);
    if (trimmed.starts_with("(error")) return Verdict::SolverError;
    for (const auto& r : rules) {
      if (r.exact ? trimmed == r.text : trimmed.find(r.text) != std::string::npos) return r.verdict;
    }
  }
  return Verdict::SolverError;
}

namespace {

std::string substitute(std::string arg, const std::string& key, const std::string& value) {
  for (auto pos = arg.find(key); pos != std::string::npos; pos = arg.find(key, pos + value.size())) {
    arg.replace(pos, key.size(), value);
  }
  return arg;
}

std::string excerpt(const std::string& out) {
  std::istringstream is(out);
  std::string line, acc;
  for (int i = 0; i < 5 && std::getline(is, line); ++i) {
    if (!acc.empty()) acc += '\n';
    acc += line;
  }
  return acc;
}

}  // namespace

SolverOutcome run_solver(const std::filesystem::path& file, const SolverConfig& cfg) {
  if (cfg.timeout_seconds <= 0) throw ConfigError("timeout must be positive");
  auto exe = find_executable(cfg.executable);
  if (!exe) throw ConfigError("solver executable '" + cfg.executable + "' not found");

  std::vector<std::string> args{exe->string()};
  for (const auto& a : cfg.args) {
    std::string s = substitute(a, "{file}", file.string());
    s = substitute(s, "{timeout_ms}", std::to_string(cfg.timeout_seconds * 1000));
    s = substitute(s, "{timeout}", std::to_string(cfg.timeout_seconds));
    args.push_back(std::move(s));
  }
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  argv.push_back(nullptr);

  int fds[2];
  if (::pipe2(fds, O_CLOEXEC) != 0) throw Error(std::string("pipe: ") + std::strerror(errno));

  auto start = std::chrono::steady_clock::now();
  pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw Error(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(fds[1], STDOUT_FILENO);
    ::dup2(fds[1], STDERR_FILENO);
    int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
    ::execv(argv[0], argv.data());
    _exit(127);
  }
  ::setpgid(pid, pid);
  ::close(fds[1]);

  auto deadline = start + std::chrono::seconds(cfg.timeout_seconds + 1);
  std::string output;
  bool killed = false;
  char buf[4096];
  while (true) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      ::kill(-pid, SIGKILL);
      killed = true;
      break;
    }
    pollfd p{fds[0], POLLIN, 0};
    int r = ::poll(&p, 1, static_cast<int>(std::min<long long>(left.count(), 200)));
    if (r < 0 && errno != EINTR) break;
    if (r <= 0) continue;
    ssize_t n = ::read(fds[0], buf, sizeof buf);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    if (output.size() < (1u << 20)) output.append(buf, static_cast<std::size_t>(n));
  }
  ::close(fds[0]);
  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  // reap anything the solver left behind in its group
  if (!killed) ::kill(-pid, SIGKILL);

  SolverOutcome out;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.excerpt = excerpt(output);
  if (killed) {
    out.verdict = Verdict::Timeout;
  } else if (WIFEXITED(status) && WEXITSTATUS(status) == 127 && output.empty()) {
    out.verdict = Verdict::SolverError;
    out.excerpt = "exec failed";
  } else {
    out.verdict = classify_output(output, cfg.results);
  }
  return out;
}

std::vector<SolverOutcome> run_solver_jobs(const std::vector<SolverJob>& jobs, unsigned workers) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));

  std::vector<SolverOutcome> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = run_solver(jobs[i].file, jobs[i].config);
      } catch (const Error& e) {
        results[i].verdict = Verdict::SolverError;
        results[i].excerpt = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace tracelogic
