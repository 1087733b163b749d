#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "tracelogic/ast.hpp"

namespace tracelogic {

/// Initial values. Scalars not mentioned start at 0; arrays are total maps
/// with default 0, given values occupy indices 0..n-1.
struct Input {
  std::map<std::string, std::int64_t> scalars;
  std::map<std::string, std::vector<std::int64_t>> arrays;

  friend bool operator==(const Input&, const Input&) = default;
};

/// Parses `name = 3` and `name = [1, -2, 3]` lines; `#` starts a comment.
Input parse_input(std::string_view text);
Input read_input_file(const std::filesystem::path& path);
std::string format_input(const Input& in);

struct RandomInputOptions {
  int max_array_length = 6;
  std::int64_t min_value = -10;
  std::int64_t max_value = 10;
};

/// Random values for every constant and every mutable variable that is read
/// before being assigned. A scalar named `<array>length` gets that array's length.
Input random_input(const ast::Program& p, std::mt19937_64& rng, const RandomInputOptions& opt = {});

/// Copy of `in` with one randomly chosen input value changed.
Input perturb_input(const Input& in, std::mt19937_64& rng, const RandomInputOptions& opt = {});

struct State {
  std::map<std::string, std::int64_t> scalars;
  std::map<std::string, std::map<std::int64_t, std::int64_t>> arrays;

  std::int64_t scalar(const std::string& name) const;
  std::int64_t element(const std::string& name, std::int64_t index) const;

  friend bool operator==(const State&, const State&) = default;
};

/// A location visit: `l<line>(iters...)`, or main_end when line is 0.
struct GroundTimepoint {
  int line = 0;
  std::vector<std::uint64_t> iters;

  bool is_end() const { return line == 0; }
  std::string to_string() const;
  friend auto operator<=>(const GroundTimepoint&, const GroundTimepoint&) = default;
};

struct LoopInstance {
  int line = 0;
  std::vector<std::uint64_t> outer;  // iterations of the enclosing loops

  friend auto operator<=>(const LoopInstance&, const LoopInstance&) = default;
};

/// One execution: the state at every visited timepoint in visit order, the
/// exit iteration of every loop instance, and the final state at main_end.
struct TraceRecord {
  Input input;
  std::vector<std::pair<GroundTimepoint, State>> visits;
  std::map<GroundTimepoint, std::size_t> index;
  std::map<LoopInstance, std::uint64_t> last_iterations;
  std::uint64_t steps = 0;

  const State* at(const GroundTimepoint& tp) const;
  std::optional<std::uint64_t> last_iteration(const LoopInstance& loop) const;
  const State& final_state() const { return visits.back().second; }
};

inline constexpr std::uint64_t kDefaultFuel = 1'000'000;

/// Runs the small-step semantics to completion. Throws FuelExhausted after
/// `fuel` steps and Error on integer overflow.
TraceRecord run(const ast::Program& p, const Input& input, std::uint64_t fuel = kDefaultFuel);

/// Integer semantics shared with the oracle; throws Error on overflow.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace tracelogic
