#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "tracelogic/interpreter.hpp"
#include "tracelogic/program_model.hpp"

namespace tracelogic::fixtures {

inline const std::filesystem::path kSourceDir = TRACELOGIC_SOURCE_DIR;
inline const std::filesystem::path kCorpus = kSourceDir / "corpus";

std::string read_file(const std::filesystem::path& p);

/// Motivating example with its original line layout (loop at line 9).
inline constexpr const char* kArraySum = R"(func main()
{
    const Int[] a;
    const Int alength;

    Int i = 0;
    Int hw = 0;

    while (i < alength)
    {
       hw = hw + a[i];
       i = i + 1;
    }
}
)";

/// Random terminating W program over mutable x, y, z, array m and constants
/// c, d, array b. Loops count a dedicated counter up to a small bound and
/// nest at most `max_depth` deep. Every statement is on its own line.
std::string random_program(std::mt19937_64& rng, int max_depth = 2);

/// Copy of `rec` with mutable scalar `var` incremented at visit `visit`.
TraceRecord perturb_record(const TraceRecord& rec, std::size_t visit, const std::string& var);

}  // namespace tracelogic::fixtures
