// Scenario driver behind the swmix command line.
#pragma once

#include "swmix/io.hpp"

#include <filesystem>
#include <string>

namespace swmix::app {

enum Exit : int { ok = 0, invalid = 1, budget = 2, check_failed = 3 };

struct Outcome {
    int code = ok;
    Json report;
};

// SWMIX_THREADS if set, otherwise the hardware concurrency.
unsigned thread_cap();

// Runs one scenario document. Artifacts go to `out`; report.json is always
// written when the directory can be created.
Outcome run_scenario(const Json& scenario, const std::filesystem::path& out);

// Reads the file, then runs it. A missing or malformed file gives exit 1.
Outcome run_scenario_file(const std::filesystem::path& file, const std::optional<std::filesystem::path>& out);

Outcome run_tent_demo(const Json& params, std::uint64_t seed, const std::filesystem::path& out);

Outcome verify_file(const std::filesystem::path& file);

int main(int argc, char** argv);

} // namespace swmix::app
