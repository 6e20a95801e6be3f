#pragma once

// Scenario files: one task over one model/loss/test description, producing a JSON report.

#include "triadic/constructions.hpp"
#include "triadic/io.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace triadic {

enum class Task { Test, Coherence, CertifyGfbst, Witness, Counterexample, VerifyTheorems };

std::string_view to_string(Task t) noexcept;
std::optional<Task> parse_task(std::string_view s) noexcept;

/// Command-line overrides; each takes precedence over the scenario's own field.
struct RunOptions {
    std::optional<Task> task;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> max_theta;
    Eq3Variant eq3 = Eq3Variant::Theta;
    std::filesystem::path base_dir = ".";  // resolves {"file": ...} references
};

struct RunResult {
    int exit_code = 0;  // 0 success, 1 property finding, 2 input error
    io::Json report;
    std::optional<std::string> csv;  // verdict table, for tasks that produce a test
};

/// Never throws for bad input; errors become exit code 2 with an error report.
RunResult run_scenario(const io::Json& scenario, const RunOptions& options = {});

/// Reads and parses the file, then runs it with base_dir set to the file's directory.
RunResult run_scenario_file(const std::filesystem::path& path, RunOptions options = {});

/// Plain-text rendering of a report.
std::string render_pretty(const io::Json& report);

}  // namespace triadic
