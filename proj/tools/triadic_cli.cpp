#include "triadic/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <system_error>

namespace {

// Write to a sibling temporary file, then rename over the target.
bool write_atomically(const std::filesystem::path& target, const std::string& content) {
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) return false;
        out << content;
        if (!out.flush()) return false;
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) std::filesystem::remove(tmp, ec);
    return !ec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Bayesian three-way simultaneous hypothesis testing", "triadic"};

    std::string scenario_path;
    std::string task_name;
    std::uint64_t seed = 0;
    unsigned max_theta = 0;
    std::string out_path;
    std::string csv_path;
    bool pretty = false;
    std::string variant = "theta";

    app.add_option("--scenario", scenario_path, "Scenario JSON file");
    app.add_option("--task", task_name, "Override the scenario task")
        ->check(CLI::IsMember({"test", "coherence", "certify-gfbst", "witness", "counterexample", "verify-theorems"}));
    auto* seed_opt = app.add_option("--seed", seed, "Random seed");
    auto* max_opt = app.add_option("--max-theta", max_theta, "Largest accepted parameter space")->check(CLI::Range(1U, 63U));
    app.add_option("--out", out_path, "Write the report here instead of stdout");
    app.add_option("--csv", csv_path, "Also write the verdict table as CSV");
    app.add_flag("--pretty", pretty, "Human-readable report");
    app.add_option("--eq3-variant", variant, "Uniform-term denominator of the witness posterior")
        ->check(CLI::IsMember({"theta", "x"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    triadic::RunOptions options;
    if (!task_name.empty()) options.task = triadic::parse_task(task_name);
    if (*seed_opt) options.seed = seed;
    if (*max_opt) options.max_theta = max_theta;
    options.eq3 = variant == "x" ? triadic::Eq3Variant::X : triadic::Eq3Variant::Theta;

    triadic::RunResult result;
    if (!scenario_path.empty()) {
        result = triadic::run_scenario_file(scenario_path, options);
    } else if (options.task == triadic::Task::VerifyTheorems) {
        result = triadic::run_scenario(triadic::io::Json::object(), options);
    } else {
        std::cerr << "triadic: --scenario is required unless --task verify-theorems\n";
        return 2;
    }

    const std::string text = pretty ? triadic::render_pretty(result.report) : result.report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else if (!write_atomically(out_path, text)) {
        std::cerr << "triadic: cannot write " << out_path << '\n';
        return 2;
    }
    if (!csv_path.empty()) {
        if (!result.csv) {
            std::cerr << "triadic: this task produces no verdict table\n";
            return result.exit_code == 0 ? 2 : result.exit_code;
        }
        if (!write_atomically(csv_path, *result.csv)) {
            std::cerr << "triadic: cannot write " << csv_path << '\n';
            return 2;
        }
    }
    if (result.report.contains("error")) std::cerr << "triadic: " << result.report["error"]["message"].get<std::string>() << '\n';
    return result.exit_code;
}
