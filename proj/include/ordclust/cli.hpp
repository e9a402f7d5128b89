#ifndef ORDCLUST_CLI_HPP
#define ORDCLUST_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "ordclust/eval.hpp"

namespace ordclust::cli {

enum class Command { fuzzify, cluster, benchmark };

// Fully resolved invocation. Every run's output embeds this (plus the
// resolved seed) so results are reproducible from the artifact alone.
struct RunConfig {
    Command command = Command::cluster;

    std::filesystem::path input;
    std::filesystem::path scales;  // optional scales file
    std::filesystem::path output;  // empty -> stdout
    std::string format = "json";   // json | csv

    std::string method = "lmfcm";  // cluster: fcm | lmfcm; benchmark: also "both"
    std::size_t clusters = 2;
    double beta = 2.0;
    double epsilon = 1e-4;
    std::size_t max_iters = 300;
    double p_floor = 1e-6;
    bool neighbor_rule = true;
    std::optional<std::uint64_t> seed;  // absent -> random, printed and embedded

    std::optional<OrdinalizationSpec> ordinalize;  // set by --ordinalize
    std::size_t trials = 50;
    std::size_t jobs = 1;
};

// Parses the value of --ordinalize, e.g. "m=5" or "m=5,strategy=equal-width".
OrdinalizationSpec parse_ordinalize_spec(const std::string& text);

// Executes one command, writing the artifact to cfg.output (or stdout) and
// log lines to `log`. Returns a process exit code: 0 success, 1 usage error,
// 2 data error, 3 engine error.
int run(const RunConfig& cfg, std::ostream& log);

// Full command-line entry point (argument parsing + run).
int main_entry(int argc, const char* const* argv);

}  // namespace ordclust::cli

#endif  // ORDCLUST_CLI_HPP
