#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dice/limits.hpp"

namespace dice::cli {

enum class Mode { Roll, Repl, Verify, Bench };
enum class Format { Text, Json };

struct CliConfig {
    Mode mode = Mode::Roll;
    std::optional<std::string> expression;
    std::optional<std::uint64_t> seed;
    Format format = Format::Text;
    std::optional<std::string> macros_file;
    /// Replay these face indices instead of drawing randomly.
    std::optional<std::vector<std::uint64_t>> script;
    bool lenient_sides = false;
    bool builtin_macros = true;
    bool interactive = false;
    std::uint64_t samples = 100'000;
    double significance = 1e-3;
    int trials = 20;
    Limits limits;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // verify rejected the distribution
inline constexpr int kExitUserError = 2;
inline constexpr int kExitLimit = 3;

/// Parses argv. On --help or a usage error, prints to `out`/`err` and
/// returns the exit code instead of a config.
struct ParsedArgs {
    std::optional<CliConfig> config;
    int exit_code = kExitOk;
};
ParsedArgs parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int run(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err);

struct BenchRow {
    std::string expression;
    double mean_ns = 0;
    double p99_ns = 0;
};

/// Times parse+evaluate of each rung of the NdN ladder (1d1 ... 10000d10000).
std::vector<BenchRow> run_ndn_ladder(int trials, std::uint64_t seed);

}  // namespace dice::cli
