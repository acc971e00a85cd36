#include "dice/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "dice/evaluator.hpp"
#include "dice/oracle.hpp"
#include "dice/result_json.hpp"

namespace dice::cli {

namespace {

std::vector<std::uint64_t> parse_script(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const auto value = std::stoull(item, &used);
        if (used != item.size()) throw CLI::ValidationError("--script", "not an index list: " + text);
        out.push_back(value);
    }
    return out;
}

// Expressions may start with '-' ("-1d6", "-(1;2)"); route those to the
// positional through its long form so they are not read as unknown options.
std::vector<std::string> protect_negative_expressions(int argc, const char* const* argv) {
    static const std::vector<std::string> takes_value = {"--seed",  "--format",  "--macros",      "--script",
                                                         "--samples", "--trials", "--significance"};
    std::vector<std::string> args(argv, argv + argc);
    for (std::size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.size() < 2 || a[0] != '-' || a[1] == '-' || a == "-h") continue;
        if (std::find(takes_value.begin(), takes_value.end(), args[i - 1]) != takes_value.end()) continue;
        args[i] = "--expression=" + a;
    }
    return args;
}

}  // namespace

ParsedArgs parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CliConfig config;
    config.limits = limits_from_environment();

    CLI::App app{"Dice notation roller"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    std::uint64_t seed = 0;
    std::string script;
    auto* seed_opt = app.add_option("--seed", seed, "64-bit seed for reproducible rolls");
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
    auto* macros_opt = app.add_option("--macros", config.macros_file, "File of '#NAME = expr' lines to preload");
    app.add_flag("--lenient", config.lenient_sides, "Treat a missing side count ('2d') as d6");
    bool no_builtins = false;
    app.add_flag("--no-builtins", no_builtins, "Do not preload the bundled macros");
    macros_opt->check(CLI::ExistingFile);

    auto* roll = app.add_subcommand("roll", "Roll one expression");
    roll->add_option("expression,--expression", config.expression, "Dice expression")->required();
    auto* script_opt = roll->add_option("--script", script, "Comma-separated face indices to replay");

    auto* repl = app.add_subcommand("repl", "Read expressions from stdin, one per line");

    auto* verify = app.add_subcommand("verify", "Check sampled rolls against exhaustive enumeration");
    verify->add_option("expression,--expression", config.expression, "Dice expression")->required();
    verify->add_option("--samples", config.samples, "Number of sampled rolls")->check(CLI::PositiveNumber);
    verify->add_option("--significance", config.significance, "Chi-square significance level");

    auto* bench = app.add_subcommand("bench", "Time the NdN ladder and print CSV");
    bench->add_option("--trials", config.trials, "Trials per rung")->check(CLI::PositiveNumber);

    try {
        std::vector<std::string> args = protect_negative_expressions(argc, argv);
        std::vector<const char*> pointers;
        for (const auto& a : args) pointers.push_back(a.c_str());
        app.parse(static_cast<int>(pointers.size()), pointers.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return {std::nullopt, code == 0 ? kExitOk : kExitUserError};
    }

    if (roll->parsed()) config.mode = Mode::Roll;
    if (repl->parsed()) config.mode = Mode::Repl;
    if (verify->parsed()) config.mode = Mode::Verify;
    if (bench->parsed()) config.mode = Mode::Bench;
    if (seed_opt->count() > 0) config.seed = seed;
    config.format = format == "json" ? Format::Json : Format::Text;
    config.builtin_macros = !no_builtins;
    if (script_opt->count() > 0) {
        try {
            config.script = parse_script(script);
        } catch (const std::exception&) {
            err << "error: --script expects comma-separated non-negative integers\n";
            return {std::nullopt, kExitUserError};
        }
    }
    return {config, kExitOk};
}

namespace {

std::uint64_t pick_seed(const CliConfig& config) {
    if (config.seed) return *config.seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::unique_ptr<RandomSource> make_source(const CliConfig& config) {
    if (config.script) return std::make_unique<ScriptedSource>(*config.script);
    return seeded_source(pick_seed(config));
}

void print_diagnostic(std::ostream& err, const DiceError& e, std::string_view source) {
    err << "error[" << error_code_name(e.code()) << "]: " << e.what() << '\n';
    const Span span = e.span();
    if (source.empty() || span.begin > source.size() || source.find('\n') != std::string_view::npos) return;
    err << "  " << source << '\n';
    const std::size_t width = std::max<std::size_t>(1, std::min(span.end, source.size()) - std::min(span.begin, span.end));
    err << "  " << std::string(span.begin, ' ') << std::string(width, '^') << '\n';
}

int exit_code_for(const DiceError& e) {
    return is_limit_error(e.code()) ? kExitLimit : kExitUserError;
}

std::optional<MacroTable> initial_macros(const CliConfig& config, std::ostream& err, int& status) {
    MacroTable table = config.builtin_macros ? builtin_macros() : MacroTable{};
    if (!config.macros_file) return table;
    std::ifstream file(*config.macros_file);
    if (!file) {
        err << "error: cannot read macro file " << *config.macros_file << '\n';
        status = kExitUserError;
        return std::nullopt;
    }
    std::stringstream text;
    text << file.rdbuf();
    try {
        load_macros(table, text.str(), ParseOptions{config.lenient_sides});
    } catch (const DiceError& e) {
        err << *config.macros_file << ": ";
        print_diagnostic(err, e, {});
        status = exit_code_for(e);
        return std::nullopt;
    }
    return table;
}

// Evaluates one line in the session and prints it; returns the exit status.
int roll_line(Evaluator& session, const std::string& source, RandomSource& rng, const CliConfig& config,
              std::ostream& out, std::ostream& err) {
    const ParseOptions options{config.lenient_sides};
    try {
        const RollResult result = session.roll(source, rng, options);
        for (const auto& w : result.warnings) err << "warning: " << w << '\n';
        if (config.format == Format::Json) {
            out << to_text(result_to_json(result)) << '\n';
        } else {
            out << values_to_string(result.values) << '\n';
        }
        return kExitOk;
    } catch (const DiceError& e) {
        if (config.format == Format::Json) out << to_text(error_to_json(e)) << '\n';
        print_diagnostic(err, e, source);
        return exit_code_for(e);
    }
}

int run_roll(const CliConfig& config, std::ostream& out, std::ostream& err) {
    int status = kExitOk;
    auto macros = initial_macros(config, err, status);
    if (!macros) return status;
    Evaluator session(config.limits, std::move(*macros));
    auto rng = make_source(config);
    return roll_line(session, config.expression.value_or(""), *rng, config, out, err);
}

int run_repl(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
    int status = kExitOk;
    auto macros = initial_macros(config, err, status);
    if (!macros) return status;
    Evaluator session(config.limits, std::move(*macros));
    auto rng = make_source(config);
    std::string line;
    while (true) {
        if (config.interactive) out << "dice> " << std::flush;
        if (!std::getline(in, line)) break;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        if (line == "exit" || line == "quit") break;
        roll_line(session, line, *rng, config, out, err);
    }
    return kExitOk;
}

int run_verify(const CliConfig& config, std::ostream& out, std::ostream& err) {
    int status = kExitOk;
    auto macros = initial_macros(config, err, status);
    if (!macros) return status;
    const std::string source = config.expression.value_or("");
    try {
        const RollExpression expr = parse(source, ParseOptions{config.lenient_sides});
        const ComparisonReport report =
            compare(expr, config.samples, pick_seed(config), config.limits, *macros, config.significance);
        if (config.format == Format::Json) {
            nlohmann::json doc = {
                {"expression", source},
                {"samples", report.samples},
                {"paths", report.paths},
                {"support", report.support_size},
                {"total_probability", static_cast<double>(report.total_probability)},
                {"chi_square", report.chi.statistic},
                {"degrees_of_freedom", report.chi.degrees_of_freedom},
                {"p_value", report.chi.p_value},
                {"significance", report.significance},
                {"unexpected", report.unexpected},
                {"passed", report.passed},
            };
            out << to_text(doc) << '\n';
        } else {
            out << "expression: " << source << '\n'
                << "paths: " << report.paths << '\n'
                << "support: " << report.support_size << '\n'
                << "total probability: " << std::setprecision(15) << static_cast<double>(report.total_probability)
                << '\n'
                << "samples: " << report.samples << '\n'
                << "chi-square: " << std::setprecision(6) << report.chi.statistic << " (df "
                << report.chi.degrees_of_freedom << ")\n"
                << "p-value: " << report.chi.p_value << '\n';
            for (const auto& key : report.unexpected) out << "unexpected outcome: " << key << '\n';
            out << (report.passed ? "PASS" : "FAIL") << '\n';
        }
        return report.passed ? kExitOk : kExitFailed;
    } catch (const DiceError& e) {
        print_diagnostic(err, e, source);
        return exit_code_for(e);
    }
}

}  // namespace

std::vector<BenchRow> run_ndn_ladder(int trials, std::uint64_t seed) {
    using clock = std::chrono::steady_clock;
    const std::vector<std::string> ladder = {"1d1", "10d10", "100d100", "1000d1000", "10000d10000"};
    std::vector<BenchRow> rows;
    for (const auto& expression : ladder) {
        std::vector<double> times;
        times.reserve(static_cast<std::size_t>(trials));
        for (int t = 0; t < trials; ++t) {
            SeededSource rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
            MacroTable macros;
            const auto start = clock::now();
            const RollResult result = evaluate(parse(expression), macros, rng);
            const auto stop = clock::now();
            if (result.values.empty()) throw std::logic_error("benchmark roll produced no value");
            times.push_back(std::chrono::duration<double, std::nano>(stop - start).count());
        }
        std::sort(times.begin(), times.end());
        double sum = 0;
        for (double t : times) sum += t;
        const auto rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(times.size())));
        rows.push_back({expression, sum / static_cast<double>(times.size()), times[std::max<std::size_t>(rank, 1) - 1]});
    }
    return rows;
}

namespace {

int run_bench(const CliConfig& config, std::ostream& out) {
    const auto rows = run_ndn_ladder(config.trials, config.seed.value_or(0));
    out << "expression,mean_ns,p99_ns\n";
    out << std::fixed << std::setprecision(0);
    for (const auto& row : rows) out << row.expression << ',' << row.mean_ns << ',' << row.p99_ns << '\n';
    return kExitOk;
}

}  // namespace

int run(const CliConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
    switch (config.mode) {
        case Mode::Roll: return run_roll(config, out, err);
        case Mode::Repl: return run_repl(config, in, out, err);
        case Mode::Verify: return run_verify(config, out, err);
        case Mode::Bench: return run_bench(config, out);
    }
    return kExitUserError;
}

}  // namespace dice::cli
