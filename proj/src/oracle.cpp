#include "dice/oracle.hpp"

#include <algorithm>
#include <limits>
#include <atomic>
#include <numeric>

#include <boost/math/special_functions/gamma.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace dice {

long double OutcomeDistribution::total() const {
    long double sum = 0;
    for (const auto& [key, p] : probabilities) sum += p;
    return sum;
}

long double OutcomeDistribution::probability(const std::string& outcome) const {
    auto it = probabilities.find(outcome);
    return it == probabilities.end() ? 0.0L : it->second;
}

std::string outcome_key(const ValueVector& values) {
    return values_to_string(values);
}

namespace {

// Replays a fixed prefix, then always answers 0, recording what was asked.
class PathSource final : public RandomSource {
public:
    explicit PathSource(const std::vector<std::uint64_t>& prefix) : prefix_(prefix) {}

    std::uint64_t next_index(std::uint64_t n) override {
        const std::size_t at = choices_.size();
        const std::uint64_t choice = at < prefix_.size() ? prefix_[at] : 0;
        choices_.push_back(choice);
        radices_.push_back(n);
        return choice;
    }

    std::vector<std::uint64_t> choices_;
    std::vector<std::uint64_t> radices_;

private:
    const std::vector<std::uint64_t>& prefix_;
};

bool defines_macros(const RollExpression& expr) {
    return std::any_of(expr.statements.begin(), expr.statements.end(),
                       [](const Statement& s) { return std::holds_alternative<MacroDefinition>(s); });
}

struct Leaf {
    std::string key;
    long double mass;
    std::vector<std::uint64_t> choices;
    std::vector<std::uint64_t> radices;
};

Leaf run_path(const RollExpression& expr, const Limits& limits, MacroTable& table, const MacroTable& pristine,
              bool copy_macros, const std::vector<std::uint64_t>& prefix) {
    PathSource source(prefix);
    std::string key;
    try {
        if (copy_macros) table = pristine;
        key = outcome_key(evaluate(expr, table, source, limits).values);
    } catch (const DiceError& e) {
        key = "error:" + std::string(error_code_name(e.code()));
    }
    long double mass = 1.0L;
    for (auto r : source.radices_) mass /= static_cast<long double>(r);
    return {std::move(key), mass, std::move(source.choices_), std::move(source.radices_)};
}

[[noreturn]] void too_large(std::uint64_t max_paths) {
    throw DiceError(ErrorCode::StateSpaceTooLarge,
                    "more than " + std::to_string(max_paths) + " draw sequences to enumerate");
}

// Enumerates every path whose first `fixed` choices equal `prefix`.
void walk_subtree(const RollExpression& expr, const Limits& limits, const MacroTable& macros, bool copy_macros,
                  std::vector<std::uint64_t> prefix, std::atomic<std::uint64_t>& paths, std::uint64_t max_paths,
                  std::map<std::string, long double>& out) {
    const std::size_t fixed = prefix.size();
    MacroTable table = macros;
    while (true) {
        Leaf leaf = run_path(expr, limits, table, macros, copy_macros, prefix);
        if (paths.fetch_add(1, std::memory_order_relaxed) + 1 > max_paths) too_large(max_paths);
        // Every untried sibling along this path roots at least one more sequence.
        std::uint64_t pending = 0;
        for (std::size_t i = fixed; i < leaf.radices.size() && pending <= max_paths; ++i) {
            const std::uint64_t siblings = leaf.radices[i] - 1 - leaf.choices[i];
            pending = siblings > max_paths ? max_paths + 1 : pending + siblings;
        }
        if (pending > max_paths) too_large(max_paths);
        out[leaf.key] += leaf.mass;

        std::size_t j = leaf.choices.size();
        while (j > fixed && leaf.choices[j - 1] + 1 >= leaf.radices[j - 1]) --j;
        if (j == fixed) return;
        prefix.assign(leaf.choices.begin(), leaf.choices.begin() + static_cast<std::ptrdiff_t>(j));
        ++prefix.back();
    }
}

}  // namespace

OutcomeDistribution enumerate_serial(const RollExpression& expr, const Limits& limits, const MacroTable& macros,
                                     EnumerateOptions options) {
    OutcomeDistribution dist;
    std::atomic<std::uint64_t> paths{0};
    walk_subtree(expr, limits, macros, defines_macros(expr), {}, paths, options.max_paths, dist.probabilities);
    dist.paths = paths.load();
    return dist;
}

OutcomeDistribution enumerate_parallel(const RollExpression& expr, const Limits& limits, const MacroTable& macros,
                                       EnumerateOptions options) {
    const bool copy_macros = defines_macros(expr);
    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    // Split the tree into prefixes until there is enough work to share.
    const std::size_t wanted = static_cast<std::size_t>(threads) * 8;
    std::vector<std::vector<std::uint64_t>> shards{{}};
    MacroTable probe_table = macros;
    for (int depth = 0; depth < 3 && shards.size() < wanted; ++depth) {
        std::vector<std::vector<std::uint64_t>> next;
        for (auto& prefix : shards) {
            const Leaf probe = run_path(expr, limits, probe_table, macros, copy_macros, prefix);
            if (probe.radices.size() <= prefix.size() || probe.radices[prefix.size()] > options.max_paths) {
                next.push_back(std::move(prefix));
                continue;
            }
            for (std::uint64_t v = 0; v < probe.radices[prefix.size()]; ++v) {
                auto child = prefix;
                child.push_back(v);
                next.push_back(std::move(child));
            }
            if (next.size() > options.max_paths) too_large(options.max_paths);
        }
        shards = std::move(next);
    }

    std::atomic<std::uint64_t> paths{0};
    std::vector<std::map<std::string, long double>> partial(shards.size());
    std::atomic<bool> failed{false};
    DiceError failure(ErrorCode::StateSpaceTooLarge, "");
    const auto count = static_cast<std::int64_t>(shards.size());

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t s = 0; s < count; ++s) {
        if (failed.load(std::memory_order_relaxed)) continue;
        try {
            walk_subtree(expr, limits, macros, copy_macros, shards[static_cast<std::size_t>(s)], paths,
                         options.max_paths, partial[static_cast<std::size_t>(s)]);
        } catch (const DiceError& e) {
#pragma omp critical(dice_oracle_failure)
            {
                if (!failed.exchange(true)) failure = e;
            }
        }
    }
    if (failed.load()) throw failure;

    OutcomeDistribution dist;
    for (auto& part : partial) {
        for (auto& [key, p] : part) dist.probabilities[key] += p;
    }
    dist.paths = paths.load();
    return dist;
}

namespace {

std::string sample_once(const RollExpression& expr, std::uint64_t seed, const Limits& limits,
                        MacroTable& macros, const MacroTable& pristine, bool copy_macros) {
    SeededSource source(seed);
    try {
        if (copy_macros) macros = pristine;
        return outcome_key(evaluate(expr, macros, source, limits).values);
    } catch (const DiceError& e) {
        return "error:" + std::string(error_code_name(e.code()));
    }
}

}  // namespace

std::map<std::string, std::uint64_t> sample_serial(const RollExpression& expr, std::uint64_t samples,
                                                   std::uint64_t seed, const Limits& limits,
                                                   const MacroTable& macros) {
    const bool copy_macros = defines_macros(expr);
    MacroTable table = macros;
    std::map<std::string, std::uint64_t> counts;
    for (std::uint64_t i = 0; i < samples; ++i) {
        ++counts[sample_once(expr, derive_seed(seed, i), limits, table, macros, copy_macros)];
    }
    return counts;
}

std::map<std::string, std::uint64_t> sample_parallel(const RollExpression& expr, std::uint64_t samples,
                                                     std::uint64_t seed, const Limits& limits,
                                                     const MacroTable& macros) {
    const bool copy_macros = defines_macros(expr);
    std::map<std::string, std::uint64_t> counts;
#pragma omp parallel
    {
        MacroTable table = macros;
        std::map<std::string, std::uint64_t> local;
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples); ++i) {
            ++local[sample_once(expr, derive_seed(seed, static_cast<std::uint64_t>(i)), limits, table, macros,
                                copy_macros)];
        }
#pragma omp critical(dice_sample_merge)
        for (const auto& [key, n] : local) counts[key] += n;
    }
    return counts;
}

ChiSquare chi_square_test(const std::vector<double>& observed, const std::vector<double>& expected) {
    ChiSquare out;
    std::vector<std::size_t> order(expected.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return expected[a] < expected[b]; });

    std::vector<std::pair<double, double>> bins;  // (observed, expected)
    double pooled_obs = 0.0;
    double pooled_exp = 0.0;
    for (auto i : order) {
        if (expected[i] <= 0.0) {
            if (observed[i] > 0.0) {
                out.statistic = std::numeric_limits<double>::infinity();
                out.p_value = 0.0;
                return out;
            }
            continue;
        }
        pooled_obs += observed[i];
        pooled_exp += expected[i];
        if (pooled_exp >= 5.0) {
            bins.emplace_back(pooled_obs, pooled_exp);
            pooled_obs = pooled_exp = 0.0;
        }
    }
    if (pooled_exp > 0.0) {
        if (bins.empty()) {
            bins.emplace_back(pooled_obs, pooled_exp);
        } else {
            bins.back().first += pooled_obs;
            bins.back().second += pooled_exp;
        }
    }
    for (const auto& [o, e] : bins) out.statistic += (o - e) * (o - e) / e;
    out.degrees_of_freedom = static_cast<int>(bins.size()) - 1;
    if (out.degrees_of_freedom <= 0) {
        out.p_value = 1.0;
        return out;
    }
    out.p_value = boost::math::gamma_q(out.degrees_of_freedom / 2.0, out.statistic / 2.0);
    return out;
}

ComparisonReport compare(const RollExpression& expr, std::uint64_t samples, std::uint64_t seed,
                         const Limits& limits, const MacroTable& macros, double significance) {
    const OutcomeDistribution exact = enumerate(expr, limits, macros);
    const auto counts = sample_parallel(expr, samples, seed, limits, macros);

    ComparisonReport report;
    report.samples = samples;
    report.support_size = exact.support_size();
    report.paths = exact.paths;
    report.total_probability = exact.total();
    report.significance = significance;

    std::vector<double> observed;
    std::vector<double> expected;
    for (const auto& [key, p] : exact.probabilities) {
        auto it = counts.find(key);
        observed.push_back(it == counts.end() ? 0.0 : static_cast<double>(it->second));
        expected.push_back(static_cast<double>(p) * static_cast<double>(samples));
    }
    for (const auto& [key, n] : counts) {
        if (!exact.probabilities.count(key)) {
            report.unexpected.push_back(key);
            observed.push_back(static_cast<double>(n));
            expected.push_back(0.0);
        }
    }
    report.chi = chi_square_test(observed, expected);
    report.passed = report.unexpected.empty() && report.chi.p_value >= significance;
    return report;
}

}  // namespace dice
