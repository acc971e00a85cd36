#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dice/ast.hpp"
#include "dice/evaluator.hpp"
#include "dice/limits.hpp"

namespace dice {

/// Exact outcome distribution keyed by the rendered result ("7", "2,6",
/// "error:DIVISION_BY_ZERO").
struct OutcomeDistribution {
    std::map<std::string, long double> probabilities;
    /// Number of distinct draw sequences walked.
    std::uint64_t paths = 0;

    std::size_t support_size() const noexcept { return probabilities.size(); }
    long double total() const;
    long double probability(const std::string& outcome) const;
};

struct EnumerateOptions {
    std::uint64_t max_paths = 10'000'000;
};

/// Key used for an evaluation outcome in distributions and histograms.
std::string outcome_key(const ValueVector& values);

/// Walks every face-index sequence the evaluator can request, replaying each
/// through the real evaluator, and weights it by the product of 1/faces over
/// its draws. Chains are truncated at the evaluator's own chain limit.
/// Throws StateSpaceTooLarge beyond `options.max_paths` sequences.
OutcomeDistribution enumerate_serial(const RollExpression& expr, const Limits& limits = {},
                                     const MacroTable& macros = {}, EnumerateOptions options = {});

/// Same walk sharded over OpenMP threads by draw prefix.
OutcomeDistribution enumerate_parallel(const RollExpression& expr, const Limits& limits = {},
                                       const MacroTable& macros = {}, EnumerateOptions options = {});

inline OutcomeDistribution enumerate(const RollExpression& expr, const Limits& limits = {},
                                     const MacroTable& macros = {}, EnumerateOptions options = {}) {
    return enumerate_parallel(expr, limits, macros, options);
}

/// Outcome counts of `samples` evaluations; evaluation i uses its own
/// SeededSource(derive_seed(seed, i)), so both versions agree exactly.
std::map<std::string, std::uint64_t> sample_serial(const RollExpression& expr, std::uint64_t samples,
                                                   std::uint64_t seed, const Limits& limits = {},
                                                   const MacroTable& macros = {});
std::map<std::string, std::uint64_t> sample_parallel(const RollExpression& expr, std::uint64_t samples,
                                                     std::uint64_t seed, const Limits& limits = {},
                                                     const MacroTable& macros = {});

struct ChiSquare {
    double statistic = 0.0;
    int degrees_of_freedom = 0;
    double p_value = 1.0;
};

/// Pearson goodness of fit. Bins with expected count below 5 are pooled.
/// Observations in a bin of zero expected probability give p = 0.
ChiSquare chi_square_test(const std::vector<double>& observed, const std::vector<double>& expected);

struct ComparisonReport {
    std::uint64_t samples = 0;
    std::size_t support_size = 0;
    std::uint64_t paths = 0;
    long double total_probability = 0;
    ChiSquare chi;
    /// Sampled outcomes that the enumeration says are impossible.
    std::vector<std::string> unexpected;
    double significance = 1e-3;
    bool passed = false;
};

/// Samples the evaluator and tests the histogram against the exact
/// distribution at the given significance.
ComparisonReport compare(const RollExpression& expr, std::uint64_t samples, std::uint64_t seed,
                         const Limits& limits = {}, const MacroTable& macros = {}, double significance = 1e-3);

}  // namespace dice
