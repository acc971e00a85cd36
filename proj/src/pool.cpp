#include "dice/pool.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "checked.hpp"

namespace dice {

using detail::checked_add;
using detail::checked_sub;

std::string_view status_name(RecordStatus status) noexcept {
    switch (status) {
        case RecordStatus::Kept: return "kept";
        case RecordStatus::Dropped: return "dropped";
        case RecordStatus::FilteredOut: return "filtered_out";
    }
    return "kept";
}

std::vector<FaceValue> Pool::history_values(const RollRecord& record) const {
    std::vector<FaceValue> out;
    out.reserve(record.history.size());
    for (auto index : record.history) out.push_back(faces->at(index));
    return out;
}

FaceValue Pool::current(const RollRecord& record) const {
    if (faces->is_symbolic()) return faces->symbol_at(record.history.back());
    return record.contribution;
}

Pool roll_pool(const DiceSpec& spec, RandomSource& rng, const Limits& limits) {
    if (spec.count > limits.max_pool) {
        throw DiceError(ErrorCode::PoolTooLarge, "pool of " + std::to_string(spec.count) + " dice exceeds limit " +
                                                     std::to_string(limits.max_pool));
    }
    Pool pool;
    pool.faces = spec.faces;
    const std::uint64_t n = spec.faces->size();
    const bool numeric = !spec.faces->is_symbolic();
    pool.records.resize(static_cast<std::size_t>(std::max<std::int64_t>(spec.count, 0)));
    std::uint32_t i = 0;
    for (auto& record : pool.records) {
        const std::uint64_t index = rng.next_index(n);
        record.die_index = i++;
        record.history.push_back(index);
        if (numeric) record.contribution = spec.faces->number_at(index);
    }
    return pool;
}

namespace {

void require_numeric(const Pool& pool, std::string_view what) {
    if (pool.symbolic()) {
        throw DiceError(ErrorCode::SymbolicOrdering, std::string(what) + " needs ordered numeric dice");
    }
}

bool compare(std::int64_t value, Comparator cmp, std::int64_t threshold) {
    switch (cmp) {
        case Comparator::Eq: return value == threshold;
        case Comparator::Ne: return value != threshold;
        case Comparator::Lt: return value < threshold;
        case Comparator::Gt: return value > threshold;
        case Comparator::Le: return value <= threshold;
        case Comparator::Ge: return value >= threshold;
    }
    return false;
}

std::vector<std::size_t> active_indices(const Pool& pool) {
    std::vector<std::size_t> out;
    out.reserve(pool.records.size());
    for (std::size_t i = 0; i < pool.records.size(); ++i) {
        if (pool.records[i].status == RecordStatus::Kept) out.push_back(i);
    }
    return out;
}

}  // namespace

bool satisfies(const Pool& pool, const RollRecord& record, const Condition& condition) {
    if (!pool.symbolic()) {
        const auto* threshold = std::get_if<std::int64_t>(&condition.threshold);
        if (!threshold) {
            throw DiceError(ErrorCode::TypeError,
                            "cannot compare numeric dice with symbol '" + std::get<std::string>(condition.threshold) + "'");
        }
        return compare(record.contribution, condition.comparator, *threshold);
    }
    if (condition.comparator != Comparator::Eq && condition.comparator != Comparator::Ne) {
        throw DiceError(ErrorCode::SymbolicOrdering, "symbolic dice support only == and != conditions");
    }
    const std::string wanted = std::visit(
        [](const auto& t) -> std::string {
            if constexpr (std::is_same_v<std::decay_t<decltype(t)>, std::string>) {
                return t;
            } else {
                return std::to_string(t);
            }
        },
        condition.threshold);
    const bool equal = pool.faces->symbol_at(record.history.back()) == wanted;
    return condition.comparator == Comparator::Eq ? equal : !equal;
}

Pool keep_drop(Pool pool, KeepDrop::Which which, KeepDrop::End end, std::int64_t amount) {
    require_numeric(pool, "keep/drop");
    auto active = active_indices(pool);
    const auto z = static_cast<std::size_t>(std::max<std::int64_t>(amount, 0));
    if (z >= active.size()) {
        if (which == KeepDrop::Which::Drop) {
            for (auto i : active) pool.records[i].status = RecordStatus::Dropped;
        }
        return pool;
    }
    // Stable order puts the earliest-rolled die first among equal values.
    auto by_value = [&](std::size_t a, std::size_t b) {
        const auto va = pool.records[a].contribution;
        const auto vb = pool.records[b].contribution;
        return end == KeepDrop::End::High ? va > vb : va < vb;
    };
    std::stable_sort(active.begin(), active.end(), by_value);
    if (which == KeepDrop::Which::Keep) {
        for (std::size_t k = z; k < active.size(); ++k) pool.records[active[k]].status = RecordStatus::Dropped;
    } else {
        for (std::size_t k = 0; k < z; ++k) pool.records[active[k]].status = RecordStatus::Dropped;
    }
    return pool;
}

Pool filter(Pool pool, const Condition& condition) {
    for (auto& record : pool.records) {
        if (record.status == RecordStatus::Kept && !satisfies(pool, record, condition)) {
            record.status = RecordStatus::FilteredOut;
        }
    }
    return pool;
}

Pool reroll(Pool pool, const Condition& condition, bool repeated, RandomSource& rng, int limit) {
    const std::uint64_t n = pool.faces->size();
    const bool numeric = !pool.symbolic();
    const int max_steps = repeated ? limit : std::min(limit, 1);
    for (auto& record : pool.records) {
        if (record.status != RecordStatus::Kept) continue;
        int steps = 0;
        while (steps < max_steps && satisfies(pool, record, condition)) {
            const std::uint64_t index = rng.next_index(n);
            record.history.push_back(index);
            if (numeric) record.contribution = pool.faces->number_at(index);
            ++steps;
        }
        if (repeated && steps == limit && satisfies(pool, record, condition)) record.limit_hit = true;
    }
    return pool;
}

Pool explode(Pool pool, ExplodeMode mode, RandomSource& rng, int limit) {
    require_numeric(pool, "explosion");
    const std::uint64_t n = pool.faces->size();
    const std::int64_t top = pool.faces->max_number();
    const int max_chain = mode == ExplodeMode::Once ? std::min(limit, 1) : limit;
    for (auto& record : pool.records) {
        if (record.status != RecordStatus::Kept) continue;
        int explosions = 0;
        while (pool.faces->number_at(record.history.back()) == top) {
            if (explosions == max_chain) {
                if (mode != ExplodeMode::Once) record.limit_hit = true;
                break;
            }
            // The i-th penetrating explosion loses i-1; stop once nothing is left to gain.
            const std::int64_t penalty = mode == ExplodeMode::Penetrating ? explosions : 0;
            if (mode == ExplodeMode::Penetrating && checked_sub(top, penalty) <= 0) break;
            const std::uint64_t index = rng.next_index(n);
            const std::int64_t value = pool.faces->number_at(index);
            record.history.push_back(index);
            record.contribution = checked_add(record.contribution, value == top ? checked_sub(value, penalty) : value);
            ++explosions;
        }
    }
    return pool;
}

std::int64_t count_active(const Pool& pool) {
    return std::count_if(pool.records.begin(), pool.records.end(),
                         [](const RollRecord& r) { return r.status == RecordStatus::Kept; });
}

Pool unique(Pool pool) {
    if (pool.symbolic()) {
        std::unordered_set<std::string> seen;
        for (auto& record : pool.records) {
            if (record.status != RecordStatus::Kept) continue;
            if (!seen.insert(pool.faces->symbol_at(record.history.back())).second) {
                record.status = RecordStatus::FilteredOut;
            }
        }
        return pool;
    }
    std::unordered_set<std::int64_t> seen;
    for (auto& record : pool.records) {
        if (record.status == RecordStatus::Kept && !seen.insert(record.contribution).second) {
            record.status = RecordStatus::FilteredOut;
        }
    }
    return pool;
}

}  // namespace dice
