#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "dice/ast.hpp"
#include "dice/faces.hpp"
#include "dice/limits.hpp"
#include "dice/rng.hpp"

namespace dice {

struct DiceSpec {
    std::int64_t count = 1;
    std::shared_ptr<const Faces> faces;
};

enum class RecordStatus { Kept, Dropped, FilteredOut };

std::string_view status_name(RecordStatus status) noexcept;

/// Audit trail of one die. `history` holds face indices: the initial roll
/// followed by every reroll or explosion, in order.
struct RollRecord {
    std::uint32_t die_index = 0;
    boost::container::small_vector<std::uint64_t, 2> history;
    RecordStatus status = RecordStatus::Kept;
    /// Current numeric value, including explosion accumulation.
    std::int64_t contribution = 0;
    /// A reroll or explosion chain stopped at the chain limit.
    bool limit_hit = false;
};

struct Pool {
    std::vector<RollRecord> records;
    std::shared_ptr<const Faces> faces;
    /// Rolled with a negative count: the collapsed value is negated.
    bool negated = false;

    bool symbolic() const { return faces->is_symbolic(); }
    /// Face values of a record's history.
    std::vector<FaceValue> history_values(const RollRecord& record) const;
    /// Face currently showing on the die.
    FaceValue current(const RollRecord& record) const;
};

/// Rolls `spec.count` dice, each face drawn by index so repeated faces
/// (fate dice) keep every physical side equally likely.
Pool roll_pool(const DiceSpec& spec, RandomSource& rng, const Limits& limits = {});

/// Keeps or drops the `amount` highest/lowest active dice. Keeping at least
/// as many dice as are active changes nothing; dropping that many drops all.
/// Among equal values the earliest-rolled die is selected first.
Pool keep_drop(Pool pool, KeepDrop::Which which, KeepDrop::End end, std::int64_t amount);

/// Marks active dice failing `condition` as filtered out.
Pool filter(Pool pool, const Condition& condition);

/// Rerolls active dice matching `condition`: once, or until they stop
/// matching or `limit` rerolls happened.
Pool reroll(Pool pool, const Condition& condition, bool repeated, RandomSource& rng, int limit);

Pool explode(Pool pool, ExplodeMode mode, RandomSource& rng, int limit);

std::int64_t count_active(const Pool& pool);

/// Filters out every repeat of a value already seen among active dice.
Pool unique(Pool pool);

/// True when the record's current value satisfies `condition`.
bool satisfies(const Pool& pool, const RollRecord& record, const Condition& condition);

}  // namespace dice
