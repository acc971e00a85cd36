#include "dice/faces.hpp"

#include <algorithm>

namespace dice {

std::string face_to_string(const FaceValue& face) {
    if (const auto* n = std::get_if<std::int64_t>(&face)) return std::to_string(*n);
    return std::get<std::string>(face);
}

Faces Faces::standard(std::int64_t sides) {
    Faces f;
    f.data_ = Standard{sides};
    f.max_ = sides;
    return f;
}

Faces Faces::numeric(std::vector<std::int64_t> values) {
    Faces f;
    f.max_ = values.empty() ? 0 : *std::max_element(values.begin(), values.end());
    f.data_ = std::move(values);
    return f;
}

Faces Faces::symbolic(std::vector<std::string> symbols) {
    Faces f;
    f.data_ = std::move(symbols);
    return f;
}

std::size_t Faces::size() const noexcept {
    return std::visit(
        [](const auto& d) -> std::size_t {
            if constexpr (std::is_same_v<std::decay_t<decltype(d)>, Standard>) {
                return static_cast<std::size_t>(d.sides);
            } else {
                return d.size();
            }
        },
        data_);
}

std::int64_t Faces::number_at(std::size_t index) const {
    if (std::holds_alternative<Standard>(data_)) return static_cast<std::int64_t>(index) + 1;
    if (const auto* v = std::get_if<std::vector<std::int64_t>>(&data_)) return (*v)[index];
    throw DiceError(ErrorCode::TypeError, "symbolic face has no numeric value");
}

const std::string& Faces::symbol_at(std::size_t index) const {
    if (const auto* v = std::get_if<std::vector<std::string>>(&data_)) return (*v)[index];
    throw DiceError(ErrorCode::TypeError, "numeric face has no symbol");
}

FaceValue Faces::at(std::size_t index) const {
    if (is_symbolic()) return symbol_at(index);
    return number_at(index);
}

std::int64_t Faces::max_number() const {
    if (is_symbolic()) throw DiceError(ErrorCode::SymbolicOrdering, "symbolic faces have no maximum");
    return max_;
}

FaceSpec expand_special(const FaceSpec& spec) {
    if (std::holds_alternative<PercentSides>(spec)) return StandardSides{100};
    if (std::holds_alternative<CoinFaces>(spec)) return SymbolicList{{"HEADS", "TAILS"}};
    if (std::holds_alternative<FateFaces>(spec)) return SymbolicList{{"-", "-", "0", "0", "+", "+"}};
    return spec;
}

Faces resolve_faces(const FaceSpec& spec) {
    const FaceSpec expanded = expand_special(spec);
    if (const auto* s = std::get_if<StandardSides>(&expanded)) return Faces::standard(s->sides);
    if (const auto* sym = std::get_if<SymbolicList>(&expanded)) return Faces::symbolic(sym->symbols);

    const auto& list = std::get<NumericList>(expanded);
    std::size_t total = 0;
    for (const auto& item : list.items) {
        // hi >= lo is guaranteed by the parser; the difference may not fit.
        const auto width = static_cast<std::uint64_t>(item.hi) - static_cast<std::uint64_t>(item.lo);
        if (width >= kMaxExplicitFaces || total + width + 1 > kMaxExplicitFaces) {
            throw DiceError(ErrorCode::FaceListTooLarge, "face list expands to more than " +
                                                             std::to_string(kMaxExplicitFaces) + " faces");
        }
        total += static_cast<std::size_t>(width) + 1;
    }
    std::vector<std::int64_t> values;
    values.reserve(total);
    for (const auto& item : list.items) {
        for (std::int64_t v = item.lo;; ++v) {
            values.push_back(v);
            if (v == item.hi) break;
        }
    }
    return Faces::numeric(std::move(values));
}

}  // namespace dice
