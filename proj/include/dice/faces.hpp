#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dice/ast.hpp"

namespace dice {

/// A single rolled face: a number or a symbol.
using FaceValue = std::variant<std::int64_t, std::string>;

std::string face_to_string(const FaceValue& face);

/// Resolved face set of a die. Standard dice keep their sides implicit so
/// that d1000000 costs nothing to build.
class Faces {
public:
    static Faces standard(std::int64_t sides);
    static Faces numeric(std::vector<std::int64_t> values);
    static Faces symbolic(std::vector<std::string> symbols);

    std::size_t size() const noexcept;
    bool is_symbolic() const noexcept { return std::holds_alternative<std::vector<std::string>>(data_); }

    /// Numeric value of the face at `index`; only for numeric faces.
    std::int64_t number_at(std::size_t index) const;
    const std::string& symbol_at(std::size_t index) const;
    FaceValue at(std::size_t index) const;

    /// Largest numeric face; the explosion trigger.
    std::int64_t max_number() const;

    friend bool operator==(const Faces&, const Faces&) = default;

private:
    struct Standard {
        std::int64_t sides;
        friend bool operator==(const Standard&, const Standard&) = default;
    };
    std::variant<Standard, std::vector<std::int64_t>, std::vector<std::string>> data_;
    std::int64_t max_ = 0;

    Faces() : data_(Standard{1}) {}
};

/// Rewrites the shorthands: d% is d100, c is d{HEADS,TAILS}, df is the
/// six-sided fate die d{-,-,0,0,+,+}. Other specs are returned unchanged.
FaceSpec expand_special(const FaceSpec& spec);

inline constexpr std::size_t kMaxExplicitFaces = 1'000'000;

/// Expands ranges and shorthands into the concrete face set.
Faces resolve_faces(const FaceSpec& spec);

}  // namespace dice
