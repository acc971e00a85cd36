#include "dice/result_json.hpp"

namespace dice {

namespace {

nlohmann::json face_json(const FaceValue& face) {
    if (const auto* n = std::get_if<std::int64_t>(&face)) return *n;
    return std::get<std::string>(face);
}

}  // namespace

nlohmann::json result_to_json(const RollResult& result) {
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& value : result.values) {
        if (const auto* n = std::get_if<std::int64_t>(&value)) {
            groups.push_back(*n);
        } else {
            groups.push_back(std::get<Symbols>(value));
        }
    }

    nlohmann::json records = nlohmann::json::array();
    for (std::size_t p = 0; p < result.pools.size(); ++p) {
        const Pool& pool = result.pools[p];
        for (const auto& record : pool.records) {
            nlohmann::json history = nlohmann::json::array();
            for (auto index : record.history) history.push_back(face_json(pool.faces->at(index)));
            nlohmann::json r = {
                {"pool", p},
                {"die", record.die_index},
                {"history", std::move(history)},
                {"status", status_name(record.status)},
            };
            if (!pool.symbolic()) r["contribution"] = record.contribution;
            if (record.limit_hit) r["limit_hit"] = true;
            records.push_back(std::move(r));
        }
    }
    return {{"groups", std::move(groups)}, {"records", std::move(records)}, {"warnings", result.warnings}};
}

nlohmann::json error_to_json(const DiceError& error) {
    return {{"error",
             {{"code", error_code_name(error.code())},
              {"message", error.what()},
              {"span", {error.span().begin, error.span().end}}}}};
}

nlohmann::json roll_to_json(Evaluator& session, std::string_view source, RandomSource& rng, ParseOptions options) {
    try {
        return result_to_json(session.roll(source, rng, options));
    } catch (const DiceError& e) {
        return error_to_json(e);
    }
}

std::string to_text(const nlohmann::json& doc) {
    return doc.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace dice
