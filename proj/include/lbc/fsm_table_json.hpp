#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "lbc/fsm_codec.hpp"

namespace lbc {

// Table file layout: one object per state, keyed by state name, holding the
// four input rows, e.g.
//   { "0+": { "00": {"output": "101", "next": "1+"}, ... }, ... }
// Loaded tables get the standard final-bit assignment and must be checked
// with validate_table before use.

inline nlohmann::json fsm_table_to_json(const FsmTable& t) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t si = 0; si < kFsmStateCount; ++si) {
        const auto state = static_cast<FsmState>(si);
        nlohmann::json row = nlohmann::json::object();
        for (unsigned input = 0; input < 4; ++input) {
            const auto& tr = t.at(state, input);
            if (!tr) continue;
            const std::string key{static_cast<char>('0' + (input >> 1)),
                                  static_cast<char>('0' + (input & 1))};
            row[key] = {{"output", tr->output.str()}, {"next", std::string(fsm_state_name(tr->next))}};
        }
        j[std::string(fsm_state_name(state))] = std::move(row);
    }
    return j;
}

inline FsmTable fsm_table_from_json(const nlohmann::json& j) {
    FsmTable t;
    t.final_bit = {1, 1, 0, 1, 0, 0};
    if (!j.is_object()) throw std::invalid_argument("fsm table: top level must be an object");
    for (const auto& [state_name, row] : j.items()) {
        const auto state = fsm_state_from_name(state_name);
        if (!state) throw std::invalid_argument("fsm table: unknown state '" + state_name + "'");
        for (const auto& [input_key, entry] : row.items()) {
            if (input_key.size() != 2 || (input_key[0] != '0' && input_key[0] != '1') ||
                (input_key[1] != '0' && input_key[1] != '1')) {
                throw std::invalid_argument("fsm table: bad input key '" + input_key + "'");
            }
            const unsigned input = static_cast<unsigned>((input_key[0] - '0') * 2 + (input_key[1] - '0'));
            const auto next = fsm_state_from_name(entry.at("next").get<std::string>());
            if (!next) throw std::invalid_argument("fsm table: unknown next state");
            t.set(*state, input, entry.at("output").get<std::string>(), *next);
        }
    }
    return t;
}

} // namespace lbc
