#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lbc/errors.hpp"
#include "lbc/word.hpp"

namespace lbc {

/// The six encoder states: a running-sum level in {-1, 0, 1, 2} plus a sign
/// tag on the two middle levels (used by the decoder to disambiguate them).
enum class FsmState : std::uint8_t {
    MinusOne = 0,
    ZeroPlus = 1,
    ZeroMinus = 2,
    OnePlus = 3,
    OneMinus = 4,
    Two = 5,
};

constexpr std::size_t kFsmStateCount = 6;

inline int fsm_level(FsmState s) {
    switch (s) {
        case FsmState::MinusOne: return -1;
        case FsmState::ZeroPlus:
        case FsmState::ZeroMinus: return 0;
        case FsmState::OnePlus:
        case FsmState::OneMinus: return 1;
        case FsmState::Two: return 2;
    }
    throw std::logic_error("fsm_level: bad state");
}

inline std::string_view fsm_state_name(FsmState s) {
    switch (s) {
        case FsmState::MinusOne: return "-1";
        case FsmState::ZeroPlus: return "0+";
        case FsmState::ZeroMinus: return "0-";
        case FsmState::OnePlus: return "1+";
        case FsmState::OneMinus: return "1-";
        case FsmState::Two: return "2";
    }
    throw std::logic_error("fsm_state_name: bad state");
}

inline std::optional<FsmState> fsm_state_from_name(std::string_view name) {
    // U+2212 minus sign is accepted as a synonym for '-'.
    std::string norm;
    for (std::size_t i = 0; i < name.size();) {
        if (name.size() - i >= 3 && static_cast<unsigned char>(name[i]) == 0xE2 &&
            static_cast<unsigned char>(name[i + 1]) == 0x88 &&
            static_cast<unsigned char>(name[i + 2]) == 0x92) {
            norm.push_back('-');
            i += 3;
        } else {
            norm.push_back(name[i]);
            ++i;
        }
    }
    for (std::size_t k = 0; k < kFsmStateCount; ++k) {
        const auto st = static_cast<FsmState>(k);
        if (fsm_state_name(st) == norm) return st;
    }
    return std::nullopt;
}

struct FsmTransition {
    Word output;    // 3 bits
    FsmState next;
};

/// Transition table of the 6-state scheme: state x 2-bit input -> 3-bit
/// output + next state, plus the final parity bit appended per terminal state.
/// Entries are optional so that malformed tables can be represented and
/// reported by validate_table.
struct FsmTable {
    std::array<std::array<std::optional<FsmTransition>, 4>, kFsmStateCount> transitions{};
    std::array<std::uint8_t, kFsmStateCount> final_bit{};

    const std::optional<FsmTransition>& at(FsmState s, unsigned input) const {
        return transitions[static_cast<std::size_t>(s)][input];
    }

    void set(FsmState s, unsigned input, std::string_view output, FsmState next) {
        transitions[static_cast<std::size_t>(s)][input] = FsmTransition{Word::from_string(output), next};
    }
};

/// The reference table. Inputs are 2-bit values read most-significant first.
inline FsmTable default_fsm_table() {
    FsmTable t;
    using S = FsmState;
    t.set(S::MinusOne, 0b00, "110", S::ZeroPlus);
    t.set(S::MinusOne, 0b01, "110", S::ZeroMinus);
    t.set(S::MinusOne, 0b10, "101", S::ZeroMinus);
    t.set(S::MinusOne, 0b11, "111", S::Two);
    t.set(S::ZeroPlus, 0b00, "101", S::OnePlus);
    t.set(S::ZeroPlus, 0b01, "110", S::OnePlus);
    t.set(S::ZeroPlus, 0b10, "011", S::OnePlus);
    t.set(S::ZeroPlus, 0b11, "100", S::MinusOne);
    t.set(S::ZeroMinus, 0b00, "101", S::OneMinus);
    t.set(S::ZeroMinus, 0b01, "110", S::OneMinus);
    t.set(S::ZeroMinus, 0b10, "011", S::OneMinus);
    t.set(S::ZeroMinus, 0b11, "010", S::MinusOne);
    t.set(S::OnePlus, 0b00, "010", S::ZeroPlus);
    t.set(S::OnePlus, 0b01, "001", S::ZeroPlus);
    t.set(S::OnePlus, 0b10, "100", S::ZeroPlus);
    t.set(S::OnePlus, 0b11, "011", S::Two);
    t.set(S::OneMinus, 0b00, "010", S::ZeroMinus);
    t.set(S::OneMinus, 0b01, "001", S::ZeroMinus);
    t.set(S::OneMinus, 0b10, "100", S::ZeroMinus);
    t.set(S::OneMinus, 0b11, "101", S::Two);
    t.set(S::Two, 0b00, "000", S::MinusOne);
    t.set(S::Two, 0b01, "010", S::OnePlus);
    t.set(S::Two, 0b10, "001", S::OnePlus);
    t.set(S::Two, 0b11, "001", S::OneMinus);
    t.final_bit = {1, 1, 0, 1, 0, 0};  // 1 on {-1, 0+, 1+}
    return t;
}

struct FsmValidationReport {
    std::vector<std::string> issues;

    bool valid() const { return issues.empty(); }
};

/// Checks the structural requirements the codec relies on: four complete
/// outgoing transitions per state, 3-bit outputs whose level change matches
/// the state levels and whose intermediate running sum stays inside [-1, 2],
/// pairwise-distinct labels on the arrows into each state, and the standard
/// final-bit assignment.
inline FsmValidationReport validate_table(const FsmTable& t) {
    FsmValidationReport report;
    auto issue = [&](std::string msg) { report.issues.push_back(std::move(msg)); };

    for (std::size_t si = 0; si < kFsmStateCount; ++si) {
        const auto state = static_cast<FsmState>(si);
        for (unsigned input = 0; input < 4; ++input) {
            const auto& tr = t.at(state, input);
            if (!tr) {
                issue("state " + std::string(fsm_state_name(state)) + ": missing transition for input " +
                      std::to_string(input >> 1) + std::to_string(input & 1));
                continue;
            }
            if (tr->output.size() != 3) {
                issue("state " + std::string(fsm_state_name(state)) + ": output is not 3 bits");
                continue;
            }
            int level = fsm_level(state);
            bool in_band = true;
            for (auto b : tr->output) {
                level += b ? 1 : -1;
                if (level < -1 || level > 2) in_band = false;
            }
            if (level != fsm_level(tr->next)) {
                issue("state " + std::string(fsm_state_name(state)) + ": output " + tr->output.str() +
                      " ends at level " + std::to_string(level) + " but targets " +
                      std::string(fsm_state_name(tr->next)));
            } else if (!in_band) {
                issue("state " + std::string(fsm_state_name(state)) + ": output " + tr->output.str() +
                      " leaves the running-sum band [-1, 2]");
            }
        }
    }

    // distinct labels on the incoming arrows of each state
    for (std::size_t target = 0; target < kFsmStateCount; ++target) {
        std::vector<std::uint64_t> labels;
        for (std::size_t si = 0; si < kFsmStateCount; ++si) {
            for (unsigned input = 0; input < 4; ++input) {
                const auto& tr = t.at(static_cast<FsmState>(si), input);
                if (tr && tr->output.size() == 3 && static_cast<std::size_t>(tr->next) == target) {
                    labels.push_back(tr->output.value());
                }
            }
        }
        std::sort(labels.begin(), labels.end());
        if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
            issue("state " + std::string(fsm_state_name(static_cast<FsmState>(target))) +
                  ": duplicate incoming label");
        }
    }

    const std::array<std::uint8_t, kFsmStateCount> expect_final{1, 1, 0, 1, 0, 0};
    if (t.final_bit != expect_final) {
        issue("final bits must be 1 exactly on {-1, 0+, 1+}");
    }
    return report;
}

/// Encodes 2k message bits into 3k + 1 coded bits: k table steps starting in
/// state 0+, then the terminal state's final bit.
inline Word encode_fsm(const Word& msg, const FsmTable& t) {
    if (msg.size() % 2 != 0) throw FramingError("encode_fsm: message length must be even");
    std::vector<std::uint8_t> out;
    out.reserve(msg.size() / 2 * 3 + 1);
    FsmState state = FsmState::ZeroPlus;
    for (std::size_t p = 0; p < msg.size(); p += 2) {
        const unsigned input = static_cast<unsigned>((msg[p] << 1) | msg[p + 1]);
        const auto& tr = t.at(state, input);
        if (!tr) throw std::invalid_argument("encode_fsm: table has no transition for this input");
        out.insert(out.end(), tr->output.begin(), tr->output.end());
        state = tr->next;
    }
    out.push_back(t.final_bit[static_cast<std::size_t>(state)]);
    return Word(std::move(out));
}

/// Recovers the terminal state of a codeword from the running sum of its
/// first 3k bits plus the final bit (which resolves the sign on levels 0, 1).
inline FsmState recover_final_state(const Word& code, const FsmTable& t) {
    (void)t;
    if (code.size() % 3 != 1) throw CorruptionError("recover_final_state: length must be 3k + 1");
    int level = 0;
    for (std::size_t i = 0; i + 1 < code.size(); ++i) level += code[i] ? 1 : -1;
    const int last = code[code.size() - 1];
    switch (level) {
        case -1: return FsmState::MinusOne;
        case 2: return FsmState::Two;
        case 0: return last ? FsmState::ZeroPlus : FsmState::ZeroMinus;
        case 1: return last ? FsmState::OnePlus : FsmState::OneMinus;
        default:
            throw CorruptionError("recover_final_state: running sum " + std::to_string(level) +
                                  " outside [-1, 2]");
    }
}

/// Inverse of encode_fsm: walks the codeword backwards from the recovered
/// terminal state, resolving each 3-bit label through the (unique) incoming
/// arrow, and requires the walk to end in the initial state 0+.
inline Word decode_fsm(const Word& code, const FsmTable& t) {
    if (code.size() % 3 != 1) throw CorruptionError("decode_fsm: length must be 3k + 1");

    // reverse index: (target, label) -> (source, input)
    std::array<std::array<std::optional<std::pair<FsmState, unsigned>>, 8>, kFsmStateCount> rev{};
    for (std::size_t si = 0; si < kFsmStateCount; ++si) {
        for (unsigned input = 0; input < 4; ++input) {
            const auto& tr = t.at(static_cast<FsmState>(si), input);
            if (!tr) throw std::invalid_argument("decode_fsm: incomplete table");
            auto& slot = rev[static_cast<std::size_t>(tr->next)][tr->output.value()];
            if (slot) throw std::invalid_argument("decode_fsm: table has duplicate incoming labels");
            slot = {static_cast<FsmState>(si), input};
        }
    }

    FsmState state = recover_final_state(code, t);
    const std::size_t k = code.size() / 3;
    std::vector<std::uint8_t> msg(2 * k);
    for (std::size_t block = k; block-- > 0;) {
        std::uint64_t label = 0;
        for (std::size_t i = 0; i < 3; ++i) label = (label << 1) | static_cast<std::uint64_t>(code[3 * block + i]);
        const auto& slot = rev[static_cast<std::size_t>(state)][label];
        if (!slot) {
            throw CorruptionError("decode_fsm: no incoming arrow into " +
                                  std::string(fsm_state_name(state)) + " labelled " +
                                  Word::from_value(label, 3).str());
        }
        msg[2 * block] = static_cast<std::uint8_t>(slot->second >> 1);
        msg[2 * block + 1] = static_cast<std::uint8_t>(slot->second & 1);
        state = slot->first;
    }
    if (state != FsmState::ZeroPlus) {
        throw CorruptionError("decode_fsm: backward walk ends in " +
                              std::string(fsm_state_name(state)) + ", expected 0+");
    }
    return Word(std::move(msg));
}

} // namespace lbc
