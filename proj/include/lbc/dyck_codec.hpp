#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "lbc/errors.hpp"
#include "lbc/word.hpp"

namespace lbc {

/// Fibonacci numbers with F_1 = F_2 = 1, exact; throws std::overflow_error
/// once the value leaves the 64-bit range (first at k = 94).
inline std::uint64_t fib(unsigned k) {
    if (k < 1) throw std::invalid_argument("fib: k must be >= 1");
    std::uint64_t a = 1, b = 1;  // F_1, F_2
    for (unsigned i = 2; i < k; ++i) {
        std::uint64_t next;
        if (__builtin_add_overflow(a, b, &next)) {
            throw std::overflow_error("fib: value exceeds 64 bits at k=" + std::to_string(k));
        }
        a = b;
        b = next;
    }
    return k == 1 ? a : b;
}

namespace detail {

constexpr int kDyckBandLow = -1;
constexpr int kDyckBandHigh = 2;

inline bool dyck_layer_ok(int layer) {
    return layer >= kDyckBandLow && layer <= kDyckBandHigh;
}

} // namespace detail

/// Number of +-1-step paths of length m from start_layer that stay inside
/// [-1, 2] at every step. Computed by direct dynamic programming over layers
/// so it can be checked against the closed Fibonacci form.
inline std::uint64_t count_bounded_paths(int start_layer, unsigned m) {
    if (!detail::dyck_layer_ok(start_layer)) {
        throw std::invalid_argument("count_bounded_paths: start layer outside [-1, 2]");
    }
    if (m < 1) throw std::invalid_argument("count_bounded_paths: m must be >= 1");
    // counts[layer + 1] = number of suffix completions from that layer
    std::array<std::uint64_t, 4> counts{1, 1, 1, 1};
    for (unsigned step = 0; step < m; ++step) {
        std::array<std::uint64_t, 4> next{0, 0, 0, 0};
        for (int layer = detail::kDyckBandLow; layer <= detail::kDyckBandHigh; ++layer) {
            std::uint64_t total = 0;
            if (layer + 1 <= detail::kDyckBandHigh) total += counts[layer + 2];
            if (layer - 1 >= detail::kDyckBandLow) {
                if (__builtin_add_overflow(total, counts[layer], &total)) {
                    throw std::overflow_error("count_bounded_paths: 64-bit overflow");
                }
            }
            next[layer + 1] = total;
        }
        counts = next;
    }
    return counts[static_cast<std::size_t>(start_layer + 1)];
}

/// Smallest block length m whose bounded-path count from the boundary layer
/// reaches 2^s (the interior layer always offers at least as many paths).
inline unsigned min_block_length(unsigned s) {
    if (s < 1 || s > 62) throw std::invalid_argument("min_block_length: s must be in 1..62");
    const std::uint64_t need = std::uint64_t{1} << s;
    unsigned m = 1;
    while (fib(m + 1) < need) ++m;
    return m;
}

/// Block codebook for the bounded-Dyck-path code: 2^s paths of length m from
/// the boundary layer (2) and 2^s from the interior layer (1), each sorted
/// lexicographically as words (bit 1 = up-step). The layers -1 and 0 are
/// served by complementing these tables.
struct DyckCodebook {
    unsigned s = 0;
    unsigned m = 0;
    std::vector<Word> boundary_table;
    std::vector<Word> interior_table;

    /// Index of `w` in the given table, or -1 when absent. Tables are sorted,
    /// so lookup is a binary search.
    static std::int64_t table_index(const std::vector<Word>& table, const Word& w) {
        auto it = std::lower_bound(table.begin(), table.end(), w);
        if (it == table.end() || *it != w) return -1;
        return it - table.begin();
    }
};

namespace detail {

/// Emits bounded paths from `layer` in lexicographic word order until `limit`
/// entries are collected (lexicographic DFS visits 0-branches first).
inline void enumerate_bounded_paths(int layer, unsigned m, std::size_t limit,
                                    std::vector<std::uint8_t>& acc, std::vector<Word>& out) {
    if (out.size() == limit) return;
    if (acc.size() == m) {
        out.emplace_back(acc);
        return;
    }
    for (std::uint8_t b : {std::uint8_t{0}, std::uint8_t{1}}) {
        const int next = layer + (b ? 1 : -1);
        if (dyck_layer_ok(next)) {
            acc.push_back(b);
            enumerate_bounded_paths(next, m, limit, acc, out);
            acc.pop_back();
        }
    }
}

inline std::vector<Word> first_bounded_paths(int layer, unsigned m, std::size_t limit) {
    std::vector<Word> out;
    out.reserve(limit);
    std::vector<std::uint8_t> acc;
    acc.reserve(m);
    enumerate_bounded_paths(layer, m, limit, acc, out);
    return out;
}

} // namespace detail

inline DyckCodebook build_dyck_codebook(unsigned s) {
    if (s < 1 || s > 24) throw std::invalid_argument("build_dyck_codebook: s must be in 1..24");
    DyckCodebook cb;
    cb.s = s;
    cb.m = min_block_length(s);
    const std::size_t want = std::size_t{1} << s;
    cb.boundary_table = detail::first_bounded_paths(2, cb.m, want);
    cb.interior_table = detail::first_bounded_paths(1, cb.m, want);
    if (cb.boundary_table.size() != want || cb.interior_table.size() != want) {
        throw std::logic_error("build_dyck_codebook: table underfull");
    }
    return cb;
}

namespace detail {

// Mirrored levels (0 and -1) use the complement of the table entry selected by
// the complemented payload block, so that complementing message, start level
// and codeword together commutes with encoding.
inline Word dyck_block_for(const DyckCodebook& cb, int level, std::uint64_t block_value) {
    const std::uint64_t all = (std::uint64_t{1} << cb.s) - 1;
    switch (level) {
        case 2: return cb.boundary_table[block_value];
        case 1: return cb.interior_table[block_value];
        case -1: return complement(cb.boundary_table[all ^ block_value]);
        case 0: return complement(cb.interior_table[all ^ block_value]);
        default: throw std::logic_error("dyck_block_for: level outside [-1, 2]");
    }
}

inline std::uint64_t dyck_value_for(const DyckCodebook& cb, int level, const Word& block) {
    const std::uint64_t all = (std::uint64_t{1} << cb.s) - 1;
    std::int64_t idx;
    switch (level) {
        case 2: idx = DyckCodebook::table_index(cb.boundary_table, block); break;
        case 1: idx = DyckCodebook::table_index(cb.interior_table, block); break;
        case -1: idx = DyckCodebook::table_index(cb.boundary_table, complement(block)); break;
        case 0: idx = DyckCodebook::table_index(cb.interior_table, complement(block)); break;
        default: throw std::logic_error("dyck_value_for: level outside [-1, 2]");
    }
    if (idx < 0) {
        throw CorruptionError("decode_dyck: block " + block.str() + " not in the level-" +
                              std::to_string(level) + " table");
    }
    std::uint64_t v = static_cast<std::uint64_t>(idx);
    return (level == -1 || level == 0) ? (all ^ v) : v;
}

} // namespace detail

/// Encodes a payload whose length is a multiple of cb.s, starting from the
/// given running-sum level. The level after each block stays inside [-1, 2],
/// so the output (for start level 0) is strongly (4,1)-locally balanced.
inline Word encode_dyck_from(const Word& msg, const DyckCodebook& cb, int start_level) {
    if (!detail::dyck_layer_ok(start_level)) {
        throw std::invalid_argument("encode_dyck_from: start level outside [-1, 2]");
    }
    if (msg.size() % cb.s != 0) {
        throw FramingError("encode_dyck: payload length not a multiple of s");
    }
    std::vector<std::uint8_t> out;
    out.reserve((msg.size() / cb.s) * cb.m);
    int level = start_level;
    for (std::size_t p = 0; p < msg.size(); p += cb.s) {
        std::uint64_t value = 0;
        for (std::size_t i = 0; i < cb.s; ++i) value = (value << 1) | static_cast<std::uint64_t>(msg[p + i]);
        const Word block = detail::dyck_block_for(cb, level, value);
        out.insert(out.end(), block.begin(), block.end());
        level += 2 * static_cast<int>(weight(block)) - static_cast<int>(cb.m);
    }
    return Word(std::move(out));
}

inline Word encode_dyck(const Word& msg, const DyckCodebook& cb) {
    return encode_dyck_from(msg, cb, 0);
}

inline Word decode_dyck_from(const Word& code, const DyckCodebook& cb, int start_level) {
    if (!detail::dyck_layer_ok(start_level)) {
        throw std::invalid_argument("decode_dyck_from: start level outside [-1, 2]");
    }
    if (code.size() % cb.m != 0) {
        throw CorruptionError("decode_dyck: code length not a multiple of m");
    }
    std::vector<std::uint8_t> out;
    out.reserve((code.size() / cb.m) * cb.s);
    int level = start_level;
    for (std::size_t p = 0; p < code.size(); p += cb.m) {
        const Word block = window(code, p + 1, cb.m);
        const std::uint64_t value = detail::dyck_value_for(cb, level, block);
        for (std::size_t i = 0; i < cb.s; ++i) {
            out.push_back(static_cast<std::uint8_t>((value >> (cb.s - 1 - i)) & 1u));
        }
        level += 2 * static_cast<int>(weight(block)) - static_cast<int>(cb.m);
    }
    return Word(std::move(out));
}

inline Word decode_dyck(const Word& code, const DyckCodebook& cb) {
    return decode_dyck_from(code, cb, 0);
}

} // namespace lbc
