#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lbc {

/// A finite binary word (x_1, ..., x_n). Immutable value type; bit positions
/// are 1-based to match the usual constrained-coding conventions.
class Word {
public:
    Word() = default;

    explicit Word(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        for (auto b : bits_) {
            if (b > 1) throw std::invalid_argument("Word: symbols must be 0 or 1");
        }
    }

    /// Parses "0110"-style strings.
    static Word from_string(std::string_view s) {
        std::vector<std::uint8_t> bits;
        bits.reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1') throw std::invalid_argument("Word: expected '0' or '1'");
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        }
        return Word(std::move(bits));
    }

    /// The n-bit word whose most-significant-bit-first value equals `value`.
    static Word from_value(std::uint64_t value, std::size_t n) {
        if (n > 64) throw std::invalid_argument("Word: from_value supports at most 64 bits");
        if (n < 64 && (value >> n) != 0) throw std::invalid_argument("Word: value does not fit in n bits");
        std::vector<std::uint8_t> bits(n);
        for (std::size_t i = 0; i < n; ++i) {
            bits[i] = static_cast<std::uint8_t>((value >> (n - 1 - i)) & 1u);
        }
        return Word(std::move(bits));
    }

    static Word zeros(std::size_t n) { return Word(std::vector<std::uint8_t>(n, 0)); }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    /// x_i with 1 <= i <= n.
    int bit(std::size_t i) const {
        if (i < 1 || i > bits_.size()) throw std::out_of_range("Word::bit: index outside 1..n");
        return bits_[i - 1];
    }

    /// 0-based unchecked access.
    int operator[](std::size_t i) const { return bits_[i]; }

    std::span<const std::uint8_t> bits() const { return bits_; }

    auto begin() const { return bits_.begin(); }
    auto end() const { return bits_.end(); }

    /// Most-significant-bit-first integer value; requires n <= 64.
    std::uint64_t value() const {
        if (bits_.size() > 64) throw std::overflow_error("Word::value: word longer than 64 bits");
        std::uint64_t v = 0;
        for (auto b : bits_) v = (v << 1) | b;
        return v;
    }

    std::string str() const {
        std::string s;
        s.reserve(bits_.size());
        for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
        return s;
    }

    friend Word operator+(const Word& a, const Word& b) {
        std::vector<std::uint8_t> bits;
        bits.reserve(a.size() + b.size());
        bits.insert(bits.end(), a.bits_.begin(), a.bits_.end());
        bits.insert(bits.end(), b.bits_.begin(), b.bits_.end());
        return Word(std::move(bits));
    }

    bool operator==(const Word&) const = default;
    auto operator<=>(const Word&) const = default;  // lexicographic, 0 < 1

private:
    std::vector<std::uint8_t> bits_;
};

/// Window length / imbalance bound pair (ell, delta); ell must be even.
struct ConstraintParams {
    unsigned ell;
    unsigned delta;

    ConstraintParams(unsigned ell_, unsigned delta_) : ell(ell_), delta(delta_) {
        if (ell < 2 || ell % 2 != 0) throw std::invalid_argument("ConstraintParams: ell must be even and >= 2");
        if (delta < 1) throw std::invalid_argument("ConstraintParams: delta must be >= 1");
    }

    unsigned low() const { return ell / 2 > delta ? ell / 2 - delta : 0; }
    unsigned high() const { return ell / 2 + delta; }
};

/// Running digital sum s_0..s_n of a word (s_0 = 0, bit 1 steps +1, bit 0 steps -1).
struct RdsSequence {
    std::vector<int> values;

    std::size_t word_length() const { return values.size() - 1; }
    int back() const { return values.back(); }
};

inline std::size_t weight(std::span<const std::uint8_t> bits) {
    return std::accumulate(bits.begin(), bits.end(), std::size_t{0});
}

inline std::size_t weight(const Word& w) { return weight(w.bits()); }

/// The subword (x_i, ..., x_{i+ell-1}), 1-based i.
inline Word window(const Word& w, std::size_t i, std::size_t ell) {
    if (ell < 1 || i < 1 || i + ell - 1 > w.size()) {
        throw std::out_of_range("window: subword outside 1..n");
    }
    auto b = w.bits();
    return Word(std::vector<std::uint8_t>(b.begin() + (i - 1), b.begin() + (i - 1 + ell)));
}

inline RdsSequence rds(const Word& w) {
    RdsSequence r;
    r.values.reserve(w.size() + 1);
    int s = 0;
    r.values.push_back(0);
    for (auto b : w.bits()) {
        s += b ? 1 : -1;
        r.values.push_back(s);
    }
    return r;
}

/// Gap between the largest and smallest running digital sum entries.
inline int dis(const Word& w) {
    int s = 0, lo = 0, hi = 0;
    for (auto b : w.bits()) {
        s += b ? 1 : -1;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    return hi - lo;
}

/// True iff every length-ell window has weight in [ell/2 - delta, ell/2 + delta].
/// Words shorter than ell have no windows and pass vacuously.
inline bool is_locally_balanced(std::span<const std::uint8_t> bits, ConstraintParams p) {
    const std::size_t n = bits.size();
    if (n < p.ell) return true;
    const int lo = static_cast<int>(p.ell / 2) - static_cast<int>(p.delta);
    const int hi = static_cast<int>(p.ell / 2) + static_cast<int>(p.delta);
    int w = 0;
    for (std::size_t i = 0; i < p.ell; ++i) w += bits[i];
    if (w < lo || w > hi) return false;
    for (std::size_t i = p.ell; i < n; ++i) {
        w += bits[i] - bits[i - p.ell];
        if (w < lo || w > hi) return false;
    }
    return true;
}

inline bool is_locally_balanced(const Word& w, ConstraintParams p) {
    return is_locally_balanced(w.bits(), p);
}

/// True iff the word is (ell', delta)-locally balanced for every even ell' >= ell.
/// Checks each window length directly from prefix sums; this keeps the function
/// usable as an oracle independent of the dis() shortcut.
inline bool is_strongly_locally_balanced(std::span<const std::uint8_t> bits, ConstraintParams p) {
    const std::size_t n = bits.size();
    std::vector<std::uint32_t> pre(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) pre[i + 1] = pre[i] + bits[i];
    for (std::size_t lp = p.ell; lp <= n; lp += 2) {
        const int lo = static_cast<int>(lp / 2) - static_cast<int>(p.delta);
        const int hi = static_cast<int>(lp / 2) + static_cast<int>(p.delta);
        for (std::size_t i = 0; i + lp <= n; ++i) {
            const int w = static_cast<int>(pre[i + lp] - pre[i]);
            if (w < lo || w > hi) return false;
        }
    }
    return true;
}

inline bool is_strongly_locally_balanced(const Word& w, ConstraintParams p) {
    return is_strongly_locally_balanced(w.bits(), p);
}

inline Word complement(const Word& w) {
    std::vector<std::uint8_t> bits(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) bits[i] = static_cast<std::uint8_t>(1 - w[i]);
    return Word(std::move(bits));
}

} // namespace lbc
