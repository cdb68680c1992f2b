#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lbc/word.hpp"

namespace lbc {

namespace detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, unsigned n) {
    std::uint64_t out;
    if (__builtin_add_overflow(a, b, &out)) {
        throw std::overflow_error("count_lb: 64-bit overflow at n=" + std::to_string(n));
    }
    return out;
}

} // namespace detail

/// |Sigma^n(ell, delta)|: transfer dynamic programming whose state is the last
/// ell-1 bits; a transition is allowed when the window it completes has weight
/// in the band. Exact 64-bit arithmetic with overflow detection (for (6,1) the
/// counts stay in range up to roughly n = 85).
inline std::uint64_t count_lb(ConstraintParams p, unsigned n) {
    if (n < p.ell) return std::uint64_t{1} << n;
    const std::size_t states = std::size_t{1} << (p.ell - 1);
    const unsigned lo = p.low(), hi = p.high();
    std::vector<std::uint64_t> cnt(states, 1), next(states);
    for (unsigned len = p.ell - 1; len < n; ++len) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t st = 0; st < states; ++st) {
            if (cnt[st] == 0) continue;
            const unsigned w = static_cast<unsigned>(std::popcount(st));
            for (unsigned b = 0; b < 2; ++b) {
                if (w + b < lo || w + b > hi) continue;
                const std::size_t ns = ((st << 1) | b) & (states - 1);
                next[ns] = detail::checked_add(next[ns], cnt[st], len + 1);
            }
        }
        cnt.swap(next);
    }
    std::uint64_t total = 0;
    for (auto c : cnt) total = detail::checked_add(total, c, n);
    return total;
}

/// Independent oracle: enumerate all 2^n words and test each with the words
/// module. Capped at n <= 24.
inline std::uint64_t count_lb_bruteforce(ConstraintParams p, unsigned n) {
    if (n > 24) throw std::invalid_argument("count_lb_bruteforce: n capped at 24");
    std::uint64_t total = 0;
    std::vector<std::uint8_t> bits(n);
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
        for (unsigned i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>((code >> (n - 1 - i)) & 1u);
        if (is_locally_balanced(bits, p)) ++total;
    }
    return total;
}

/// f_n(z) for the (6,1) constraint: words of length n, prefixed by z, all of
/// whose 6-windows have weight in [2, 4]. Prefixes longer than n count an
/// empty set. The prefix is expanded to 5 bits (checking any windows it
/// already completes), then the transfer DP runs on the last-5-bits state.
inline std::uint64_t count_with_prefix(unsigned n, const Word& z) {
    static const ConstraintParams p61{6, 1};
    const std::size_t L = z.size();
    if (L > n) return 0;
    if (n < 6) return std::uint64_t{1} << (n - L);

    constexpr std::size_t states = 32;  // last 5 bits
    std::vector<std::uint64_t> cnt(states, 0);
    const unsigned t = std::max<unsigned>(static_cast<unsigned>(L), 5);
    const unsigned free_bits = t - static_cast<unsigned>(L);
    std::vector<std::uint8_t> bits(t);
    for (std::size_t i = 0; i < L; ++i) bits[i] = static_cast<std::uint8_t>(z[i]);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << free_bits); ++v) {
        for (unsigned i = 0; i < free_bits; ++i) {
            bits[L + i] = static_cast<std::uint8_t>((v >> (free_bits - 1 - i)) & 1u);
        }
        if (!is_locally_balanced(bits, p61)) continue;
        std::size_t st = 0;
        for (unsigned i = t - 5; i < t; ++i) st = (st << 1) | bits[i];
        cnt[st] = detail::checked_add(cnt[st], 1, t);
    }

    std::vector<std::uint64_t> next(states);
    for (unsigned len = t; len < n; ++len) {
        std::fill(next.begin(), next.end(), 0);
        for (std::size_t st = 0; st < states; ++st) {
            if (cnt[st] == 0) continue;
            const unsigned w = static_cast<unsigned>(std::popcount(st));
            for (unsigned b = 0; b < 2; ++b) {
                if (w + b < 2 || w + b > 4) continue;
                const std::size_t ns = ((st << 1) | b) & (states - 1);
                next[ns] = detail::checked_add(next[ns], cnt[st], len + 1);
            }
        }
        cnt.swap(next);
    }
    std::uint64_t total = 0;
    for (auto c : cnt) total = detail::checked_add(total, c, n);
    return total;
}

/// f_n(s, t) for the (6,1) constraint: words whose first s bits have weight t.
/// Sums count_with_prefix over the weight-t prefixes; s is kept small enough
/// for that enumeration to stay cheap.
inline std::uint64_t count_with_prefix_weight(unsigned n, unsigned s, unsigned t) {
    if (t > s || s > n) throw std::invalid_argument("count_with_prefix_weight: need t <= s <= n");
    if (s > 20) throw std::invalid_argument("count_with_prefix_weight: s capped at 20");
    std::uint64_t total = 0;
    std::vector<std::uint8_t> bits(s);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << s); ++v) {
        if (static_cast<unsigned>(std::popcount(v)) != t) continue;
        for (unsigned i = 0; i < s; ++i) bits[i] = static_cast<std::uint8_t>((v >> (s - 1 - i)) & 1u);
        total = detail::checked_add(total, count_with_prefix(n, Word(bits)), n);
    }
    return total;
}

/// One verified identity instance; lhs/rhs are signed since several identities
/// difference counts.
struct IdentityCheck {
    std::string identity;
    unsigned n = 0;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
    bool pass = false;
};

struct VerificationReport {
    std::vector<IdentityCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }

    std::vector<const IdentityCheck*> failures() const {
        std::vector<const IdentityCheck*> out;
        for (const auto& c : checks) {
            if (!c.pass) out.push_back(&c);
        }
        return out;
    }
};

/// Checks f_{n+12} = f_{n+11} + f_{n+10} + f_{n+9} - f_{n+6} - f_{n+4} - f_{n+3} + f_n
/// for every 1 <= n <= n_max with exact integers. `fault_n`, when nonzero,
/// perturbs the left side at that n; it exists so failure reporting can be
/// exercised end to end.
inline VerificationReport verify_recurrence(unsigned n_max, unsigned fault_n = 0) {
    if (n_max < 1) throw std::invalid_argument("verify_recurrence: n_max must be >= 1");
    const ConstraintParams p{6, 1};
    std::vector<std::int64_t> f(n_max + 13);
    for (unsigned n = 0; n < f.size(); ++n) f[n] = static_cast<std::int64_t>(count_lb(p, n));
    VerificationReport report;
    for (unsigned n = 1; n <= n_max; ++n) {
        IdentityCheck c;
        c.identity = "recurrence";
        c.n = n;
        c.lhs = f[n + 12] + (n == fault_n ? 1 : 0);
        c.rhs = f[n + 11] + f[n + 10] + f[n + 9] - f[n + 6] - f[n + 4] - f[n + 3] + f[n];
        c.pass = c.lhs == c.rhs;
        report.checks.push_back(std::move(c));
    }
    return report;
}

/// Checks the prefix-count identities behind the recurrence, plus the five
/// numbered equations of its derivation, for every 1 <= n <= n_max.
inline VerificationReport verify_lemmas(unsigned n_max) {
    if (n_max < 1) throw std::invalid_argument("verify_lemmas: n_max must be >= 1");
    const ConstraintParams p{6, 1};
    const auto F = [&](unsigned n) { return static_cast<std::int64_t>(count_lb(p, n)); };
    const auto P = [&](unsigned n, const char* z) {
        return static_cast<std::int64_t>(count_with_prefix(n, Word::from_string(z)));
    };

    VerificationReport report;
    const auto add = [&](const char* name, unsigned n, std::int64_t lhs, std::int64_t rhs) {
        report.checks.push_back({name, n, lhs, rhs, lhs == rhs});
    };

    for (unsigned n = 1; n <= n_max; ++n) {
        add("lemma2:f_n=f_{n+3}(000)+f_{n+3}(111)", n, F(n), P(n + 3, "000") + P(n + 3, "111"));
        add("lemma2:f_n=f_{n+4}(1000)+f_{n+4}(0111)", n, F(n), P(n + 4, "1000") + P(n + 4, "0111"));
        add("lemma3:f_{n+2}(110)=f_n(0)-f_n(0111)", n, P(n + 2, "110"), P(n, "0") - P(n, "0111"));
        add("lemma3:f_{n+2}(001)=f_n(1)-f_n(1000)", n, P(n + 2, "001"), P(n, "1") - P(n, "1000"));
        add("lemma4:f_{n+4}(0000)=f_n(11)", n, P(n + 4, "0000"), P(n, "11"));
        add("lemma4:f_{n+4}(1111)=f_n(00)", n, P(n + 4, "1111"), P(n, "00"));
        add("lemma5:sum-difference", n, F(n + 3) - F(n + 2) - F(n + 1) - F(n),
            -P(n + 1, "0000") - P(n + 1, "1111") - P(n, "000") - P(n, "111"));
        add("eq1", n, P(n + 4, "0111") + P(n + 4, "1000"), F(n));
        add("eq2", n, P(n + 6, "110") + P(n + 6, "001"), F(n + 4) - F(n));
        add("eq3", n, P(n + 6, "110") + P(n + 6, "001") + P(n + 6, "111") + P(n + 6, "000"),
            F(n + 4) + F(n + 3) - F(n));
        add("eq4", n, P(n + 9, "000") + P(n + 9, "111"),
            P(n + 6, "01") + P(n + 6, "10") + F(n + 4) + F(n + 3) - F(n));
        add("eq5", n, P(n + 10, "0000") + P(n + 10, "1111") + P(n + 9, "000") + P(n + 9, "111"),
            F(n + 6) + F(n + 4) + F(n + 3) - F(n));
    }
    return report;
}

/// f_{n+1} / f_n as a double; approaches 2^C(ell, delta) for large n.
inline double growth_estimate(ConstraintParams p, unsigned n) {
    if (n < p.ell) throw std::invalid_argument("growth_estimate: n must be >= ell");
    const auto fn = count_lb(p, n);
    const auto fn1 = count_lb(p, n + 1);
    return static_cast<double>(fn1) / static_cast<double>(fn);
}

} // namespace lbc
