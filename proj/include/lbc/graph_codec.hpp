#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lbc/errors.hpp"
#include "lbc/word.hpp"

namespace lbc {

/// Directed graph over m-bit words with edges determined per (suffix, prefix)
/// class: u -> v exists iff compat[last ell-1 bits of u][first ell-1 bits of v].
/// For block-concatenation graphs the class table encodes validity of the
/// windows crossing the block boundary; every vertex is itself a valid block,
/// so pairwise compatibility decides the whole 2m-bit concatenation.
///
/// Vertices are stored as sorted most-significant-bit-first codes, so index
/// order, lexicographic word order and numeric order all coincide.
class ConstraintGraph {
public:
    ConstraintGraph(unsigned m, ConstraintParams params, std::vector<std::uint32_t> vertex_codes,
                    std::vector<std::uint64_t> compat_rows)
        : m_(m),
          params_(params),
          class_bits_(params.ell - 1),
          vertices_(std::move(vertex_codes)),
          compat_(std::move(compat_rows)) {
        if (m_ < class_bits_) throw std::invalid_argument("ConstraintGraph: m must be >= ell - 1");
        if (compat_.size() != num_classes() * row_words()) {
            throw std::invalid_argument("ConstraintGraph: compat table size mismatch");
        }
        if (!std::is_sorted(vertices_.begin(), vertices_.end())) {
            throw std::invalid_argument("ConstraintGraph: vertex codes must be sorted");
        }
    }

    unsigned block_length() const { return m_; }
    const ConstraintParams& params() const { return params_; }
    std::size_t size() const { return vertices_.size(); }
    const std::vector<std::uint32_t>& vertex_codes() const { return vertices_; }

    std::size_t num_classes() const { return std::size_t{1} << class_bits_; }
    std::size_t row_words() const { return (num_classes() + 63) / 64; }

    Word vertex_word(std::size_t i) const { return Word::from_value(vertices_[i], m_); }

    std::uint32_t prefix_class(std::size_t i) const {
        return vertices_[i] >> (m_ - class_bits_);
    }
    std::uint32_t suffix_class(std::size_t i) const {
        return vertices_[i] & ((std::uint32_t{1} << class_bits_) - 1);
    }

    bool classes_compatible(std::uint32_t suffix, std::uint32_t prefix) const {
        return (compat_[suffix * row_words() + prefix / 64] >> (prefix % 64)) & 1u;
    }

    bool has_edge(std::size_t u, std::size_t v) const {
        return classes_compatible(suffix_class(u), prefix_class(v));
    }

    std::size_t out_degree(std::size_t u) const {
        const auto counts = prefix_class_counts();
        return degree_of_suffix_class(suffix_class(u), counts);
    }

    /// Sorted indices of the out-neighbors of vertex u.
    std::vector<std::uint32_t> out_neighbors(std::size_t u) const {
        std::vector<std::uint32_t> out;
        const std::uint32_t sc = suffix_class(u);
        for (std::size_t v = 0; v < vertices_.size(); ++v) {
            if (classes_compatible(sc, prefix_class(v))) out.push_back(static_cast<std::uint32_t>(v));
        }
        return out;
    }

    /// Materialized adjacency; intended for small graphs and for handing the
    /// structure to generic algorithms such as power iteration.
    std::vector<std::vector<std::uint32_t>> adjacency_lists() const {
        std::vector<std::vector<std::uint32_t>> adj(vertices_.size());
        for (std::size_t u = 0; u < vertices_.size(); ++u) adj[u] = out_neighbors(u);
        return adj;
    }

    /// The vertex-induced subgraph on `keep` (indices into this graph).
    ConstraintGraph induced(const std::vector<std::uint32_t>& keep) const {
        std::vector<std::uint32_t> codes;
        codes.reserve(keep.size());
        for (auto i : keep) codes.push_back(vertices_[i]);
        return ConstraintGraph(m_, params_, std::move(codes), compat_);
    }

    std::vector<std::size_t> prefix_class_counts() const {
        std::vector<std::size_t> counts(num_classes(), 0);
        for (std::size_t v = 0; v < vertices_.size(); ++v) ++counts[prefix_class(v)];
        return counts;
    }

    std::size_t degree_of_suffix_class(std::uint32_t sc, const std::vector<std::size_t>& counts) const {
        std::size_t total = 0;
        const std::uint64_t* row = compat_.data() + sc * row_words();
        for (std::size_t w = 0; w < row_words(); ++w) {
            std::uint64_t bits = row[w];
            while (bits) {
                total += counts[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))];
                bits &= bits - 1;
            }
        }
        return total;
    }

private:
    unsigned m_;
    ConstraintParams params_;
    unsigned class_bits_;
    std::vector<std::uint32_t> vertices_;
    std::vector<std::uint64_t> compat_;  // num_classes rows of row_words() words
};

namespace detail {

inline bool word_locally_balanced(std::uint64_t code, unsigned n, ConstraintParams p) {
    if (n < p.ell) return true;
    const int lo = static_cast<int>(p.ell / 2) - static_cast<int>(p.delta);
    const int hi = static_cast<int>(p.ell / 2) + static_cast<int>(p.delta);
    const std::uint64_t mask = (std::uint64_t{1} << p.ell) - 1;
    int w = std::popcount((code >> (n - p.ell)) & mask);
    if (w < lo || w > hi) return false;
    for (unsigned i = 1; i + p.ell <= n; ++i) {
        const unsigned shift = n - p.ell - i;
        w -= static_cast<int>((code >> (shift + p.ell)) & 1u);
        w += static_cast<int>((code >> shift) & 1u);
        if (w < lo || w > hi) return false;
    }
    return true;
}

/// Compatibility of (suffix class, prefix class): all ell-windows of the
/// 2(ell-1)-bit concatenation must be in the weight band. These are exactly
/// the windows that cross a block boundary.
inline std::vector<std::uint64_t> boundary_compat_table(ConstraintParams p) {
    const unsigned cb = p.ell - 1;
    const std::size_t classes = std::size_t{1} << cb;
    const std::size_t row_words = (classes + 63) / 64;
    std::vector<std::uint64_t> compat(classes * row_words, 0);
    for (std::uint64_t sc = 0; sc < classes; ++sc) {
        for (std::uint64_t pc = 0; pc < classes; ++pc) {
            const std::uint64_t joined = (sc << cb) | pc;
            if (word_locally_balanced(joined, 2 * cb, p)) {
                compat[sc * row_words + pc / 64] |= std::uint64_t{1} << (pc % 64);
            }
        }
    }
    return compat;
}

} // namespace detail

/// Block-concatenation graph: vertices are the (ell,delta)-locally balanced
/// m-bit words, with u -> v iff the 2m-bit concatenation uv is balanced.
/// Words that are not themselves balanced can never carry an edge and are
/// dropped up front.
inline ConstraintGraph build_graph(ConstraintParams p, unsigned m) {
    if (m < p.ell - 1) throw std::invalid_argument("build_graph: m must be >= ell - 1");
    if (m > 28) throw std::invalid_argument("build_graph: m larger than 28 is not supported");
    std::vector<std::uint32_t> verts;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << m); ++code) {
        if (detail::word_locally_balanced(code, m, p)) verts.push_back(static_cast<std::uint32_t>(code));
    }
    return ConstraintGraph(m, p, std::move(verts), detail::boundary_compat_table(p));
}

struct SubgraphResult {
    ConstraintGraph subgraph;
    unsigned s = 0;
    bool found = false;  // false: even the out-degree >= 1 core is empty
};

namespace detail {

/// Deletes every vertex whose out-degree drops below `threshold` until a
/// fixpoint. Vertices sharing a suffix class share their out-degree, so the
/// cascade works on classes: class degrees are kept incrementally via the
/// transposed compatibility table.
inline std::vector<std::uint32_t> peel_to_core(const ConstraintGraph& g, std::size_t threshold) {
    const std::size_t classes = g.num_classes();
    const std::size_t row_words = g.row_words();

    // group vertices by suffix class
    std::vector<std::vector<std::uint32_t>> by_suffix(classes);
    for (std::size_t v = 0; v < g.size(); ++v) by_suffix[g.suffix_class(v)].push_back(static_cast<std::uint32_t>(v));

    auto counts = g.prefix_class_counts();
    std::vector<std::size_t> degree(classes);
    for (std::size_t sc = 0; sc < classes; ++sc) {
        degree[sc] = g.degree_of_suffix_class(static_cast<std::uint32_t>(sc), counts);
    }

    // transpose: for a prefix class pc, which suffix classes see it
    std::vector<std::uint64_t> compat_t(classes * row_words, 0);
    for (std::uint32_t sc = 0; sc < classes; ++sc) {
        for (std::uint32_t pc = 0; pc < classes; ++pc) {
            if (g.classes_compatible(sc, pc)) {
                compat_t[pc * row_words + sc / 64] |= std::uint64_t{1} << (sc % 64);
            }
        }
    }

    std::vector<bool> cls_dead(classes, false);
    std::vector<std::uint32_t> stack;
    for (std::size_t sc = 0; sc < classes; ++sc) {
        if (!by_suffix[sc].empty() && degree[sc] < threshold) {
            cls_dead[sc] = true;
            stack.push_back(static_cast<std::uint32_t>(sc));
        }
    }

    std::vector<std::size_t> delta(classes, 0);
    while (!stack.empty()) {
        const std::uint32_t sc = stack.back();
        stack.pop_back();
        std::vector<std::uint32_t> touched;
        for (auto v : by_suffix[sc]) {
            const auto pc = g.prefix_class(v);
            if (delta[pc]++ == 0) touched.push_back(pc);
        }
        by_suffix[sc].clear();
        for (auto pc : touched) {
            const std::size_t d = delta[pc];
            delta[pc] = 0;
            counts[pc] -= d;
            const std::uint64_t* row = compat_t.data() + std::size_t{pc} * row_words;
            for (std::size_t w = 0; w < row_words; ++w) {
                std::uint64_t bits = row[w];
                while (bits) {
                    const std::size_t sc2 = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
                    bits &= bits - 1;
                    degree[sc2] -= d;
                    if (!cls_dead[sc2] && !by_suffix[sc2].empty() && degree[sc2] < threshold) {
                        cls_dead[sc2] = true;
                        stack.push_back(static_cast<std::uint32_t>(sc2));
                    }
                }
            }
        }
    }

    std::vector<std::uint32_t> kept;
    for (std::size_t sc = 0; sc < classes; ++sc) {
        kept.insert(kept.end(), by_suffix[sc].begin(), by_suffix[sc].end());
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

} // namespace detail

/// Largest s such that iterative deletion of vertices with out-degree < 2^s
/// leaves a nonempty subgraph; starts from s = floor(log2(max out-degree))
/// and decrements on failure. The surviving subgraph is the maximal one with
/// min out-degree >= 2^s, so the greedy deletion order does not matter.
inline SubgraphResult find_max_subgraph(const ConstraintGraph& g) {
    if (g.size() == 0) return {g, 0, false};

    const auto counts = g.prefix_class_counts();
    std::size_t max_degree = 0;
    for (std::size_t v = 0; v < g.size(); ++v) {
        max_degree = std::max(max_degree, g.degree_of_suffix_class(g.suffix_class(v), counts));
    }
    if (max_degree == 0) return {g.induced({}), 0, false};

    int s = std::bit_width(max_degree) - 1;  // floor(log2)
    for (; s >= 0; --s) {
        auto kept = detail::peel_to_core(g, std::size_t{1} << s);
        if (!kept.empty()) {
            return {g.induced(kept), static_cast<unsigned>(s), true};
        }
    }
    return {g.induced({}), 0, false};
}

/// Encode/decode tables drawn from a pruned subgraph: the 2^s lexicographically
/// smallest vertices seed the first block, and each vertex maps payload values
/// onto its 2^s smallest out-neighbors.
struct GraphCodebook {
    unsigned s = 0;
    unsigned m = 0;
    ConstraintParams params{2, 1};
    std::vector<std::uint32_t> vertices;   // sorted m-bit codes, all subgraph vertices
    std::vector<std::uint32_t> edge_maps;  // vertices.size() rows of 2^s sorted vertex indices

    std::size_t fanout() const { return std::size_t{1} << s; }

    std::int64_t vertex_index(std::uint32_t code) const {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), code);
        if (it == vertices.end() || *it != code) return -1;
        return it - vertices.begin();
    }

    std::span<const std::uint32_t> edge_row(std::size_t vertex) const {
        return {edge_maps.data() + vertex * fanout(), fanout()};
    }
};

inline GraphCodebook build_graph_codebook(const ConstraintGraph& subgraph, unsigned s) {
    const std::size_t fanout = std::size_t{1} << s;
    GraphCodebook cb;
    cb.s = s;
    cb.m = subgraph.block_length();
    cb.params = subgraph.params();
    cb.vertices = subgraph.vertex_codes();
    if (cb.vertices.size() < fanout) {
        throw std::invalid_argument("build_graph_codebook: fewer than 2^s vertices");
    }
    cb.edge_maps.reserve(cb.vertices.size() * fanout);
    for (std::size_t u = 0; u < cb.vertices.size(); ++u) {
        const std::uint32_t sc = static_cast<std::uint32_t>(cb.vertices[u]) &
                                 ((std::uint32_t{1} << (cb.params.ell - 1)) - 1);
        std::size_t taken = 0;
        for (std::size_t v = 0; v < cb.vertices.size() && taken < fanout; ++v) {
            if (subgraph.classes_compatible(sc, subgraph.prefix_class(v))) {
                cb.edge_maps.push_back(static_cast<std::uint32_t>(v));
                ++taken;
            }
        }
        if (taken < fanout) {
            throw std::invalid_argument("build_graph_codebook: vertex with out-degree below 2^s");
        }
    }
    return cb;
}

/// Encodes a payload whose length is a multiple of cb.s; the first block picks
/// a starting vertex, each further block follows an enabled edge, and the
/// output is the concatenation of the visited m-bit blocks.
inline Word encode_graph(const Word& msg, const GraphCodebook& cb) {
    if (msg.size() % cb.s != 0) {
        throw FramingError("encode_graph: payload length not a multiple of s");
    }
    std::vector<std::uint8_t> out;
    out.reserve(msg.size() / cb.s * cb.m);
    std::size_t current = 0;
    bool first = true;
    for (std::size_t p = 0; p < msg.size(); p += cb.s) {
        std::uint64_t value = 0;
        for (std::size_t i = 0; i < cb.s; ++i) value = (value << 1) | static_cast<std::uint64_t>(msg[p + i]);
        current = first ? static_cast<std::size_t>(value)
                        : static_cast<std::size_t>(cb.edge_row(current)[value]);
        first = false;
        const std::uint32_t code = cb.vertices[current];
        for (unsigned i = 0; i < cb.m; ++i) {
            out.push_back(static_cast<std::uint8_t>((code >> (cb.m - 1 - i)) & 1u));
        }
    }
    return Word(std::move(out));
}

inline Word decode_graph(const Word& code, const GraphCodebook& cb) {
    if (code.size() % cb.m != 0) {
        throw CorruptionError("decode_graph: code length not a multiple of m");
    }
    std::vector<std::uint8_t> out;
    out.reserve(code.size() / cb.m * cb.s);
    std::size_t previous = 0;
    bool first = true;
    for (std::size_t p = 0; p < code.size(); p += cb.m) {
        std::uint32_t block = 0;
        for (unsigned i = 0; i < cb.m; ++i) block = (block << 1) | static_cast<std::uint32_t>(code[p + i]);
        const std::int64_t idx = cb.vertex_index(block);
        if (idx < 0) {
            throw CorruptionError("decode_graph: block is not a codebook vertex");
        }
        std::uint64_t value;
        if (first) {
            if (static_cast<std::size_t>(idx) >= cb.fanout()) {
                throw CorruptionError("decode_graph: first block outside the initial map");
            }
            value = static_cast<std::uint64_t>(idx);
        } else {
            const auto row = cb.edge_row(previous);
            auto it = std::lower_bound(row.begin(), row.end(), static_cast<std::uint32_t>(idx));
            if (it == row.end() || *it != static_cast<std::uint32_t>(idx)) {
                throw CorruptionError("decode_graph: block is not an enabled neighbor");
            }
            value = static_cast<std::uint64_t>(it - row.begin());
        }
        first = false;
        previous = static_cast<std::size_t>(idx);
        for (std::size_t i = 0; i < cb.s; ++i) {
            out.push_back(static_cast<std::uint8_t>((value >> (cb.s - 1 - i)) & 1u));
        }
    }
    return Word(std::move(out));
}

/// Runs find_max_subgraph for every m in [m_min, m_max]; (m, s) per block length.
inline std::vector<std::pair<unsigned, unsigned>> scan_block_lengths(ConstraintParams p,
                                                                     unsigned m_min, unsigned m_max) {
    if (m_min < p.ell - 1 || m_min > m_max) {
        throw std::invalid_argument("scan_block_lengths: need ell - 1 <= m_min <= m_max");
    }
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned m = m_min; m <= m_max; ++m) {
        const auto result = find_max_subgraph(build_graph(p, m));
        out.emplace_back(m, result.found ? result.s : 0);
    }
    return out;
}

struct SearchResult {
    unsigned m = 0;
    unsigned s = 0;
    GraphCodebook codebook;
};

/// Picks the block length with the best rate s(m)/m (ties: smallest m) and
/// builds its codebook. Fails when no m in range supports even one payload bit.
inline SearchResult search_best_block(ConstraintParams p, unsigned m_min, unsigned m_max) {
    const auto scans = scan_block_lengths(p, m_min, m_max);
    unsigned best_m = 0, best_s = 0;
    for (const auto& [m, s] : scans) {
        if (s >= 1 && (best_m == 0 || std::uint64_t{s} * best_m > std::uint64_t{best_s} * m)) {
            best_m = m;
            best_s = s;
        }
    }
    if (best_m == 0) {
        throw std::runtime_error("search_best_block: no block length in range admits a code");
    }
    const auto result = find_max_subgraph(build_graph(p, best_m));
    return {best_m, best_s, build_graph_codebook(result.subgraph, result.s)};
}

} // namespace lbc
