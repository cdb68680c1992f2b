#pragma once

#include <cstdint>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "lbc/bitio.hpp"
#include "lbc/errors.hpp"
#include "lbc/graph_codec.hpp"

namespace lbc {

// Codebook container, all integers big-endian:
//   "LBG1" | ell u16 | delta u16 | m u16 | s u16 | vertex count u64
//   | vertices, ceil(m/8) bytes each, bits MSB-first
//   | per vertex 2^s neighbor indices, u32 each

inline std::vector<std::uint8_t> serialize_graph_codebook(const GraphCodebook& cb) {
    std::vector<std::uint8_t> out{'L', 'B', 'G', '1'};
    detail::put_u16_be(out, static_cast<std::uint16_t>(cb.params.ell));
    detail::put_u16_be(out, static_cast<std::uint16_t>(cb.params.delta));
    detail::put_u16_be(out, static_cast<std::uint16_t>(cb.m));
    detail::put_u16_be(out, static_cast<std::uint16_t>(cb.s));
    detail::put_u64_be(out, cb.vertices.size());
    const std::size_t vertex_bytes = (cb.m + 7) / 8;
    for (auto code : cb.vertices) {
        // m bits, MSB-first, left-aligned in the byte span
        std::uint64_t padded = std::uint64_t{code} << (vertex_bytes * 8 - cb.m);
        for (std::size_t i = 0; i < vertex_bytes; ++i) {
            out.push_back(static_cast<std::uint8_t>((padded >> (8 * (vertex_bytes - 1 - i))) & 0xff));
        }
    }
    for (auto idx : cb.edge_maps) detail::put_u32_be(out, idx);
    return out;
}

inline GraphCodebook parse_graph_codebook(std::span<const std::uint8_t> in) {
    if (in.size() < 20 || in[0] != 'L' || in[1] != 'B' || in[2] != 'G' || in[3] != '1') {
        throw CorruptionError("codebook: bad magic");
    }
    const unsigned ell = detail::get_u16_be(in, 4);
    const unsigned delta = detail::get_u16_be(in, 6);
    const unsigned m = detail::get_u16_be(in, 8);
    const unsigned s = detail::get_u16_be(in, 10);
    const std::uint64_t count = detail::get_u64_be(in, 12);
    if (ell < 2 || ell % 2 != 0 || delta < 1 || m < ell - 1 || m > 28 || s > 24) {
        throw CorruptionError("codebook: malformed parameters");
    }
    const std::size_t vertex_bytes = (m + 7) / 8;
    const std::size_t fanout = std::size_t{1} << s;
    const std::size_t expect = 20 + count * vertex_bytes + count * fanout * 4;
    if (in.size() != expect) throw CorruptionError("codebook: truncated or oversized container");

    GraphCodebook cb;
    cb.s = s;
    cb.m = m;
    cb.params = ConstraintParams(ell, delta);
    cb.vertices.reserve(count);
    std::size_t at = 20;
    for (std::uint64_t v = 0; v < count; ++v) {
        std::uint64_t padded = 0;
        for (std::size_t i = 0; i < vertex_bytes; ++i) padded = (padded << 8) | in[at++];
        const std::uint64_t code = padded >> (vertex_bytes * 8 - m);
        if (padded & ((std::uint64_t{1} << (vertex_bytes * 8 - m)) - 1)) {
            throw CorruptionError("codebook: nonzero vertex padding bits");
        }
        if (!cb.vertices.empty() && code <= cb.vertices.back()) {
            throw CorruptionError("codebook: vertex list not strictly sorted");
        }
        cb.vertices.push_back(static_cast<std::uint32_t>(code));
    }
    if (count < fanout) throw CorruptionError("codebook: fewer vertices than 2^s");
    cb.edge_maps.reserve(count * fanout);
    for (std::uint64_t e = 0; e < count * fanout; ++e) {
        const std::uint32_t idx = detail::get_u32_be(in, at);
        at += 4;
        if (idx >= count) throw CorruptionError("codebook: neighbor index out of range");
        cb.edge_maps.push_back(idx);
    }
    return cb;
}

inline void save_graph_codebook(const GraphCodebook& cb, const std::string& path) {
    const auto bytes = serialize_graph_codebook(cb);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline GraphCodebook load_graph_codebook(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_graph_codebook(bytes);
}

} // namespace lbc
