#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lbc/bitio.hpp"
#include "lbc/dyck_codec.hpp"
#include "lbc/errors.hpp"
#include "lbc/fsm_codec.hpp"
#include "lbc/graph_codec.hpp"
#include "lbc/word.hpp"

namespace lbc {

enum class Scheme : std::uint8_t {
    Dyck = 1,
    Fsm = 2,
    Graph = 3,
};

/// 19-byte frame header preceding every coded stream:
///   "LBC1" | scheme u8 | ell u8 | delta u8 | s u16 BE | m u16 BE
///   | payload bit length u64 BE
/// s and m are zero where the scheme does not parameterize them; the payload
/// bit length is authoritative, padding never reaches the decoded output.
struct FrameHeader {
    static constexpr std::size_t kSize = 19;

    Scheme scheme = Scheme::Dyck;
    std::uint8_t ell = 0;
    std::uint8_t delta = 0;
    std::uint16_t s = 0;
    std::uint16_t m = 0;
    std::uint64_t payload_bits = 0;

    std::vector<std::uint8_t> to_bytes() const {
        std::vector<std::uint8_t> out{'L', 'B', 'C', '1'};
        out.push_back(static_cast<std::uint8_t>(scheme));
        out.push_back(ell);
        out.push_back(delta);
        detail::put_u16_be(out, s);
        detail::put_u16_be(out, m);
        detail::put_u64_be(out, payload_bits);
        return out;
    }

    static FrameHeader from_bytes(std::span<const std::uint8_t> in) {
        if (in.size() < kSize || in[0] != 'L' || in[1] != 'B' || in[2] != 'C' || in[3] != '1') {
            throw FramingError("frame: bad magic");
        }
        FrameHeader h;
        if (in[4] < 1 || in[4] > 3) throw FramingError("frame: unknown scheme byte");
        h.scheme = static_cast<Scheme>(in[4]);
        h.ell = in[5];
        h.delta = in[6];
        h.s = detail::get_u16_be(in, 7);
        h.m = detail::get_u16_be(in, 9);
        h.payload_bits = detail::get_u64_be(in, 11);
        return h;
    }
};

namespace detail {

inline Word zero_pad_to_multiple(const Word& bits, std::size_t block) {
    const std::size_t rem = bits.size() % block;
    if (rem == 0) return bits;
    return bits + Word::zeros(block - rem);
}

} // namespace detail

/// Frames and encodes raw bytes with the Dyck block code for payload size s.
inline std::vector<std::uint8_t> encode_frame_dyck(std::span<const std::uint8_t> input,
                                                   const DyckCodebook& cb) {
    const Word payload = bits_from_bytes(input);
    const Word padded = detail::zero_pad_to_multiple(payload, cb.s);
    const Word coded = encode_dyck(padded, cb);
    FrameHeader h;
    h.scheme = Scheme::Dyck;
    h.ell = 4;
    h.delta = 1;
    h.s = static_cast<std::uint16_t>(cb.s);
    h.m = static_cast<std::uint16_t>(cb.m);
    h.payload_bits = payload.size();
    auto out = h.to_bytes();
    const auto coded_bytes = bytes_from_bits(coded);
    out.insert(out.end(), coded_bytes.begin(), coded_bytes.end());
    return out;
}

inline std::vector<std::uint8_t> encode_frame_fsm(std::span<const std::uint8_t> input,
                                                  const FsmTable& table) {
    const Word payload = bits_from_bytes(input);
    const Word padded = detail::zero_pad_to_multiple(payload, 2);
    const Word coded = encode_fsm(padded, table);
    FrameHeader h;
    h.scheme = Scheme::Fsm;
    h.ell = 4;
    h.delta = 1;
    h.payload_bits = payload.size();
    auto out = h.to_bytes();
    const auto coded_bytes = bytes_from_bits(coded);
    out.insert(out.end(), coded_bytes.begin(), coded_bytes.end());
    return out;
}

inline std::vector<std::uint8_t> encode_frame_graph(std::span<const std::uint8_t> input,
                                                    const GraphCodebook& cb) {
    const Word payload = bits_from_bytes(input);
    const Word padded = detail::zero_pad_to_multiple(payload, cb.s);
    const Word coded = encode_graph(padded, cb);
    FrameHeader h;
    h.scheme = Scheme::Graph;
    h.ell = static_cast<std::uint8_t>(cb.params.ell);
    h.delta = static_cast<std::uint8_t>(cb.params.delta);
    h.s = static_cast<std::uint16_t>(cb.s);
    h.m = static_cast<std::uint16_t>(cb.m);
    h.payload_bits = payload.size();
    auto out = h.to_bytes();
    const auto coded_bytes = bytes_from_bits(coded);
    out.insert(out.end(), coded_bytes.begin(), coded_bytes.end());
    return out;
}

/// Decodes a framed stream back to the original bytes. Graph frames need the
/// codebook they were encoded with; a missing or mismatched codebook is a
/// framing error, anything wrong inside the coded bits is a corruption error.
inline std::vector<std::uint8_t> decode_frame(std::span<const std::uint8_t> framed,
                                              const GraphCodebook* graph_cb = nullptr,
                                              const FsmTable* fsm_table = nullptr) {
    const FrameHeader h = FrameHeader::from_bytes(framed);
    const auto body = framed.subspan(FrameHeader::kSize);

    std::uint64_t blocks = 0, coded_bits = 0;
    std::uint64_t padded_bits = 0;
    switch (h.scheme) {
        case Scheme::Dyck: {
            if (h.s < 1 || h.m < 1) throw FramingError("frame: dyck parameters missing");
            padded_bits = (h.payload_bits + h.s - 1) / h.s * h.s;
            blocks = padded_bits / h.s;
            coded_bits = blocks * h.m;
            break;
        }
        case Scheme::Fsm: {
            padded_bits = (h.payload_bits + 1) / 2 * 2;
            blocks = padded_bits / 2;
            coded_bits = blocks * 3 + 1;
            break;
        }
        case Scheme::Graph: {
            if (graph_cb == nullptr) throw FramingError("frame: graph scheme requires a codebook");
            if (graph_cb->params.ell != h.ell || graph_cb->params.delta != h.delta ||
                graph_cb->s != h.s || graph_cb->m != h.m) {
                throw FramingError("frame: codebook parameters do not match the header");
            }
            padded_bits = (h.payload_bits + h.s - 1) / h.s * h.s;
            blocks = padded_bits / h.s;
            coded_bits = blocks * h.m;
            break;
        }
    }
    if (body.size() * 8 < coded_bits) throw CorruptionError("frame: coded stream truncated");

    const Word all_bits = bits_from_bytes(body);
    const Word coded = coded_bits == 0 ? Word{}
                                       : window(all_bits, 1, static_cast<std::size_t>(coded_bits));

    Word padded;
    switch (h.scheme) {
        case Scheme::Dyck: {
            const auto cb = build_dyck_codebook(h.s);
            if (cb.m != h.m) throw FramingError("frame: dyck m does not match s");
            padded = decode_dyck(coded, cb);
            break;
        }
        case Scheme::Fsm: {
            const FsmTable def = fsm_table ? *fsm_table : default_fsm_table();
            padded = decode_fsm(coded, def);
            break;
        }
        case Scheme::Graph:
            padded = decode_graph(coded, *graph_cb);
            break;
    }
    if (padded.size() < h.payload_bits) throw CorruptionError("frame: decoded fewer bits than promised");
    const Word payload = h.payload_bits == 0 ? Word{}
                                             : window(padded, 1, static_cast<std::size_t>(h.payload_bits));
    return bytes_from_bits(payload);
}

} // namespace lbc
