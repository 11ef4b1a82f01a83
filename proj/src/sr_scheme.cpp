#include "rdhei/sr_scheme.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "rdhei/bitio.hpp"
#include "rdhei/codec.hpp"
#include "rdhei/error.hpp"
#include "rdhei/space_alloc.hpp"

namespace rdhei {

namespace {

constexpr int kTrailerPixels = 8;
constexpr int kLengthHeaderBits = 32;

// Block-major positions of the trailer: the last kTrailerPixels pixels of
// the last image row. Not contiguous in block-major order when S < 8.
std::array<std::int64_t, kTrailerPixels> trailer_positions(int height, int width,
                                                           int block_side) {
    std::array<std::int64_t, kTrailerPixels> out{};
    const int per_row = width / block_side;
    const int row = height - 1;
    for (int t = 0; t < kTrailerPixels; ++t) {
        const int col = width - kTrailerPixels + t;
        const std::int64_t block =
            static_cast<std::int64_t>(row / block_side) * per_row + col / block_side;
        const int within = (row % block_side) * block_side + col % block_side;
        out[static_cast<std::size_t>(t)] =
            block * block_side * block_side + within;
    }
    return out;
}

std::int64_t flat_offset(int width, int block_side, std::int64_t pos) {
    const int bs = block_side * block_side;
    const std::int64_t block = pos / bs;
    const int within = static_cast<int>(pos % bs);
    const int per_row = width / block_side;
    const int row = static_cast<int>(block / per_row) * block_side +
                    within / block_side;
    const int col = static_cast<int>(block % per_row) * block_side +
                    within % block_side;
    return static_cast<std::int64_t>(row) * width + col;
}

// Embeddable stream: non-first pixels of the WB blocks, then the filler
// pixels (everything past the data region except the trailer), each pixel
// contributing 8 bits MSB first.
std::vector<std::int64_t> stream_offsets(const SrLayout& layout) {
    const int bs = layout.params.block_pixels();
    std::vector<std::int64_t> offsets;
    offsets.reserve(static_cast<std::size_t>(layout.wb_count * (bs - 1) +
                                             layout.reduced_pixels() - layout.tp));
    for (std::int64_t b = 0; b < layout.wb_count; ++b)
        for (int w = 1; w < bs; ++w)
            offsets.push_back(flat_offset(layout.width, layout.params.block_side,
                                          b * bs + w));
    const auto trailer = trailer_positions(layout.height, layout.width,
                                           layout.params.block_side);
    for (std::int64_t p = layout.tp; p < layout.reduced_pixels(); ++p)
        if (std::find(trailer.begin(), trailer.end(), p) == trailer.end())
            offsets.push_back(flat_offset(layout.width, layout.params.block_side, p));
    return offsets;
}

BitVec stream_read(const GrayImage& img, std::span<const std::int64_t> offsets) {
    BitVec bits;
    for (const auto off : offsets)
        bits.append_uint(img.pixels[static_cast<std::size_t>(off)], 8);
    return bits;
}

void stream_write(GrayImage& img, std::span<const std::int64_t> offsets,
                  const BitVec& bits) {
    for (std::size_t i = 0; i < bits.size(); ++i) {
        auto& px = img.pixels[static_cast<std::size_t>(offsets[i / 8])];
        const unsigned shift = 7 - i % 8;
        px = static_cast<std::uint8_t>((px & ~(1u << shift)) |
                                       (static_cast<unsigned>(bits[i]) << shift));
    }
}

std::vector<std::uint8_t> read_block(const GrayImage& img, const SrLayout& layout,
                                     std::int64_t wb_index) {
    const int bs = layout.params.block_pixels();
    std::vector<std::uint8_t> block(static_cast<std::size_t>(bs));
    for (int w = 0; w < bs; ++w)
        block[static_cast<std::size_t>(w)] = img.pixels[static_cast<std::size_t>(
            flat_offset(layout.width, layout.params.block_side,
                        layout.data_block_base(wb_index) + w))];
    return block;
}

// SI, compressed errors, and the model for one share image.
struct Vacated {
    codec::SideInfo si;
    BitVec si_bits;
    BitVec cb_bits;
};

Vacated compress_wb_errors(const GrayImage& share, const SrLayout& layout) {
    const int bs = layout.params.block_pixels();
    std::vector<std::int16_t> symbols;
    symbols.reserve(static_cast<std::size_t>(layout.wb_count * (bs - 1)));
    for (std::int64_t b = 0; b < layout.wb_count; ++b) {
        const auto block = read_block(share, layout, b);
        const auto errors = codec::block_errors(block, layout.params.block_side);
        symbols.insert(symbols.end(), errors.begin() + 1, errors.end());
    }
    Vacated out;
    out.cb_bits = codec::ac_encode(symbols, out.si);
    codec::si_pack(out.si, layout.reduced_pixels(), out.si_bits);
    return out;
}

} // namespace

SrLayout sr_layout(const SchemeParams& params, int orig_height, int orig_width,
                   int id) {
    params.validate_for(orig_height, orig_width);
    if (orig_height > 65535 || orig_width > 65535)
        throw ParamError("sr_layout: dimensions exceed the 16-bit trailer fields");
    if (id < 0 || id >= params.share_count)
        throw ParamError("sr_layout: id out of range");

    SrLayout layout;
    layout.params = params;
    layout.id = id;
    layout.orig_height = orig_height;
    layout.orig_width = orig_width;

    const std::int64_t bn = params.block_total(orig_height, orig_width);
    const int bs = params.block_pixels();
    layout.fp_count = space_alloc::count_fp(id, bn, params.threshold,
                                            params.share_count);
    layout.wb_count = bn - layout.fp_count;
    layout.tp = layout.fp_count + static_cast<std::int64_t>(bs) * layout.wb_count;

    std::int64_t side = static_cast<std::int64_t>(
        std::ceil(std::sqrt(static_cast<double>(layout.tp) / bs)));
    while (side * side * bs < layout.tp)
        ++side;
    while (side > 1 && (side - 1) * (side - 1) * bs >= layout.tp)
        --side;
    // the trailer lives in the last row, which must be at least 8 wide
    const std::int64_t min_side = (kTrailerPixels + params.block_side - 1) /
                                  params.block_side;
    side = std::max(side, min_side);

    layout.height = static_cast<int>(side) * params.block_side;
    layout.width = layout.height;
    for (;;) {
        const auto trailer = trailer_positions(layout.height, layout.width,
                                               params.block_side);
        if (*std::min_element(trailer.begin(), trailer.end()) >= layout.tp)
            break;
        layout.height += params.block_side;
    }
    return layout;
}

std::int64_t sr_block_major_offset(const SrLayout& layout, std::int64_t pos) {
    return flat_offset(layout.width, layout.params.block_side, pos);
}

SrLayout sr_read_trailer(const GrayImage& share) {
    if (share.width < kTrailerPixels || share.height < 1)
        throw CorruptionError("sr share: image too small for a trailer");
    const std::size_t base = static_cast<std::size_t>(share.height - 1) *
                                 share.width +
                             share.width - kTrailerPixels;
    SchemeParams params;
    params.block_side = share.pixels[base + 0];
    params.threshold = share.pixels[base + 1];
    params.share_count = share.pixels[base + 2];
    const int id = share.pixels[base + 3];
    const int orig_height = (share.pixels[base + 4] << 8) | share.pixels[base + 5];
    const int orig_width = (share.pixels[base + 6] << 8) | share.pixels[base + 7];

    SrLayout layout;
    try {
        layout = sr_layout(params, orig_height, orig_width, id);
    } catch (const ParamError& e) {
        throw CorruptionError(std::string("sr share: ") + e.what());
    }
    if (layout.height != share.height || layout.width != share.width)
        throw CorruptionError("sr share: dimensions disagree with the trailer");
    return layout;
}

std::vector<ShareImage> sr_encrypt(const GrayImage& img,
                                   const SchemeParams& params,
                                   const EncryptionKey& key, ByteRng& rng) {
    const auto full = share_image(img, params, key, rng);
    const std::int64_t bn = params.block_total(img.height, img.width);
    const int bs = params.block_pixels();

    std::vector<ShareImage> reduced;
    reduced.reserve(full.size());
    for (const auto& share : full) {
        const auto layout = sr_layout(params, img.height, img.width, share.id);
        GrayImage out(layout.height, layout.width);

        std::int64_t wb_pos = 0;
        std::int64_t fp_pos = layout.fp_base();
        for (std::int64_t i = 0; i < bn; ++i) {
            const auto view = block_view(share.pixels, params.block_side,
                                         static_cast<int>(i));
            if (space_alloc::embeddable(share.id, i, params.threshold,
                                        params.share_count)) {
                out.pixels[static_cast<std::size_t>(
                    sr_block_major_offset(layout, fp_pos++))] =
                    view.get(share.pixels, 0);
            } else {
                for (int w = 0; w < bs; ++w)
                    out.pixels[static_cast<std::size_t>(
                        sr_block_major_offset(layout, wb_pos++))] =
                        view.get(share.pixels, w);
            }
        }

        for (std::int64_t p = layout.tp; p < layout.reduced_pixels(); ++p)
            out.pixels[static_cast<std::size_t>(sr_block_major_offset(layout, p))] =
                rng.next_byte();

        const std::size_t base = static_cast<std::size_t>(layout.height - 1) *
                                     layout.width +
                                 layout.width - kTrailerPixels;
        out.pixels[base + 0] = static_cast<std::uint8_t>(params.block_side);
        out.pixels[base + 1] = static_cast<std::uint8_t>(params.threshold);
        out.pixels[base + 2] = static_cast<std::uint8_t>(params.share_count);
        out.pixels[base + 3] = static_cast<std::uint8_t>(share.id);
        out.pixels[base + 4] = static_cast<std::uint8_t>(img.height >> 8);
        out.pixels[base + 5] = static_cast<std::uint8_t>(img.height);
        out.pixels[base + 6] = static_cast<std::uint8_t>(img.width >> 8);
        out.pixels[base + 7] = static_cast<std::uint8_t>(img.width);

        reduced.push_back({share.id, ShareKind::reduced, std::move(out)});
    }
    return reduced;
}

GrayImage sr_embed(const GrayImage& share, std::span<const std::uint8_t> payload,
                   const DataHidingKey& key) {
    const auto layout = sr_read_trailer(share);
    const auto vacated = compress_wb_errors(share, layout);
    const auto offsets = stream_offsets(layout);
    const std::int64_t capacity = 8 * static_cast<std::int64_t>(offsets.size());

    const std::int64_t head =
        static_cast<std::int64_t>(vacated.si_bits.size() + vacated.cb_bits.size());
    if (head > capacity)
        throw VacatingError("sr_embed: side info and code exceed the embeddable bits");
    if (head + kLengthHeaderBits + 8 * static_cast<std::int64_t>(payload.size()) >
        capacity)
        throw CapacityError("sr_embed: payload exceeds the vacated space");

    BitVec out;
    out.append(vacated.si_bits);
    out.append(vacated.cb_bits);
    out.append_uint(static_cast<std::uint32_t>(payload.size()), kLengthHeaderBits);
    for (const auto byte : payload_cipher(key, payload))
        out.append_uint(byte, 8);

    GrayImage marked = share;
    stream_write(marked, offsets, out);
    return marked;
}

std::vector<std::uint8_t> sr_extract(const GrayImage& share,
                                     const DataHidingKey& key) {
    const auto layout = sr_read_trailer(share);
    const auto offsets = stream_offsets(layout);
    const BitVec bits = stream_read(share, offsets);
    BitReader reader(bits);

    codec::SideInfo si;
    try {
        si = codec::si_unpack(reader, layout.reduced_pixels());
    } catch (const CodecError& e) {
        throw ExtractionError(std::string("sr_extract: ") + e.what());
    }
    const std::uint64_t expected_symbols =
        static_cast<std::uint64_t>(layout.wb_count) *
        (layout.params.block_pixels() - 1);
    if (si.symbol_total() != expected_symbols)
        throw ExtractionError("sr_extract: side-info counts disagree with the layout");
    if (reader.remaining() < si.cb_len)
        throw ExtractionError("sr_extract: truncated compressed bitstream");
    reader.seek(reader.pos() + static_cast<std::size_t>(si.cb_len));

    if (reader.remaining() < kLengthHeaderBits)
        throw ExtractionError("sr_extract: no room for the length header");
    const std::uint64_t length = reader.read_uint(kLengthHeaderBits);
    if (8 * length > reader.remaining())
        throw ExtractionError("sr_extract: declared length exceeds the stream");

    std::vector<std::uint8_t> data(static_cast<std::size_t>(length));
    for (auto& byte : data)
        byte = static_cast<std::uint8_t>(reader.read_uint(8));
    return payload_cipher(key, data);
}

GrayImage sr_recover(std::span<const GrayImage> shares,
                     const EncryptionKey& key) {
    if (shares.empty())
        throw RecoveryError("sr_recover: no shares given");

    std::vector<SrLayout> layouts;
    layouts.reserve(shares.size());
    for (const auto& share : shares)
        layouts.push_back(sr_read_trailer(share));

    const auto& ref = layouts[0];
    for (const auto& layout : layouts)
        if (layout.params.block_side != ref.params.block_side ||
            layout.params.threshold != ref.params.threshold ||
            layout.params.share_count != ref.params.share_count ||
            layout.orig_height != ref.orig_height ||
            layout.orig_width != ref.orig_width)
            throw RecoveryError("sr_recover: trailers disagree across shares");
    for (std::size_t i = 0; i < layouts.size(); ++i)
        for (std::size_t j = i + 1; j < layouts.size(); ++j)
            if (layouts[i].id == layouts[j].id)
                throw RecoveryError("sr_recover: duplicate share id");
    if (shares.size() < static_cast<std::size_t>(ref.params.threshold))
        throw RecoveryError("sr_recover: fewer shares than the threshold");

    const int bs = ref.params.block_pixels();
    const std::int64_t bn = ref.params.block_total(ref.orig_height, ref.orig_width);

    // rebuild the encrypted WB blocks and collect the FP pixels per share
    std::vector<std::vector<std::vector<std::uint8_t>>> wb_blocks(shares.size());
    std::vector<std::vector<std::uint8_t>> fp_pixels(shares.size());
    for (std::size_t k = 0; k < shares.size(); ++k) {
        const auto& layout = layouts[k];
        const auto offsets = stream_offsets(layout);
        const BitVec bits = stream_read(shares[k], offsets);
        BitReader reader(bits);

        codec::SideInfo si;
        std::vector<std::int16_t> symbols;
        try {
            si = codec::si_unpack(reader, layout.reduced_pixels());
            if (si.symbol_total() !=
                static_cast<std::uint64_t>(layout.wb_count) * (bs - 1))
                throw CodecError("side-info counts disagree with the layout");
            symbols = codec::ac_decode(reader, si);
        } catch (const CodecError& e) {
            throw CorruptionError(std::string("sr_recover: ") + e.what());
        }

        wb_blocks[k].reserve(static_cast<std::size_t>(layout.wb_count));
        std::vector<std::int16_t> errors(static_cast<std::size_t>(bs), 0);
        for (std::int64_t b = 0; b < layout.wb_count; ++b) {
            std::copy(symbols.begin() + b * (bs - 1),
                      symbols.begin() + (b + 1) * (bs - 1), errors.begin() + 1);
            const std::uint8_t first = shares[k].pixels[static_cast<std::size_t>(
                sr_block_major_offset(layout, layout.data_block_base(b)))];
            wb_blocks[k].push_back(
                codec::block_reconstruct(first, errors, ref.params.block_side));
        }

        fp_pixels[k].reserve(static_cast<std::size_t>(layout.fp_count));
        for (std::int64_t p = layout.fp_base(); p < layout.tp; ++p)
            fp_pixels[k].push_back(shares[k].pixels[static_cast<std::size_t>(
                sr_block_major_offset(layout, p))]);
    }

    GrayImage out(ref.orig_height, ref.orig_width);
    std::vector<std::size_t> fp_next(shares.size(), 0);
    std::vector<std::size_t> wb_next(shares.size(), 0);
    std::vector<SharePoint> first_shares(shares.size());
    std::vector<SharePoint> other_shares(static_cast<std::size_t>(bs - 1));

    for (std::int64_t i = 0; i < bn; ++i) {
        const auto xs = derive_x(key, static_cast<std::uint64_t>(i),
                                 ref.params.share_count);
        const std::vector<std::uint8_t>* whole = nullptr;
        gf256::FieldElement whole_x = 0;
        for (std::size_t k = 0; k < shares.size(); ++k) {
            const auto x = xs[static_cast<std::size_t>(layouts[k].id)];
            if (space_alloc::embeddable(layouts[k].id, i, ref.params.threshold,
                                        ref.params.share_count)) {
                if (fp_next[k] >= fp_pixels[k].size())
                    throw CorruptionError("sr_recover: FP pixels exhausted");
                first_shares[k] = {x, fp_pixels[k][fp_next[k]++]};
            } else {
                if (wb_next[k] >= wb_blocks[k].size())
                    throw CorruptionError("sr_recover: WB blocks exhausted");
                const auto& block = wb_blocks[k][wb_next[k]++];
                first_shares[k] = {x, block[0]};
                if (whole == nullptr) {
                    whole = &block;
                    whole_x = x;
                }
            }
        }
        if (whole == nullptr)
            throw CorruptionError("sr_recover: no whole block available");

        for (int j = 1; j < bs; ++j)
            other_shares[static_cast<std::size_t>(j - 1)] = {
                whole_x, (*whole)[static_cast<std::size_t>(j)]};
        const auto block =
            recover_block(first_shares, other_shares, ref.params.threshold);
        const auto view = block_view(out, ref.params.block_side,
                                     static_cast<int>(i));
        for (int j = 0; j < bs; ++j)
            view.set(out, j, block[static_cast<std::size_t>(j)]);
    }
    return out;
}

double sr_expansion(const SchemeParams& params, int orig_height, int orig_width) {
    double total = 0;
    for (int id = 0; id < params.share_count; ++id) {
        const auto layout = sr_layout(params, orig_height, orig_width, id);
        total += static_cast<double>(layout.reduced_pixels());
    }
    return total / (static_cast<double>(orig_height) * orig_width);
}

std::int64_t sr_vacated_bits(const GrayImage& share) {
    const auto layout = sr_read_trailer(share);
    const auto vacated = compress_wb_errors(share, layout);
    const auto offsets = stream_offsets(layout);
    const std::int64_t capacity = 8 * static_cast<std::int64_t>(offsets.size());
    const std::int64_t head =
        static_cast<std::int64_t>(vacated.si_bits.size() + vacated.cb_bits.size());
    if (head > capacity)
        throw VacatingError("sr share: side info and code exceed the embeddable bits");
    return capacity - head;
}

} // namespace rdhei
