#include "rdhei/hc_scheme.hpp"

#include <array>

#include "rdhei/error.hpp"
#include "rdhei/space_alloc.hpp"

namespace rdhei {

namespace {

constexpr int kRelocatedPixels = 4;
constexpr int kLengthHeaderBits = 32;

std::int64_t ep_flat_offset(const GrayImage& img, int block_side,
                            std::int64_t ep_index) {
    const int bs1 = block_side * block_side - 1;
    const auto view = block_view(img, block_side,
                                 static_cast<int>(ep_index / bs1));
    const int j = 1 + static_cast<int>(ep_index % bs1);
    return static_cast<std::int64_t>(view.row + j / block_side) * img.width +
           view.col + j % block_side;
}

std::int64_t first_pixel_flat_offset(const GrayImage& img, int block_side,
                                     int block_index) {
    const auto view = block_view(img, block_side, block_index);
    return static_cast<std::int64_t>(view.row) * img.width + view.col;
}

} // namespace

double hc_gross_rate_bpp(const SchemeParams& params) {
    params.validate();
    const double bs = params.block_pixels();
    return (bs - 1) * (params.threshold - 1) * 8.0 / (bs * params.share_count);
}

std::int64_t hc_embeddable_pixels(const SchemeParams& params, int height,
                                  int width, int id) {
    params.validate_for(height, width);
    const std::int64_t bn = params.block_total(height, width);
    return static_cast<std::int64_t>(
        space_alloc::embed_indices(id, bn, params.block_side, params.threshold,
                                   params.share_count)
            .size());
}

std::int64_t hc_net_capacity_bits(const SchemeParams& params, int height,
                                  int width, int id) {
    const std::int64_t pixels = hc_embeddable_pixels(params, height, width, id);
    return 8 * (pixels - kRelocatedPixels) - kLengthHeaderBits;
}

void HcBitCursor::build(const SchemeParams& params, int id, int skip_pixels) {
    const GrayImage& img = *ro_;
    const std::int64_t bn = params.block_total(img.height, img.width);
    const int bs1 = params.block_pixels() - 1;
    const auto indices = space_alloc::embed_indices(
        id, bn, params.block_side, params.threshold, params.share_count);

    flat_.reserve(indices.size());
    std::int64_t last_block = -1;
    for (std::size_t i = static_cast<std::size_t>(skip_pixels); i < indices.size();
         ++i) {
        const std::int64_t block = indices[i] / bs1;
        if (block != last_block) {
            group_start_.push_back(flat_.size());
            last_block = block;
        }
        flat_.push_back(ep_flat_offset(img, params.block_side, indices[i]));
    }
    group_start_.push_back(flat_.size());
}

HcBitCursor::HcBitCursor(const GrayImage& share, const SchemeParams& params,
                         int id, int skip_pixels)
    : ro_(&share) {
    build(params, id, skip_pixels);
}

HcBitCursor::HcBitCursor(GrayImage& share, const SchemeParams& params, int id,
                         int skip_pixels)
    : ro_(&share), rw_(&share) {
    build(params, id, skip_pixels);
}

void HcBitCursor::step() {
    ++offset_;
    if (group_ + 1 < group_start_.size() &&
        offset_ == 8 * (group_start_[group_ + 1] - group_start_[group_])) {
        ++group_;
        offset_ = 0;
    }
}

bool HcBitCursor::read_bit() {
    if (group_ + 1 >= group_start_.size())
        throw ExtractionError("hc stream: read past the embeddable bits");
    const std::size_t gsize = group_start_[group_ + 1] - group_start_[group_];
    const std::size_t plane = offset_ / gsize;
    const std::size_t member = offset_ % gsize;
    const std::uint8_t px =
        ro_->pixels[static_cast<std::size_t>(flat_[group_start_[group_] + member])];
    const bool bit = (px >> plane) & 1u;
    step();
    return bit;
}

void HcBitCursor::write_bit(bool bit) {
    if (rw_ == nullptr)
        throw Error("hc stream: cursor is read-only");
    if (group_ + 1 >= group_start_.size())
        throw CapacityError("hc stream: write past the embeddable bits");
    const std::size_t gsize = group_start_[group_ + 1] - group_start_[group_];
    const std::size_t plane = offset_ / gsize;
    const std::size_t member = offset_ % gsize;
    auto& px =
        rw_->pixels[static_cast<std::size_t>(flat_[group_start_[group_] + member])];
    px = static_cast<std::uint8_t>((px & ~(1u << plane)) |
                                   (static_cast<unsigned>(bit) << plane));
    step();
}

std::uint64_t HcBitCursor::read_uint(int width) {
    std::uint64_t v = 0;
    for (int b = 0; b < width; ++b)
        v = (v << 1) | (read_bit() ? 1u : 0u);
    return v;
}

void HcBitCursor::write_uint(std::uint64_t value, int width) {
    for (int b = width - 1; b >= 0; --b)
        write_bit((value >> b) & 1u);
}

HcHeader hc_read_header(const GrayImage& share) {
    if (share.width <= 0 || share.height <= 0 || share.pixels.empty())
        throw CorruptionError("hc share: empty image");
    SchemeParams params;
    params.block_side = share.pixels[0];
    if (params.block_side < 2 || share.width % params.block_side != 0 ||
        share.height % params.block_side != 0)
        throw CorruptionError("hc share: block size does not tile the image");
    if (params.block_total(share.height, share.width) < 4)
        throw CorruptionError("hc share: too few blocks for an in-band header");
    params.threshold = static_cast<int>(
        share.pixels[static_cast<std::size_t>(
            first_pixel_flat_offset(share, params.block_side, 1))]);
    params.share_count = static_cast<int>(
        share.pixels[static_cast<std::size_t>(
            first_pixel_flat_offset(share, params.block_side, 2))]);
    const int id = static_cast<int>(
        share.pixels[static_cast<std::size_t>(
            first_pixel_flat_offset(share, params.block_side, 3))]);
    try {
        params.validate_for(share.height, share.width);
    } catch (const ParamError& e) {
        throw CorruptionError(std::string("hc share: ") + e.what());
    }
    if (id >= params.share_count)
        throw CorruptionError("hc share: id out of range");
    return {params, id};
}

std::vector<ShareImage> hc_encrypt(const GrayImage& img,
                                   const SchemeParams& params,
                                   const EncryptionKey& key, ByteRng& rng) {
    auto shares = share_image(img, params, key, rng);
    const std::int64_t bn = params.block_total(img.height, img.width);

    for (auto& share : shares) {
        const auto indices =
            space_alloc::embed_indices(share.id, bn, params.block_side,
                                       params.threshold, params.share_count);
        if (indices.size() < static_cast<std::size_t>(kRelocatedPixels))
            throw ParamError("hc_encrypt: fewer than 4 embeddable pixels");

        const std::array<std::uint8_t, 4> header = {
            static_cast<std::uint8_t>(params.block_side),
            static_cast<std::uint8_t>(params.threshold),
            static_cast<std::uint8_t>(params.share_count),
            static_cast<std::uint8_t>(share.id)};
        for (int b = 0; b < kRelocatedPixels; ++b) {
            auto& first = share.pixels.pixels[static_cast<std::size_t>(
                first_pixel_flat_offset(share.pixels, params.block_side, b))];
            share.pixels.pixels[static_cast<std::size_t>(ep_flat_offset(
                share.pixels, params.block_side,
                indices[static_cast<std::size_t>(b)]))] = first;
            first = header[static_cast<std::size_t>(b)];
        }
    }
    return shares;
}

GrayImage hc_embed(const GrayImage& share, std::span<const std::uint8_t> payload,
                   const DataHidingKey& key) {
    const auto header = hc_read_header(share);
    GrayImage marked = share;
    HcBitCursor cursor(marked, header.params, header.id, kRelocatedPixels);

    const std::int64_t need =
        kLengthHeaderBits + 8 * static_cast<std::int64_t>(payload.size());
    if (need > cursor.bit_capacity())
        throw CapacityError("hc_embed: payload exceeds the embedding capacity");

    cursor.write_uint(static_cast<std::uint32_t>(payload.size()),
                      kLengthHeaderBits);
    for (const auto byte : payload_cipher(key, payload))
        cursor.write_uint(byte, 8);
    return marked;
}

std::vector<std::uint8_t> hc_extract(const GrayImage& share,
                                     const DataHidingKey& key) {
    const auto header = hc_read_header(share);
    HcBitCursor cursor(share, header.params, header.id, kRelocatedPixels);
    if (cursor.bit_capacity() < kLengthHeaderBits)
        throw ExtractionError("hc_extract: stream too short for the length header");
    const std::uint64_t length = cursor.read_uint(kLengthHeaderBits);
    if (8 * length > static_cast<std::uint64_t>(cursor.bit_capacity() -
                                                kLengthHeaderBits))
        throw ExtractionError("hc_extract: declared length exceeds the capacity");

    std::vector<std::uint8_t> data(static_cast<std::size_t>(length));
    for (auto& byte : data)
        byte = static_cast<std::uint8_t>(cursor.read_uint(8));
    return payload_cipher(key, data);
}

GrayImage hc_recover(std::span<const GrayImage> shares,
                     const EncryptionKey& key) {
    if (shares.empty())
        throw RecoveryError("hc_recover: no shares given");
    const auto header0 = hc_read_header(shares[0]);
    if (shares.size() < static_cast<std::size_t>(header0.params.threshold))
        throw RecoveryError("hc_recover: fewer shares than the threshold");

    const std::int64_t bn =
        header0.params.block_total(shares[0].height, shares[0].width);
    std::vector<ShareImage> undone;
    undone.reserve(shares.size());
    for (const auto& share : shares) {
        const auto header = hc_read_header(share);
        if (header.params.block_side != header0.params.block_side ||
            header.params.threshold != header0.params.threshold ||
            header.params.share_count != header0.params.share_count ||
            share.width != shares[0].width || share.height != shares[0].height)
            throw RecoveryError("hc_recover: inconsistent parameters across shares");

        ShareImage restored{header.id, ShareKind::full, share};
        const auto indices = space_alloc::embed_indices(
            header.id, bn, header.params.block_side, header.params.threshold,
            header.params.share_count);
        for (int b = 0; b < kRelocatedPixels; ++b)
            restored.pixels.pixels[static_cast<std::size_t>(first_pixel_flat_offset(
                restored.pixels, header.params.block_side, b))] =
                restored.pixels.pixels[static_cast<std::size_t>(ep_flat_offset(
                    restored.pixels, header.params.block_side,
                    indices[static_cast<std::size_t>(b)]))];
        undone.push_back(std::move(restored));
    }
    return recover_image(undone, header0.params, key);
}

} // namespace rdhei
