#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rdhei/image.hpp"
#include "rdhei/keys.hpp"
#include "rdhei/sharing.hpp"

// High-capacity workflow: the owner stores S, r, n, ID in the first pixels
// of the first four blocks (relocating the displaced shares into the first
// four embeddable pixels), hiders overwrite the remaining embeddable pixels
// by bit replacement, and the receiver undoes the relocation before exact
// recovery. A share file is an ordinary full-size PGM; everything needed to
// operate on it is in-band.
namespace rdhei {

// Eq-8 style gross rate: (BS-1)(r-1)*8 / (BS*n) bits per original pixel.
double hc_gross_rate_bpp(const SchemeParams& params);

// Pixels image `id` may overwrite, including the four relocated ones.
std::int64_t hc_embeddable_pixels(const SchemeParams& params, int height,
                                  int width, int id);

// Payload bits after the relocated pixels and the 32-bit length header.
std::int64_t hc_net_capacity_bits(const SchemeParams& params, int height,
                                  int width, int id);

std::vector<ShareImage> hc_encrypt(const GrayImage& img,
                                   const SchemeParams& params,
                                   const EncryptionKey& key, ByteRng& rng);

GrayImage hc_embed(const GrayImage& share,
                   std::span<const std::uint8_t> payload,
                   const DataHidingKey& key);

std::vector<std::uint8_t> hc_extract(const GrayImage& share,
                                     const DataHidingKey& key);

GrayImage hc_recover(std::span<const GrayImage> shares,
                     const EncryptionKey& key);

// In-band parameters of an hc share file. Throws CorruptionError when the
// pixels do not form a valid header.
struct HcHeader {
    SchemeParams params;
    int id = 0;
};
HcHeader hc_read_header(const GrayImage& share);

// Deterministic bit order over the embeddable pixels of one share image:
// blocks in raster order; within a block the embeddable pixels are walked
// bitplane-major starting at the least significant plane. skip_pixels
// excludes the leading relocated pixels from the stream.
class HcBitCursor {
public:
    HcBitCursor(const GrayImage& share, const SchemeParams& params, int id,
                int skip_pixels);
    HcBitCursor(GrayImage& share, const SchemeParams& params, int id,
                int skip_pixels);

    std::int64_t bit_capacity() const {
        return 8 * static_cast<std::int64_t>(flat_.size());
    }
    bool read_bit();
    void write_bit(bool bit);
    std::uint64_t read_uint(int width);
    void write_uint(std::uint64_t value, int width);

private:
    void build(const SchemeParams& params, int id, int skip_pixels);
    void step();

    const GrayImage* ro_ = nullptr;
    GrayImage* rw_ = nullptr;
    std::vector<std::int64_t> flat_;        // stream pixel offsets
    std::vector<std::size_t> group_start_;  // per-block slices of flat_
    std::size_t group_ = 0;
    std::size_t offset_ = 0; // bit offset inside the current group
};

} // namespace rdhei
