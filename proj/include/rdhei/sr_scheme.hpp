#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rdhei/image.hpp"
#include "rdhei/keys.hpp"
#include "rdhei/sharing.hpp"

// Size-reduced workflow: per share image, blocks inside the sliding window
// keep only their first pixel (FP) while the others are kept whole (WB);
// the survivors are repacked into a smaller square image with an 8-pixel
// parameter trailer. Hiders vacate room by compressing the MED prediction
// errors of the WB blocks; receivers rebuild the WB blocks from the first
// pixels plus decoded errors and then decrypt as usual.
namespace rdhei {

// Geometry of one reduced share. Data occupies block-major positions
// [0, tp): the wb_count whole blocks, then the fp_count first pixels packed
// into subsequent blocks. Everything after is filler except the 8 trailer
// pixels at the end of the last image row (S, r, n, ID, then M and N as
// 16-bit big-endian pairs).
struct SrLayout {
    SchemeParams params;
    int id = 0;
    int orig_height = 0; // M
    int orig_width = 0;  // N
    std::int64_t fp_count = 0;
    std::int64_t wb_count = 0;
    std::int64_t tp = 0;
    int height = 0; // M'
    int width = 0;  // N'

    std::int64_t reduced_pixels() const {
        return static_cast<std::int64_t>(height) * width;
    }
    std::int64_t data_block_base(std::int64_t wb_index) const {
        return wb_index * params.block_pixels();
    }
    std::int64_t fp_base() const { return wb_count * params.block_pixels(); }
};

// M' = N' = ceil(sqrt(TP/BS)) * S, then grown one block row at a time until
// the trailer pixels sit strictly inside the filler region.
SrLayout sr_layout(const SchemeParams& params, int orig_height, int orig_width,
                   int id);

// Flat pixel offset of a block-major position (blocks in raster order,
// raster order inside each block).
std::int64_t sr_block_major_offset(const SrLayout& layout, std::int64_t pos);

// Trailer parameters, validated against the actual file dimensions.
SrLayout sr_read_trailer(const GrayImage& share);

std::vector<ShareImage> sr_encrypt(const GrayImage& img,
                                   const SchemeParams& params,
                                   const EncryptionKey& key, ByteRng& rng);

GrayImage sr_embed(const GrayImage& share,
                   std::span<const std::uint8_t> payload,
                   const DataHidingKey& key);

std::vector<std::uint8_t> sr_extract(const GrayImage& share,
                                     const DataHidingKey& key);

GrayImage sr_recover(std::span<const GrayImage> shares,
                     const EncryptionKey& key);

// Owner-side expansion: sum of reduced share pixel counts over the original
// pixel count, from the actual layouts.
double sr_expansion(const SchemeParams& params, int orig_height, int orig_width);

// Bits left for the hider once SI and the compressed errors are stored
// (before the 32-bit length header). Computes the compression, so call it
// on an unmarked share. Throws VacatingError when SI+CB do not fit.
std::int64_t sr_vacated_bits(const GrayImage& share);

} // namespace rdhei
