#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rdhei/bitio.hpp"

// MED prediction over S x S blocks, the 511-symbol prediction-error
// alphabet, static arithmetic coding, and the packed side-info format.
namespace rdhei::codec {

inline constexpr int kErrorSymbols = 511; // error values -255..255

// Median edge detector. Neighbors: a above, b left, c above-left; first
// row and first column collapse all three to the single available
// neighbor. (0,0) has no neighbors and is never predicted.
int med_predict(std::span<const std::uint8_t> block, int block_side, int j, int k);

// Per-block prediction errors in raster order; entry 0 is a 0 sentinel for
// the untouched first pixel.
std::vector<std::int16_t> block_errors(std::span<const std::uint8_t> block,
                                       int block_side);

// Inverse of block_errors given the first pixel. Throws CorruptionError if
// any reconstructed pixel falls outside [0,255].
std::vector<std::uint8_t> block_reconstruct(std::uint8_t first_pixel,
                                            std::span<const std::int16_t> errors,
                                            int block_side);

// Code length plus the static frequency model the decoder needs.
struct SideInfo {
    std::uint64_t cb_len = 0; // bits
    std::array<std::uint32_t, kErrorSymbols> counts{};

    std::uint64_t symbol_total() const;
    bool operator==(const SideInfo&) const = default;
};

// Static arithmetic coding of prediction errors. Encoding fills the
// frequency table; decoding consumes exactly symbol_total() symbols and at
// most cb_len bits. Throws CodecError on truncated or inconsistent input.
BitVec ac_encode(std::span<const std::int16_t> symbols, SideInfo& si);
std::vector<std::int16_t> ac_decode(BitReader& reader, const SideInfo& si);

// Side-info field widths for a reduced image of mprime x nprime pixels:
// cb_len in ceil(log2(8*M'*N')) bits, each count in ceil(log2(M'*N')) bits.
int si_len_width(std::int64_t reduced_pixels);
int si_count_width(std::int64_t reduced_pixels);
std::int64_t si_bit_size(std::int64_t reduced_pixels);

// Bit-exact SI round trip. Packing throws CodecError when a field
// overflows its width.
void si_pack(const SideInfo& si, std::int64_t reduced_pixels, BitVec& out);
SideInfo si_unpack(BitReader& reader, std::int64_t reduced_pixels);

} // namespace rdhei::codec
