#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rdhei/gf256.hpp"
#include "rdhei/image.hpp"
#include "rdhei/keys.hpp"

// Block-based (r,n) Shamir sharing over GF(2^8) and block recovery that
// exploits the shared per-block coefficients: r shares of a block's first
// pixel recover the whole coefficient vector, after which every other
// pixel needs only one share.
namespace rdhei {

struct SchemeParams {
    int block_side = 0;  // S
    int threshold = 0;   // r
    int share_count = 0; // n

    int block_pixels() const { return block_side * block_side; } // BS

    std::int64_t block_total(int height, int width) const {      // BN
        return (static_cast<std::int64_t>(height) / block_side) *
               (width / block_side);
    }

    // 2 <= r <= n <= 255, S in [2,255]
    void validate() const;
    // plus exact tiling and BN >= 4 for the given image
    void validate_for(int height, int width) const;
};

enum class ShareKind { full, reduced };

struct ShareImage {
    int id = 0;
    ShareKind kind = ShareKind::full;
    GrayImage pixels;
};

struct SharePoint {
    gf256::FieldElement x = 0;
    gf256::FieldElement y = 0;
};

// One encrypted block per evaluation point: out[k][j] = block[j] ^ mask(xs[k])
// where mask(x) = a(0)x ^ ... ^ a(r-2)x^(r-1). The same (a, xs) serve every
// pixel of the block.
std::vector<std::vector<std::uint8_t>>
share_block(std::span<const std::uint8_t> block,
            std::span<const std::uint8_t> coeffs_a,
            std::span<const std::uint8_t> xs);

// Recovers a block from r (or more) shares of its first pixel plus a single
// share per remaining pixel. Extra first-pixel shares are used as a
// consistency check; disagreement raises CorruptionError.
std::vector<std::uint8_t>
recover_block(std::span<const SharePoint> first_pixel_shares,
              std::span<const SharePoint> other_pixel_shares, int threshold);

// Full-size encryption: block i uses fresh coefficients from rng and the
// evaluation points derive_x(key, i, n).
std::vector<ShareImage> share_image(const GrayImage& img,
                                    const SchemeParams& params,
                                    const EncryptionKey& key, ByteRng& rng);

// Exact recovery from any >= r full-size shares with distinct ids. For each
// non-first pixel the share is taken from an image whose copy is retained
// under the embedding allocation, so the same routine recovers both pristine
// and marked (relocation-undone) shares.
GrayImage recover_image(std::span<const ShareImage> shares,
                        const SchemeParams& params, const EncryptionKey& key);

} // namespace rdhei
