#include "rdhei/sharing.hpp"

#include <algorithm>

#include "rdhei/error.hpp"
#include "rdhei/space_alloc.hpp"

namespace rdhei {

namespace {

// a(0)x ^ a(1)x^2 ^ ... ^ a(r-2)x^(r-1)
std::uint8_t coeff_mask(std::span<const std::uint8_t> coeffs_a, std::uint8_t x) {
    std::uint8_t acc = 0;
    for (std::size_t t = coeffs_a.size(); t-- > 0;)
        acc = gf256::mul(gf256::add(acc, coeffs_a[t]), x);
    return acc;
}

} // namespace

void SchemeParams::validate() const {
    if (block_side < 2 || block_side > 255)
        throw ParamError("block side must be in [2,255]");
    if (threshold < 2)
        throw ParamError("threshold must be at least 2");
    if (share_count < threshold)
        throw ParamError("share count must be at least the threshold");
    if (share_count > 255)
        throw ParamError("share count must be at most 255");
}

void SchemeParams::validate_for(int height, int width) const {
    validate();
    if (height <= 0 || width <= 0)
        throw ParamError("empty image");
    if (height % block_side != 0 || width % block_side != 0)
        throw ParamError("image dimensions are not a multiple of the block size");
    if (block_total(height, width) < 4)
        throw ParamError("image must contain at least 4 blocks");
}

std::vector<std::vector<std::uint8_t>>
share_block(std::span<const std::uint8_t> block,
            std::span<const std::uint8_t> coeffs_a,
            std::span<const std::uint8_t> xs) {
    std::vector<std::vector<std::uint8_t>> out(xs.size());
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const std::uint8_t mask = coeff_mask(coeffs_a, xs[k]);
        out[k].resize(block.size());
        for (std::size_t j = 0; j < block.size(); ++j)
            out[k][j] = gf256::add(block[j], mask);
    }
    return out;
}

std::vector<std::uint8_t>
recover_block(std::span<const SharePoint> first_pixel_shares,
              std::span<const SharePoint> other_pixel_shares, int threshold) {
    if (threshold < 2)
        throw ParamError("recover_block: threshold must be at least 2");
    if (first_pixel_shares.size() < static_cast<std::size_t>(threshold))
        throw RecoveryError("recover_block: fewer first-pixel shares than the threshold");

    std::vector<std::uint8_t> xs, ys;
    xs.reserve(static_cast<std::size_t>(threshold));
    ys.reserve(static_cast<std::size_t>(threshold));
    for (int i = 0; i < threshold; ++i) {
        xs.push_back(first_pixel_shares[static_cast<std::size_t>(i)].x);
        ys.push_back(first_pixel_shares[static_cast<std::size_t>(i)].y);
    }
    gf256::SharePoly poly;
    try {
        poly = gf256::recover_coeffs(xs, ys);
    } catch (const std::invalid_argument& e) {
        throw CorruptionError(std::string("recover_block: ") + e.what());
    }

    // surplus shares must lie on the same polynomial
    for (std::size_t i = static_cast<std::size_t>(threshold);
         i < first_pixel_shares.size(); ++i)
        if (gf256::eval_poly(poly, first_pixel_shares[i].x) != first_pixel_shares[i].y)
            throw CorruptionError("recover_block: inconsistent first-pixel shares");

    const std::span<const std::uint8_t> coeffs_a(poly.data() + 1, poly.size() - 1);
    std::vector<std::uint8_t> block;
    block.reserve(1 + other_pixel_shares.size());
    block.push_back(poly[0]);
    for (const auto& share : other_pixel_shares)
        block.push_back(gf256::add(share.y, coeff_mask(coeffs_a, share.x)));
    return block;
}

std::vector<ShareImage> share_image(const GrayImage& img,
                                    const SchemeParams& params,
                                    const EncryptionKey& key, ByteRng& rng) {
    params.validate_for(img.height, img.width);
    const std::int64_t bn = params.block_total(img.height, img.width);
    const int bs = params.block_pixels();

    std::vector<ShareImage> shares;
    shares.reserve(static_cast<std::size_t>(params.share_count));
    for (int id = 0; id < params.share_count; ++id)
        shares.push_back({id, ShareKind::full, GrayImage(img.height, img.width)});

    std::vector<std::uint8_t> masks(static_cast<std::size_t>(params.share_count));
    for (std::int64_t i = 0; i < bn; ++i) {
        const auto view = block_view(img, params.block_side, static_cast<int>(i));
        const auto xs = derive_x(key, static_cast<std::uint64_t>(i), params.share_count);
        const auto a = sample_a(rng, params.threshold);
        for (int k = 0; k < params.share_count; ++k)
            masks[static_cast<std::size_t>(k)] = coeff_mask(a, xs[static_cast<std::size_t>(k)]);
        for (int j = 0; j < bs; ++j) {
            const std::uint8_t p = view.get(img, j);
            for (int k = 0; k < params.share_count; ++k)
                view.set(shares[static_cast<std::size_t>(k)].pixels, j,
                         gf256::add(p, masks[static_cast<std::size_t>(k)]));
        }
    }
    return shares;
}

GrayImage recover_image(std::span<const ShareImage> shares,
                        const SchemeParams& params, const EncryptionKey& key) {
    params.validate();
    if (shares.size() < static_cast<std::size_t>(params.threshold))
        throw RecoveryError("recover_image: fewer shares than the threshold");
    const int height = shares[0].pixels.height;
    const int width = shares[0].pixels.width;
    params.validate_for(height, width);
    for (const auto& share : shares) {
        if (share.pixels.height != height || share.pixels.width != width)
            throw RecoveryError("recover_image: share dimensions differ");
        if (share.id < 0 || share.id >= params.share_count)
            throw RecoveryError("recover_image: share id out of range");
    }
    for (std::size_t i = 0; i < shares.size(); ++i)
        for (std::size_t j = i + 1; j < shares.size(); ++j)
            if (shares[i].id == shares[j].id)
                throw RecoveryError("recover_image: duplicate share id");

    const std::int64_t bn = params.block_total(height, width);
    const int bs = params.block_pixels();
    const int bs1 = bs - 1;
    GrayImage out(height, width);

    std::vector<SharePoint> first_shares(shares.size());
    std::vector<SharePoint> other_shares(static_cast<std::size_t>(bs1));
    for (std::int64_t i = 0; i < bn; ++i) {
        const auto view = block_view(out, params.block_side, static_cast<int>(i));
        const auto xs = derive_x(key, static_cast<std::uint64_t>(i), params.share_count);
        for (std::size_t k = 0; k < shares.size(); ++k)
            first_shares[k] = {xs[static_cast<std::size_t>(shares[k].id)],
                               view.get(shares[k].pixels, 0)};

        // Each non-first pixel is read from a share image where its copy is
        // retained (not part of that image's embedding space).
        for (int j = 1; j < bs; ++j) {
            const std::int64_t ep_index = i * bs1 + (j - 1);
            const ShareImage* source = nullptr;
            for (const auto& share : shares)
                if (!space_alloc::embeddable(share.id, ep_index, params.threshold,
                                             params.share_count)) {
                    source = &share;
                    break;
                }
            if (source == nullptr)
                throw RecoveryError("recover_image: no retained share for a pixel");
            other_shares[static_cast<std::size_t>(j - 1)] = {
                xs[static_cast<std::size_t>(source->id)], view.get(source->pixels, j)};
        }

        const auto block = recover_block(first_shares, other_shares, params.threshold);
        for (int j = 0; j < bs; ++j)
            view.set(out, j, block[static_cast<std::size_t>(j)]);
    }
    return out;
}

} // namespace rdhei
