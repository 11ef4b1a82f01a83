#pragma once

#include <span>

#include "rdhei/image.hpp"

// Embedding rate, entropy, expansion, and exactness verdicts. Recovery
// quality is judged by byte equality; PSNR is printed for reference only
// (+inf when the images match).
namespace rdhei::metrics {

// Shannon entropy of the 256-bin pixel histogram, bits per pixel.
double entropy(const GrayImage& img);

// +inf when the images are identical. Throws ParamError on dimension
// mismatch.
double psnr(const GrayImage& a, const GrayImage& b);

bool exact_match(const GrayImage& a, const GrayImage& b);

// Gross embedding rate of one hc share file: embeddable bits over the
// original pixel count.
double hc_measured_er(const GrayImage& share);

// Vacated bits of one unmarked sr share over the original pixel count.
double sr_measured_er(const GrayImage& share);

// Total pixels of the given share files over the original pixel count.
double expansion(std::span<const GrayImage> shares, int orig_height,
                 int orig_width);

} // namespace rdhei::metrics
