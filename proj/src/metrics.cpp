#include "rdhei/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "rdhei/error.hpp"
#include "rdhei/hc_scheme.hpp"
#include "rdhei/sr_scheme.hpp"

namespace rdhei::metrics {

double entropy(const GrayImage& img) {
    std::array<std::int64_t, 256> hist{};
    for (const auto px : img.pixels)
        ++hist[px];
    const double total = static_cast<double>(img.pixels.size());
    double h = 0;
    for (const auto count : hist) {
        if (count == 0)
            continue;
        const double p = count / total;
        h -= p * std::log2(p);
    }
    return h;
}

double psnr(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height)
        throw ParamError("psnr: image dimensions differ");
    std::int64_t sse = 0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const int d = static_cast<int>(a.pixels[i]) - b.pixels[i];
        sse += static_cast<std::int64_t>(d) * d;
    }
    if (sse == 0)
        return std::numeric_limits<double>::infinity();
    const double mse = static_cast<double>(sse) / static_cast<double>(a.pixels.size());
    return 10.0 * std::log10(255.0 * 255.0 / mse);
}

bool exact_match(const GrayImage& a, const GrayImage& b) {
    return a == b;
}

double hc_measured_er(const GrayImage& share) {
    const auto header = hc_read_header(share);
    const auto pixels = hc_embeddable_pixels(header.params, share.height,
                                             share.width, header.id);
    return 8.0 * static_cast<double>(pixels) / static_cast<double>(share.pixel_count());
}

double sr_measured_er(const GrayImage& share) {
    const auto layout = sr_read_trailer(share);
    const auto bits = sr_vacated_bits(share);
    return static_cast<double>(bits) /
           (static_cast<double>(layout.orig_height) * layout.orig_width);
}

double expansion(std::span<const GrayImage> shares, int orig_height,
                 int orig_width) {
    if (orig_height <= 0 || orig_width <= 0)
        throw ParamError("expansion: empty original image");
    double total = 0;
    for (const auto& share : shares)
        total += static_cast<double>(share.pixel_count());
    return total / (static_cast<double>(orig_height) * orig_width);
}

} // namespace rdhei::metrics
