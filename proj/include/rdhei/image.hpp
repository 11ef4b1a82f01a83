#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace rdhei {

// 8-bit grayscale raster, row-major.
struct GrayImage {
    int width = 0;  // N
    int height = 0; // M
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;
    GrayImage(int height_, int width_)
        : width(width_), height(height_),
          pixels(static_cast<std::size_t>(width_) * height_, 0) {}

    std::uint8_t at(int row, int col) const {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
    std::uint8_t& at(int row, int col) {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
    std::int64_t pixel_count() const {
        return static_cast<std::int64_t>(width) * height;
    }
    bool operator==(const GrayImage&) const = default;
};

// One S x S tile of an image, identified by its raster index.
struct BlockView {
    int index = 0;
    int row = 0;
    int col = 0;
    int side = 0;

    // j is the block-internal raster index in [0, side*side)
    std::uint8_t get(const GrayImage& img, int j) const {
        return img.at(row + j / side, col + j % side);
    }
    void set(GrayImage& img, int j, std::uint8_t v) const {
        img.at(row + j / side, col + j % side) = v;
    }
};

// Non-overlapping S x S tiling in raster order. Throws ParamError when the
// dimensions are not exact multiples of S (no padding).
std::vector<BlockView> partition(const GrayImage& img, int block_side);

// Same geometry without materializing the list.
BlockView block_view(const GrayImage& img, int block_side, int index);
std::int64_t block_count(const GrayImage& img, int block_side);

// Binary PGM ("P5"), maxval 255. The writer emits the canonical header
// "P5\n<width> <height>\n255\n"; the reader additionally accepts '#'
// comments and arbitrary whitespace. Throws PgmError on malformed input.
GrayImage read_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_pgm(const GrayImage& img);

GrayImage read_pgm_file(const std::filesystem::path& path);
// Writes via a temp file in the same directory, then renames.
void write_pgm_file(const GrayImage& img, const std::filesystem::path& path);

} // namespace rdhei
