#include "rdhei/image.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>

#include "rdhei/error.hpp"

namespace rdhei {

std::int64_t block_count(const GrayImage& img, int block_side) {
    if (block_side < 2)
        throw ParamError("block side must be at least 2");
    if (img.width <= 0 || img.height <= 0)
        throw ParamError("empty image");
    if (img.width % block_side != 0 || img.height % block_side != 0)
        throw ParamError("image dimensions are not a multiple of the block size");
    return (static_cast<std::int64_t>(img.width) / block_side) *
           (img.height / block_side);
}

BlockView block_view(const GrayImage& img, int block_side, int index) {
    const int per_row = img.width / block_side;
    return BlockView{index, (index / per_row) * block_side,
                     (index % per_row) * block_side, block_side};
}

std::vector<BlockView> partition(const GrayImage& img, int block_side) {
    const std::int64_t bn = block_count(img, block_side);
    std::vector<BlockView> views;
    views.reserve(static_cast<std::size_t>(bn));
    for (std::int64_t i = 0; i < bn; ++i)
        views.push_back(block_view(img, block_side, static_cast<int>(i)));
    return views;
}

namespace {

class PgmScanner {
public:
    explicit PgmScanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    // Skips whitespace and '#' comments, then reads an unsigned decimal.
    long next_int() {
        skip_separators();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_]))
            throw PgmError("PGM: expected integer in header");
        long v = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            v = v * 10 + (bytes_[pos_] - '0');
            if (v > 1'000'000'000L)
                throw PgmError("PGM: header value out of range");
            ++pos_;
        }
        return v;
    }

    void expect_magic() {
        if (bytes_.size() < 2 || bytes_[0] != 'P')
            throw PgmError("PGM: missing magic");
        if (bytes_[1] != '5')
            throw PgmError("PGM: unsupported format (want binary P5)");
        pos_ = 2;
    }

    // Exactly one whitespace byte separates the maxval from the raster.
    std::span<const std::uint8_t> raster() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_]))
            throw PgmError("PGM: missing separator before raster");
        ++pos_;
        return bytes_.subspan(pos_);
    }

private:
    void skip_separators() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

} // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
    PgmScanner scan(bytes);
    scan.expect_magic();
    const long width = scan.next_int();
    const long height = scan.next_int();
    const long maxval = scan.next_int();
    if (width <= 0 || height <= 0 || width > 65535 || height > 65535)
        throw PgmError("PGM: bad dimensions");
    if (maxval != 255)
        throw PgmError("PGM: maxval must be 255");
    const auto raster = scan.raster();
    const std::size_t need = static_cast<std::size_t>(width) * height;
    if (raster.size() < need)
        throw PgmError("PGM: truncated pixel data");

    GrayImage img(static_cast<int>(height), static_cast<int>(width));
    std::copy(raster.begin(), raster.begin() + need, img.pixels.begin());
    return img;
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
    if (img.width <= 0 || img.height <= 0)
        throw ParamError("cannot write empty image");
    char header[64];
    const int n = std::snprintf(header, sizeof header, "P5\n%d %d\n255\n",
                                img.width, img.height);
    std::vector<std::uint8_t> out;
    out.reserve(static_cast<std::size_t>(n) + img.pixels.size());
    out.insert(out.end(), header, header + n);
    out.insert(out.end(), img.pixels.begin(), img.pixels.end());
    return out;
}

GrayImage read_pgm_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw PgmError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return read_pgm(bytes);
}

void write_pgm_file(const GrayImage& img, const std::filesystem::path& path) {
    const auto bytes = write_pgm(img);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("cannot open " + tmp.string() + " for writing");
        out.write(reinterpret_cast<const char*>(bytes.data()),
                  static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw Error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

} // namespace rdhei
