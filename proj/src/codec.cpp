#include "rdhei/codec.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "rdhei/error.hpp"

namespace rdhei::codec {

int med_predict(std::span<const std::uint8_t> block, int block_side, int j, int k) {
    if (j == 0 && k == 0)
        throw std::invalid_argument("med_predict: first pixel is never predicted");
    int a, b, c;
    if (j == 0) {
        a = b = c = block[static_cast<std::size_t>(k) - 1];
    } else if (k == 0) {
        a = b = c = block[static_cast<std::size_t>(j - 1) * block_side];
    } else {
        a = block[static_cast<std::size_t>(j - 1) * block_side + k];
        b = block[static_cast<std::size_t>(j) * block_side + k - 1];
        c = block[static_cast<std::size_t>(j - 1) * block_side + k - 1];
    }
    if (c <= std::min(a, b))
        return std::max(a, b);
    if (c >= std::max(a, b))
        return std::min(a, b);
    return a + b - c;
}

std::vector<std::int16_t> block_errors(std::span<const std::uint8_t> block,
                                       int block_side) {
    const int bs = block_side * block_side;
    std::vector<std::int16_t> errors(static_cast<std::size_t>(bs), 0);
    for (int j = 0; j < block_side; ++j)
        for (int k = 0; k < block_side; ++k) {
            if (j == 0 && k == 0)
                continue;
            const int idx = j * block_side + k;
            errors[static_cast<std::size_t>(idx)] = static_cast<std::int16_t>(
                block[static_cast<std::size_t>(idx)] -
                med_predict(block, block_side, j, k));
        }
    return errors;
}

std::vector<std::uint8_t> block_reconstruct(std::uint8_t first_pixel,
                                            std::span<const std::int16_t> errors,
                                            int block_side) {
    const int bs = block_side * block_side;
    if (errors.size() != static_cast<std::size_t>(bs))
        throw CodecError("block_reconstruct: error count does not match block size");
    std::vector<std::uint8_t> block(static_cast<std::size_t>(bs), 0);
    block[0] = first_pixel;
    for (int j = 0; j < block_side; ++j)
        for (int k = 0; k < block_side; ++k) {
            if (j == 0 && k == 0)
                continue;
            const int idx = j * block_side + k;
            const int value = med_predict(block, block_side, j, k) +
                              errors[static_cast<std::size_t>(idx)];
            if (value < 0 || value > 255)
                throw CorruptionError("block_reconstruct: pixel out of range");
            block[static_cast<std::size_t>(idx)] = static_cast<std::uint8_t>(value);
        }
    return block;
}

std::uint64_t SideInfo::symbol_total() const {
    std::uint64_t total = 0;
    for (const auto c : counts)
        total += c;
    return total;
}

namespace {

// 32-bit carry-free arithmetic coder (scaling with pending-bit tracking);
// intermediates in 64 bits.
constexpr std::uint64_t kTop = 1ull << 32;
constexpr std::uint64_t kHalf = kTop >> 1;
constexpr std::uint64_t kQuarter = kTop >> 2;
constexpr std::uint64_t kThreeQuarters = kHalf + kQuarter;

struct CumTable {
    std::array<std::uint64_t, kErrorSymbols + 1> cum{};
    std::uint64_t total = 0;

    explicit CumTable(const SideInfo& si) {
        for (int s = 0; s < kErrorSymbols; ++s)
            cum[static_cast<std::size_t>(s) + 1] =
                cum[static_cast<std::size_t>(s)] + si.counts[static_cast<std::size_t>(s)];
        total = cum[kErrorSymbols];
        if (total > kQuarter)
            throw CodecError("arithmetic coder: symbol total too large");
    }
};

class Encoder {
public:
    explicit Encoder(BitVec& out) : out_(out) {}

    void encode(std::uint64_t cum_lo, std::uint64_t cum_hi, std::uint64_t total) {
        const std::uint64_t range = high_ - low_ + 1;
        high_ = low_ + range * cum_hi / total - 1;
        low_ = low_ + range * cum_lo / total;
        for (;;) {
            if (high_ < kHalf) {
                emit(false);
            } else if (low_ >= kHalf) {
                emit(true);
                low_ -= kHalf;
                high_ -= kHalf;
            } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
                ++pending_;
                low_ -= kQuarter;
                high_ -= kQuarter;
            } else {
                break;
            }
            low_ <<= 1;
            high_ = (high_ << 1) | 1;
        }
    }

    // Two final bits pin the value inside the last interval whatever bits
    // follow in the stream.
    void finish() {
        ++pending_;
        emit(low_ >= kQuarter);
    }

private:
    void emit(bool bit) {
        out_.push_back(bit);
        for (; pending_ > 0; --pending_)
            out_.push_back(!bit);
    }

    BitVec& out_;
    std::uint64_t low_ = 0;
    std::uint64_t high_ = kTop - 1;
    std::uint64_t pending_ = 0;
};

class Decoder {
public:
    explicit Decoder(BitReader& in) : in_(in) {
        for (int i = 0; i < 32; ++i)
            value_ = (value_ << 1) | (in_.next() ? 1u : 0u);
    }

    std::uint64_t target(std::uint64_t total) const {
        const std::uint64_t range = high_ - low_ + 1;
        return ((value_ - low_ + 1) * total - 1) / range;
    }

    void consume(std::uint64_t cum_lo, std::uint64_t cum_hi, std::uint64_t total) {
        const std::uint64_t range = high_ - low_ + 1;
        high_ = low_ + range * cum_hi / total - 1;
        low_ = low_ + range * cum_lo / total;
        for (;;) {
            if (high_ < kHalf) {
            } else if (low_ >= kHalf) {
                value_ -= kHalf;
                low_ -= kHalf;
                high_ -= kHalf;
            } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
                value_ -= kQuarter;
                low_ -= kQuarter;
                high_ -= kQuarter;
            } else {
                break;
            }
            low_ <<= 1;
            high_ = (high_ << 1) | 1;
            value_ = (value_ << 1) | (in_.next() ? 1u : 0u);
        }
    }

private:
    BitReader& in_;
    std::uint64_t low_ = 0;
    std::uint64_t high_ = kTop - 1;
    std::uint64_t value_ = 0;
};

} // namespace

BitVec ac_encode(std::span<const std::int16_t> symbols, SideInfo& si) {
    si = SideInfo{};
    for (const auto s : symbols) {
        if (s < -255 || s > 255)
            throw CodecError("ac_encode: symbol outside [-255,255]");
        ++si.counts[static_cast<std::size_t>(s + 255)];
    }

    BitVec bits;
    if (!symbols.empty()) {
        const CumTable table(si);
        Encoder enc(bits);
        for (const auto s : symbols) {
            const auto idx = static_cast<std::size_t>(s + 255);
            enc.encode(table.cum[idx], table.cum[idx + 1], table.total);
        }
        enc.finish();
    }
    si.cb_len = bits.size();
    return bits;
}

std::vector<std::int16_t> ac_decode(BitReader& reader, const SideInfo& si) {
    const std::uint64_t total = si.symbol_total();
    if (total == 0) {
        if (si.cb_len != 0)
            throw CodecError("ac_decode: nonzero code length with empty model");
        return {};
    }
    if (reader.remaining() < si.cb_len)
        throw CodecError("ac_decode: truncated bitstream");

    const CumTable table(si);
    Decoder dec(reader);
    std::vector<std::int16_t> symbols;
    symbols.reserve(static_cast<std::size_t>(total));
    for (std::uint64_t i = 0; i < total; ++i) {
        const std::uint64_t t = dec.target(total);
        if (t >= total)
            throw CodecError("ac_decode: corrupt code value");
        // first cum entry strictly above t, minus one
        const auto it = std::upper_bound(table.cum.begin(), table.cum.end(), t);
        const auto sym = static_cast<std::size_t>(it - table.cum.begin()) - 1;
        dec.consume(table.cum[sym], table.cum[sym + 1], total);
        symbols.push_back(static_cast<std::int16_t>(static_cast<int>(sym) - 255));
    }
    return symbols;
}

int si_len_width(std::int64_t reduced_pixels) {
    return std::bit_width(static_cast<std::uint64_t>(8 * reduced_pixels - 1));
}

int si_count_width(std::int64_t reduced_pixels) {
    return std::bit_width(static_cast<std::uint64_t>(reduced_pixels - 1));
}

std::int64_t si_bit_size(std::int64_t reduced_pixels) {
    return si_len_width(reduced_pixels) +
           static_cast<std::int64_t>(kErrorSymbols) * si_count_width(reduced_pixels);
}

void si_pack(const SideInfo& si, std::int64_t reduced_pixels, BitVec& out) {
    const int len_w = si_len_width(reduced_pixels);
    const int cnt_w = si_count_width(reduced_pixels);
    if (len_w < 64 && si.cb_len >> len_w != 0)
        throw CodecError("si_pack: code length overflows its field");
    out.append_uint(si.cb_len, len_w);
    for (const auto c : si.counts) {
        if (cnt_w < 64 && static_cast<std::uint64_t>(c) >> cnt_w != 0)
            throw CodecError("si_pack: count overflows its field");
        out.append_uint(c, cnt_w);
    }
}

SideInfo si_unpack(BitReader& reader, std::int64_t reduced_pixels) {
    if (reader.remaining() < static_cast<std::uint64_t>(si_bit_size(reduced_pixels)))
        throw CodecError("si_unpack: truncated side info");
    SideInfo si;
    si.cb_len = reader.read_uint(si_len_width(reduced_pixels));
    const int cnt_w = si_count_width(reduced_pixels);
    for (auto& c : si.counts)
        c = static_cast<std::uint32_t>(reader.read_uint(cnt_w));
    return si;
}

} // namespace rdhei::codec
