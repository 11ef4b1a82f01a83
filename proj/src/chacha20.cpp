#include "rdhei/chacha20.hpp"

#include <bit>

namespace rdhei::chacha20 {

namespace {

inline std::uint32_t load_le(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) |
           (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

inline void quarter_round(std::uint32_t& a, std::uint32_t& b, std::uint32_t& c,
                          std::uint32_t& d) {
    a += b; d ^= a; d = std::rotl(d, 16);
    c += d; b ^= c; b = std::rotl(b, 12);
    a += b; d ^= a; d = std::rotl(d, 8);
    c += d; b ^= c; b = std::rotl(b, 7);
}

} // namespace

std::array<std::uint8_t, 64> block(const Key& key, std::uint32_t counter,
                                   const Nonce& nonce) {
    std::uint32_t state[16] = {0x61707865, 0x3320646e, 0x79622d32, 0x6b206574};
    for (int i = 0; i < 8; ++i)
        state[4 + i] = load_le(key.data() + 4 * i);
    state[12] = counter;
    for (int i = 0; i < 3; ++i)
        state[13 + i] = load_le(nonce.data() + 4 * i);

    std::uint32_t w[16];
    for (int i = 0; i < 16; ++i)
        w[i] = state[i];
    for (int round = 0; round < 10; ++round) {
        quarter_round(w[0], w[4], w[8], w[12]);
        quarter_round(w[1], w[5], w[9], w[13]);
        quarter_round(w[2], w[6], w[10], w[14]);
        quarter_round(w[3], w[7], w[11], w[15]);
        quarter_round(w[0], w[5], w[10], w[15]);
        quarter_round(w[1], w[6], w[11], w[12]);
        quarter_round(w[2], w[7], w[8], w[13]);
        quarter_round(w[3], w[4], w[9], w[14]);
    }

    std::array<std::uint8_t, 64> out;
    for (int i = 0; i < 16; ++i) {
        const std::uint32_t v = w[i] + state[i];
        out[4 * i + 0] = static_cast<std::uint8_t>(v);
        out[4 * i + 1] = static_cast<std::uint8_t>(v >> 8);
        out[4 * i + 2] = static_cast<std::uint8_t>(v >> 16);
        out[4 * i + 3] = static_cast<std::uint8_t>(v >> 24);
    }
    return out;
}

void xor_stream(const Key& key, const Nonce& nonce, std::uint32_t counter,
                std::span<std::uint8_t> data) {
    std::size_t off = 0;
    while (off < data.size()) {
        const auto ks = block(key, counter++, nonce);
        const std::size_t chunk = std::min<std::size_t>(64, data.size() - off);
        for (std::size_t i = 0; i < chunk; ++i)
            data[off + i] ^= ks[i];
        off += chunk;
    }
}

std::uint8_t Stream::next_byte() {
    if (used_ == 64) {
        buf_ = block(key_, counter_++, nonce_);
        used_ = 0;
    }
    return buf_[used_++];
}

} // namespace rdhei::chacha20
