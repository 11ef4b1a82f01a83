#pragma once

#include <array>
#include <cstdint>
#include <span>

// RFC 8439 ChaCha20: the deterministic keystream behind evaluation-point
// derivation, payload masking, and the seeded rng. Test vectors from the
// RFC are pinned in the test suite.
namespace rdhei::chacha20 {

using Key = std::array<std::uint8_t, 32>;
using Nonce = std::array<std::uint8_t, 12>;

// One 64-byte keystream block for (key, counter, nonce).
std::array<std::uint8_t, 64> block(const Key& key, std::uint32_t counter,
                                   const Nonce& nonce);

// XORs data with the keystream starting at the given block counter.
void xor_stream(const Key& key, const Nonce& nonce, std::uint32_t counter,
                std::span<std::uint8_t> data);

// Sequential keystream reader.
class Stream {
public:
    Stream(const Key& key, const Nonce& nonce, std::uint32_t counter = 0)
        : key_(key), nonce_(nonce), counter_(counter) {}

    std::uint8_t next_byte();

private:
    Key key_;
    Nonce nonce_;
    std::uint32_t counter_;
    std::array<std::uint8_t, 64> buf_{};
    unsigned used_ = 64;
};

} // namespace rdhei::chacha20
