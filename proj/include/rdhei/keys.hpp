#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

namespace rdhei {

// 32-byte encryption key: the source of the per-block evaluation points.
struct EncryptionKey {
    std::array<std::uint8_t, 32> bytes{};
};

// 32-byte data hiding key: masks the embedded payload.
struct DataHidingKey {
    std::array<std::uint8_t, 32> bytes{};
};

// Caller-supplied entropy source for the sharing coefficients. Production
// uses os_rng(); tests inject a seeded stream so golden vectors reproduce.
class ByteRng {
public:
    virtual ~ByteRng() = default;
    virtual std::uint8_t next_byte() = 0;
};

std::unique_ptr<ByteRng> os_rng();
std::unique_ptr<ByteRng> seeded_rng(std::uint64_t seed);

// The n pairwise-distinct nonzero evaluation points for one block:
// rejection-sampled from a ChaCha20 keystream keyed by K_E and
// domain-separated by the block index, so owner and receiver derive
// identical values. Throws ParamError unless 1 <= n <= 255.
std::vector<std::uint8_t> derive_x(const EncryptionKey& key,
                                   std::uint64_t block_index, int n);

// r-1 fresh random coefficients. Independent of K_E by design: sharing the
// same image twice must produce different ciphertexts.
std::vector<std::uint8_t> sample_a(ByteRng& rng, int r);

// Length-preserving keystream XOR; applying it twice restores the input.
std::vector<std::uint8_t> payload_cipher(const DataHidingKey& key,
                                         std::span<const std::uint8_t> data);

// Raw 32-byte key files.
EncryptionKey load_encryption_key(const std::filesystem::path& path);
DataHidingKey load_data_hiding_key(const std::filesystem::path& path);

} // namespace rdhei
