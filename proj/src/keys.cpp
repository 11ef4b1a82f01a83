#include "rdhei/keys.hpp"

#include <bitset>
#include <fstream>
#include <random>

#include "rdhei/chacha20.hpp"
#include "rdhei/error.hpp"

namespace rdhei {

namespace {

class ChaChaRng final : public ByteRng {
public:
    explicit ChaChaRng(const chacha20::Key& key)
        : stream_(key, chacha20::Nonce{'a', 'v', 'e', 'c'}) {}

    std::uint8_t next_byte() override { return stream_.next_byte(); }

private:
    chacha20::Stream stream_;
};

std::array<std::uint8_t, 32> read_key_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParamError("cannot open key file " + path.string());
    std::array<std::uint8_t, 32> bytes{};
    in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    if (in.gcount() != static_cast<std::streamsize>(bytes.size()))
        throw ParamError("key file " + path.string() + " is shorter than 32 bytes");
    return bytes;
}

} // namespace

std::unique_ptr<ByteRng> os_rng() {
    std::random_device rd;
    chacha20::Key key{};
    for (std::size_t i = 0; i < key.size(); i += 4) {
        const std::uint32_t v = rd();
        key[i] = static_cast<std::uint8_t>(v);
        key[i + 1] = static_cast<std::uint8_t>(v >> 8);
        key[i + 2] = static_cast<std::uint8_t>(v >> 16);
        key[i + 3] = static_cast<std::uint8_t>(v >> 24);
    }
    return std::make_unique<ChaChaRng>(key);
}

std::unique_ptr<ByteRng> seeded_rng(std::uint64_t seed) {
    chacha20::Key key{};
    for (int i = 0; i < 8; ++i)
        key[i] = static_cast<std::uint8_t>(seed >> (56 - 8 * i));
    return std::make_unique<ChaChaRng>(key);
}

std::vector<std::uint8_t> derive_x(const EncryptionKey& key,
                                   std::uint64_t block_index, int n) {
    if (n < 1 || n > 255)
        throw ParamError("derive_x: n must be in [1,255]");

    chacha20::Nonce nonce{'x', 'v', 'e', 'c'};
    for (int i = 0; i < 8; ++i)
        nonce[4 + i] = static_cast<std::uint8_t>(block_index >> (56 - 8 * i));

    chacha20::Stream stream(key.bytes, nonce);
    std::bitset<256> seen;
    std::vector<std::uint8_t> xs;
    xs.reserve(static_cast<std::size_t>(n));
    while (xs.size() < static_cast<std::size_t>(n)) {
        const std::uint8_t b = stream.next_byte();
        if (b == 0 || seen[b])
            continue;
        seen[b] = true;
        xs.push_back(b);
    }
    return xs;
}

std::vector<std::uint8_t> sample_a(ByteRng& rng, int r) {
    if (r < 2)
        throw ParamError("sample_a: threshold must be at least 2");
    std::vector<std::uint8_t> a(static_cast<std::size_t>(r) - 1);
    for (auto& v : a)
        v = rng.next_byte();
    return a;
}

std::vector<std::uint8_t> payload_cipher(const DataHidingKey& key,
                                         std::span<const std::uint8_t> data) {
    std::vector<std::uint8_t> out(data.begin(), data.end());
    const chacha20::Nonce nonce{'p', 'a', 'y', 'l', 'o', 'a', 'd'};
    chacha20::xor_stream(key.bytes, nonce, 0, out);
    return out;
}

EncryptionKey load_encryption_key(const std::filesystem::path& path) {
    return EncryptionKey{read_key_file(path)};
}

DataHidingKey load_data_hiding_key(const std::filesystem::path& path) {
    return DataHidingKey{read_key_file(path)};
}

} // namespace rdhei
