#include <doctest.h>

#include <cmath>

#include "rdhei/codec.hpp"
#include "rdhei/error.hpp"
#include "testutil.hpp"

using namespace rdhei;

namespace {

// Direct transcription of the predictor definition, kept separate from the
// library implementation.
int oracle_med(int a, int b, int c) {
    if (c <= std::min(a, b))
        return std::max(a, b);
    if (c >= std::max(a, b))
        return std::min(a, b);
    return a + b - c;
}

} // namespace

TEST_CASE("med_predict golden block") {
    // encrypted block from the worked size-reduced example
    const std::vector<std::uint8_t> block = {150, 147, 144, 145};
    CHECK(codec::med_predict(block, 2, 0, 1) == 150);
    CHECK(codec::med_predict(block, 2, 1, 0) == 150);
    CHECK(codec::med_predict(block, 2, 1, 1) == 144);
    CHECK_THROWS_AS(codec::med_predict(block, 2, 0, 0), std::invalid_argument);
}

TEST_CASE("med_predict constant block") {
    const std::vector<std::uint8_t> block(64, 93);
    for (int j = 0; j < 8; ++j)
        for (int k = 0; k < 8; ++k) {
            if (j == 0 && k == 0)
                continue;
            CHECK(codec::med_predict(block, 8, j, k) == 93);
        }
}

TEST_CASE("med_predict agrees with the oracle on every (a,b,c) triple") {
    // block [[c,a],[b,0]]: prediction at (1,1) sees exactly (a,b,c)
    std::vector<std::uint8_t> block(4, 0);
    for (int a = 0; a < 256; ++a)
        for (int b = 0; b < 256; ++b)
            for (int c = 0; c < 256; ++c) {
                block[0] = static_cast<std::uint8_t>(c);
                block[1] = static_cast<std::uint8_t>(a);
                block[2] = static_cast<std::uint8_t>(b);
                if (codec::med_predict(block, 2, 1, 1) != oracle_med(a, b, c)) {
                    REQUIRE(codec::med_predict(block, 2, 1, 1) ==
                            oracle_med(a, b, c));
                }
            }
}

TEST_CASE("block_errors golden values") {
    const std::vector<std::uint8_t> block = {150, 147, 144, 145};
    CHECK(codec::block_errors(block, 2) ==
          std::vector<std::int16_t>{0, -3, -6, 1});

    const std::vector<std::uint8_t> flat(16, 200);
    CHECK(codec::block_errors(flat, 4) == std::vector<std::int16_t>(16, 0));
}

TEST_CASE("block errors round-trip on random blocks") {
    testutil::Rng rng(31);
    for (int trial = 0; trial < 10000; ++trial) {
        const int s = (trial % 3 == 0) ? 2 : (trial % 3 == 1 ? 4 : 8);
        std::vector<std::uint8_t> block(static_cast<std::size_t>(s) * s);
        for (auto& px : block)
            px = rng.byte();
        const auto errors = codec::block_errors(block, s);
        CHECK(codec::block_reconstruct(block[0], errors, s) == block);
    }
}

TEST_CASE("block_reconstruct rejects out-of-range pixels") {
    std::vector<std::int16_t> errors = {0, 100, 0, 0};
    CHECK_THROWS_AS(codec::block_reconstruct(200, errors, 2), CorruptionError);
    errors = {0, -100, 0, 0};
    CHECK_THROWS_AS(codec::block_reconstruct(50, errors, 2), CorruptionError);
}

TEST_CASE("arithmetic coding round trip") {
    testutil::Rng rng(32);
    for (const std::size_t len : {std::size_t{1}, std::size_t{17},
                                  std::size_t{1000}, std::size_t{100000}}) {
        std::vector<std::int16_t> symbols(len);
        for (auto& s : symbols)
            s = static_cast<std::int16_t>(static_cast<int>(rng.below(511)) - 255);
        codec::SideInfo si;
        const auto bits = codec::ac_encode(symbols, si);
        CHECK(si.cb_len == bits.size());
        CHECK(si.symbol_total() == symbols.size());

        BitReader reader(bits);
        CHECK(codec::ac_decode(reader, si) == symbols);
    }
}

TEST_CASE("arithmetic coding of a constant stream costs almost nothing") {
    for (const std::size_t len : {std::size_t{1}, std::size_t{100},
                                  std::size_t{100000}}) {
        const std::vector<std::int16_t> symbols(len, -3);
        codec::SideInfo si;
        const auto bits = codec::ac_encode(symbols, si);
        CHECK(bits.size() <= 16);
        BitReader reader(bits);
        CHECK(codec::ac_decode(reader, si) == symbols);
    }
}

TEST_CASE("arithmetic coding of the empty stream") {
    codec::SideInfo si;
    const auto bits = codec::ac_encode(std::vector<std::int16_t>{}, si);
    CHECK(bits.empty());
    CHECK(si.cb_len == 0);
    BitReader reader(bits);
    CHECK(codec::ac_decode(reader, si).empty());
}

TEST_CASE("code length stays within the entropy bound") {
    testutil::Rng rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::int16_t> symbols(4096);
        const int spread = 1 + static_cast<int>(rng.below(255));
        for (auto& s : symbols)
            s = static_cast<std::int16_t>(static_cast<int>(rng.below(
                    static_cast<std::uint32_t>(2 * spread + 1))) - spread);
        codec::SideInfo si;
        const auto bits = codec::ac_encode(symbols, si);

        double entropy_bits = 0;
        for (const auto count : si.counts) {
            if (count == 0)
                continue;
            const double p = static_cast<double>(count) / symbols.size();
            entropy_bits -= count * std::log2(p);
        }
        CHECK(static_cast<double>(bits.size()) <= entropy_bits + 64.0);
    }
}

TEST_CASE("decoding is insensitive to trailing garbage") {
    // other fields follow the code in the share stream, so the decoder
    // must reproduce the symbols whatever bits come after cb_len
    testutil::Rng rng(36);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::int16_t> symbols(200);
        for (auto& s : symbols)
            s = static_cast<std::int16_t>(static_cast<int>(rng.below(21)) - 10);
        codec::SideInfo si;
        const auto bits = codec::ac_encode(symbols, si);

        BitVec padded;
        padded.append(bits);
        for (int i = 0; i < 64; ++i)
            padded.push_back(rng.below(2) != 0);

        BitReader reader(padded);
        CHECK(codec::ac_decode(reader, si) == symbols);
    }
}

TEST_CASE("ac_decode rejects truncated input") {
    std::vector<std::int16_t> symbols(100);
    testutil::Rng rng(34);
    for (auto& s : symbols)
        s = static_cast<std::int16_t>(static_cast<int>(rng.below(511)) - 255);
    codec::SideInfo si;
    const auto bits = codec::ac_encode(symbols, si);

    BitVec truncated;
    for (std::size_t i = 0; i + 8 < bits.size(); ++i)
        truncated.push_back(bits[i]);
    BitReader reader(truncated);
    CHECK_THROWS_AS(codec::ac_decode(reader, si), CodecError);
}

TEST_CASE("short inputs obey only the round-trip law") {
    // tiny inputs compress poorly; no particular bit pattern is promised
    const std::vector<std::int16_t> symbols = {-3, -6, 1};
    codec::SideInfo si;
    const auto bits = codec::ac_encode(symbols, si);
    BitReader reader(bits);
    CHECK(codec::ac_decode(reader, si) == symbols);
}

TEST_CASE("side info widths and sizes") {
    const std::int64_t px368 = 368 * 368;
    CHECK(codec::si_len_width(px368) == 21);
    CHECK(codec::si_count_width(px368) == 18);
    CHECK(codec::si_bit_size(px368) == 21 + 511 * 18);
    CHECK(codec::si_bit_size(px368) == 9219);
}

TEST_CASE("side info round trip") {
    codec::SideInfo si;
    si.cb_len = 123456;
    testutil::Rng rng(35);
    for (auto& c : si.counts)
        c = rng.below(60000);

    BitVec bits;
    codec::si_pack(si, 368 * 368, bits);
    CHECK(bits.size() == static_cast<std::size_t>(codec::si_bit_size(368 * 368)));

    BitReader reader(bits);
    CHECK(codec::si_unpack(reader, 368 * 368) == si);

    // all-zero side info
    codec::SideInfo zero;
    BitVec zbits;
    codec::si_pack(zero, 1024, zbits);
    BitReader zreader(zbits);
    CHECK(codec::si_unpack(zreader, 1024) == zero);
}

TEST_CASE("side info field overflow is rejected") {
    codec::SideInfo si;
    si.cb_len = 1ull << 40;
    BitVec bits;
    CHECK_THROWS_AS(codec::si_pack(si, 1024, bits), CodecError);

    codec::SideInfo si2;
    si2.counts[0] = 1u << 20; // width for 1024 pixels is 10 bits
    BitVec bits2;
    CHECK_THROWS_AS(codec::si_pack(si2, 1024, bits2), CodecError);
}
