#include <doctest.h>

#include <algorithm>

#include "rdhei/codec.hpp"
#include "rdhei/error.hpp"
#include "rdhei/gf256.hpp"
#include "rdhei/hc_scheme.hpp"
#include "rdhei/sr_scheme.hpp"
#include "testutil.hpp"

using namespace rdhei;

namespace {

std::vector<std::uint8_t> random_payload(std::size_t len, std::uint64_t seed) {
    testutil::Rng rng(seed);
    std::vector<std::uint8_t> out(len);
    for (auto& b : out)
        b = rng.byte();
    return out;
}

} // namespace

TEST_CASE("reduced sizes match the published 512x512 values") {
    struct Case {
        SchemeParams params;
        int side;
    };
    const std::vector<Case> cases = {{{4, 2, 2}, 376},
                                     {{8, 2, 2}, 368},
                                     {{4, 4, 4}, 280},
                                     {{8, 4, 4}, 264}};
    for (const auto& c : cases)
        for (int id = 0; id < c.params.share_count; ++id) {
            const auto layout = sr_layout(c.params, 512, 512, id);
            CHECK(layout.height == c.side);
            CHECK(layout.width == c.side);
        }
}

TEST_CASE("layout accounting") {
    const SchemeParams params{4, 2, 3};
    for (int id = 0; id < 3; ++id) {
        const auto layout = sr_layout(params, 64, 64, id);
        CHECK(layout.fp_count + layout.wb_count ==
              params.block_total(64, 64));
        CHECK(layout.tp ==
              layout.fp_count + 16 * layout.wb_count);
        CHECK(layout.height % 4 == 0);
        CHECK(layout.width % 4 == 0);
        // trailer fits behind the data
        CHECK(layout.reduced_pixels() - layout.tp >= 8);
    }
}

TEST_CASE("layout grows a block row when the trailer would overlap data") {
    // 8x12, S=2, (2,2): TP = 60 pixels but the 8x8 candidate puts trailer
    // pixels at block-major positions starting at 50
    const SchemeParams params{2, 2, 2};
    for (int id = 0; id < 2; ++id) {
        const auto layout = sr_layout(params, 8, 12, id);
        CHECK(layout.tp == 60);
        CHECK(layout.width == 8);
        CHECK(layout.height == 10);

        // all eight trailer pixels must live past the data region
        const std::size_t base = static_cast<std::size_t>(layout.height - 1) *
                                     layout.width +
                                 layout.width - 8;
        for (int t = 0; t < 8; ++t) {
            bool in_data = false;
            for (std::int64_t p = 0; p < layout.tp; ++p)
                if (sr_block_major_offset(layout, p) ==
                    static_cast<std::int64_t>(base) + t)
                    in_data = true;
            CHECK_FALSE(in_data);
        }
    }

    // the grown layout survives an encrypt / trailer-parse round trip
    const auto img = testutil::noise_image(8, 12, 60);
    auto rng = seeded_rng(11);
    const auto shares = sr_encrypt(img, params, testutil::test_ke(), *rng);
    for (const auto& share : shares) {
        CHECK(share.pixels.height == 10);
        CHECK(share.pixels.width == 8);
        const auto layout = sr_read_trailer(share.pixels);
        CHECK(layout.orig_height == 8);
        CHECK(layout.orig_width == 12);
    }
}

TEST_CASE("trailer round trip and validation") {
    const auto img = testutil::smooth_image(64, 64, 61);
    const SchemeParams params{8, 2, 2};
    auto rng = seeded_rng(12);
    const auto shares = sr_encrypt(img, params, testutil::test_ke(), *rng);
    REQUIRE(shares.size() == 2);
    for (const auto& share : shares) {
        const auto layout = sr_read_trailer(share.pixels);
        CHECK(layout.id == share.id);
        CHECK(layout.orig_height == 64);
        CHECK(layout.orig_width == 64);
        CHECK(layout.params.block_side == 8);
        CHECK(share.kind == ShareKind::reduced);
    }

    auto broken = shares[0].pixels;
    broken.pixels[broken.pixels.size() - 8] = 3; // block side that cannot tile
    CHECK_THROWS_AS(sr_read_trailer(broken), CorruptionError);
}

TEST_CASE("sr embed and extract round trip") {
    const auto img = testutil::smooth_image(64, 64, 62);
    const SchemeParams params{4, 2, 2};
    const auto kd = testutil::test_kd();
    auto rng = seeded_rng(13);
    const auto shares = sr_encrypt(img, params, testutil::test_ke(), *rng);

    const auto free_bits = sr_vacated_bits(shares[0].pixels);
    REQUIRE(free_bits > 32);

    SUBCASE("zero payload") {
        const auto marked = sr_embed(shares[0].pixels, {}, kd);
        CHECK(sr_extract(marked, kd).empty());
    }
    SUBCASE("half capacity") {
        const auto payload = random_payload(
            static_cast<std::size_t>((free_bits - 32) / 16), 5);
        const auto marked = sr_embed(shares[0].pixels, payload, kd);
        CHECK(sr_extract(marked, kd) == payload);
    }
    SUBCASE("full capacity") {
        const auto payload = random_payload(
            static_cast<std::size_t>((free_bits - 32) / 8), 6);
        const auto marked = sr_embed(shares[0].pixels, payload, kd);
        CHECK(sr_extract(marked, kd) == payload);
    }
    SUBCASE("overflow") {
        const auto payload = random_payload(
            static_cast<std::size_t>((free_bits - 32) / 8) + 1, 7);
        CHECK_THROWS_AS(sr_embed(shares[0].pixels, payload, kd), CapacityError);
    }
}

TEST_CASE("vacating fails on an incompressible share") {
    const auto img = testutil::noise_image(64, 64, 63);
    const SchemeParams params{4, 2, 2};
    auto rng = seeded_rng(14);
    const auto shares = sr_encrypt(img, params, testutil::test_ke(), *rng);
    CHECK_THROWS_AS(sr_embed(shares[0].pixels, {}, testutil::test_kd()),
                    VacatingError);
    CHECK_THROWS_AS(sr_vacated_bits(shares[0].pixels), VacatingError);
}

TEST_CASE("sr recovery from marked shares is exact for every subset") {
    const auto img = testutil::smooth_image(64, 64, 64);
    const auto ke = testutil::test_ke();
    const auto kd = testutil::test_kd();

    const std::vector<SchemeParams> configs = {{4, 2, 2}, {8, 2, 3}, {4, 3, 4}};
    for (const auto& params : configs) {
        auto rng = seeded_rng(15 + static_cast<std::uint64_t>(params.share_count));
        const auto shares = sr_encrypt(img, params, ke, *rng);

        std::vector<GrayImage> marked;
        for (const auto& share : shares) {
            const auto free_bits = sr_vacated_bits(share.pixels);
            const auto payload = random_payload(
                static_cast<std::size_t>((free_bits - 32) / 8),
                static_cast<std::uint64_t>(share.id) + 70);
            marked.push_back(sr_embed(share.pixels, payload, kd));
            CHECK(sr_extract(marked.back(), kd) == payload);
        }

        std::vector<int> pick(static_cast<std::size_t>(params.threshold));
        for (int i = 0; i < params.threshold; ++i)
            pick[static_cast<std::size_t>(i)] = i;
        for (;;) {
            std::vector<GrayImage> subset;
            for (const int id : pick)
                subset.push_back(marked[static_cast<std::size_t>(id)]);
            CHECK(sr_recover(subset, ke) == img);

            int k = params.threshold - 1;
            while (k >= 0 && pick[static_cast<std::size_t>(k)] ==
                                 params.share_count - params.threshold + k)
                --k;
            if (k < 0)
                break;
            ++pick[static_cast<std::size_t>(k)];
            for (int j = k + 1; j < params.threshold; ++j)
                pick[static_cast<std::size_t>(j)] =
                    pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
}

TEST_CASE("sr recovery accepts surplus shares and checks them") {
    const auto img = testutil::smooth_image(64, 64, 69);
    const auto ke = testutil::test_ke();
    const auto kd = testutil::test_kd();
    const SchemeParams params{8, 2, 3};
    auto rng = seeded_rng(23);
    const auto shares = sr_encrypt(img, params, ke, *rng);

    std::vector<GrayImage> marked;
    for (const auto& share : shares)
        marked.push_back(sr_embed(share.pixels, {}, kd));

    // all three shares: one more than the threshold
    CHECK(sr_recover(marked, ke) == img);

    // a flipped first-pixel share in the surplus image breaks consistency
    auto tampered = marked;
    const auto layout = sr_read_trailer(tampered[2]);
    const auto off = sr_block_major_offset(layout, layout.fp_base());
    tampered[2].pixels[static_cast<std::size_t>(off)] ^= 0x20;
    CHECK_THROWS_AS(sr_recover(tampered, ke), CorruptionError);
}

TEST_CASE("parsing garbage never crashes") {
    const auto kd = testutil::test_kd();
    const auto ke = testutil::test_ke();
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto junk = testutil::noise_image(
            8 * (1 + seed % 6), 8 * (1 + (seed / 2) % 6), 500 + seed);
        try {
            (void)sr_extract(junk, kd);
        } catch (const Error&) {
        }
        try {
            const std::vector<GrayImage> one = {junk};
            (void)sr_recover(one, ke);
        } catch (const Error&) {
        }
        try {
            (void)hc_extract(junk, kd);
        } catch (const Error&) {
        }
        try {
            const std::vector<GrayImage> one = {junk};
            (void)hc_recover(one, ke);
        } catch (const Error&) {
        }
    }
}

TEST_CASE("sr (2,2) and (4,4) recover identical bytes") {
    const auto img = testutil::smooth_image(64, 64, 65);
    const auto ke = testutil::test_ke();
    const auto kd = testutil::test_kd();

    auto run = [&](const SchemeParams& params, std::uint64_t seed) {
        auto rng = seeded_rng(seed);
        const auto shares = sr_encrypt(img, params, ke, *rng);
        std::vector<GrayImage> marked;
        for (const auto& share : shares)
            marked.push_back(sr_embed(share.pixels, {}, kd));
        return sr_recover(marked, ke);
    };
    const auto via22 = run({8, 2, 2}, 16);
    const auto via44 = run({8, 4, 4}, 17);
    CHECK(via22 == img);
    CHECK(via44 == img);
    CHECK(via22 == via44);
}

TEST_CASE("worked example end to end at the block level") {
    // encrypted block of the third share image
    const std::vector<std::uint8_t> encrypted = {150, 147, 144, 145};
    const auto errors = codec::block_errors(encrypted, 2);
    CHECK(errors == std::vector<std::int16_t>{0, -3, -6, 1});

    codec::SideInfo si;
    const auto bits = codec::ac_encode(
        std::vector<std::int16_t>(errors.begin() + 1, errors.end()), si);
    BitReader reader(bits);
    const auto decoded = codec::ac_decode(reader, si);
    std::vector<std::int16_t> full = {0};
    full.insert(full.end(), decoded.begin(), decoded.end());
    CHECK(codec::block_reconstruct(150, full, 2) == encrypted);

    // first-pixel shares decrypt to 125 with coefficients (181, 154)
    const std::vector<std::uint8_t> xs = {21, 208, 221};
    const std::vector<std::uint8_t> ys = {28, 112, 150};
    const auto poly = gf256::recover_coeffs(xs, ys);
    CHECK(poly == gf256::SharePoly{125, 181, 154});

    // remaining pixels come from the whole block of the third image
    const std::uint8_t mask =
        gf256::add(gf256::mul(poly[1], 221),
                   gf256::mul(poly[2], gf256::pow(221, 2)));
    CHECK(gf256::add(encrypted[1], mask) == 120);
    CHECK(gf256::add(encrypted[2], mask) == 123);
    CHECK(gf256::add(encrypted[3], mask) == 122);
}

TEST_CASE("corrupted side info is rejected at extraction") {
    const auto img = testutil::smooth_image(64, 64, 66);
    const SchemeParams params{4, 2, 2};
    const auto kd = testutil::test_kd();
    auto rng = seeded_rng(18);
    const auto shares = sr_encrypt(img, params, testutil::test_ke(), *rng);
    auto marked = sr_embed(shares[0].pixels, random_payload(16, 8), kd);

    // the SI occupies the head of the embeddable stream; stream pixel 2
    // (block-major position 3) lies inside the count table, so flipping a
    // bit there breaks the count sum
    const auto layout = sr_read_trailer(marked);
    REQUIRE(layout.wb_count > 0);
    const auto off = sr_block_major_offset(layout, 3);
    marked.pixels[static_cast<std::size_t>(off)] ^= 0x10;
    CHECK_THROWS_AS(sr_extract(marked, kd), ExtractionError);
}

TEST_CASE("trailer disagreement across shares is rejected") {
    const auto img = testutil::smooth_image(64, 64, 67);
    const auto ke = testutil::test_ke();
    const auto kd = testutil::test_kd();
    auto rng1 = seeded_rng(19);
    auto rng2 = seeded_rng(20);
    const SchemeParams p22{8, 2, 2};
    const SchemeParams p23{8, 2, 3};
    const auto a = sr_encrypt(img, p22, ke, *rng1);
    const auto b = sr_encrypt(img, p23, ke, *rng2);

    std::vector<GrayImage> mixed = {sr_embed(a[0].pixels, {}, kd),
                                    sr_embed(b[1].pixels, {}, kd)};
    CHECK_THROWS_AS(sr_recover(mixed, ke), RecoveryError);

    std::vector<GrayImage> dup = {sr_embed(a[0].pixels, {}, kd),
                                  sr_embed(a[0].pixels, {}, kd)};
    CHECK_THROWS_AS(sr_recover(dup, ke), RecoveryError);

    std::vector<GrayImage> short_set = {sr_embed(a[0].pixels, {}, kd)};
    CHECK_THROWS_AS(sr_recover(short_set, ke), RecoveryError);
}

TEST_CASE("expansion ratios") {
    const SchemeParams p822{8, 2, 2};
    const double measured = sr_expansion(p822, 512, 512);
    CHECK(measured == doctest::Approx(2.0 * 368 * 368 / (512.0 * 512)));

    // increasing r with n fixed shrinks the shares
    const double r2 = sr_expansion({4, 2, 4}, 512, 512);
    const double r3 = sr_expansion({4, 3, 4}, 512, 512);
    const double r4 = sr_expansion({4, 4, 4}, 512, 512);
    CHECK(r2 > r3);
    CHECK(r3 > r4);
}

TEST_CASE("smooth shares vacate more than noisy ones") {
    const SchemeParams params{8, 2, 2};
    const auto ke = testutil::test_ke();
    auto rng1 = seeded_rng(21);
    auto rng2 = seeded_rng(22);

    const auto smooth =
        sr_encrypt(testutil::gradient_image(64, 64), params, ke, *rng1);
    const auto noisy =
        sr_encrypt(testutil::noise_image(64, 64, 68), params, ke, *rng2);

    const auto smooth_bits = sr_vacated_bits(smooth[0].pixels);
    CHECK(smooth_bits > 0);
    std::int64_t noisy_bits = 0;
    try {
        noisy_bits = sr_vacated_bits(noisy[0].pixels);
    } catch (const VacatingError&) {
        noisy_bits = 0;
    }
    CHECK(smooth_bits > noisy_bits);
}
