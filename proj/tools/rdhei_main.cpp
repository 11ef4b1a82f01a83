#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rdhei/error.hpp"
#include "rdhei/hc_scheme.hpp"
#include "rdhei/image.hpp"
#include "rdhei/keys.hpp"
#include "rdhei/metrics.hpp"
#include "rdhei/sharing.hpp"
#include "rdhei/sr_scheme.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitCorrupt = 4;

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw rdhei::ParamError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path,
                std::span<const std::uint8_t> data) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw rdhei::Error("cannot open " + tmp.string() + " for writing");
        out.write(reinterpret_cast<const char*>(data.data()),
                  static_cast<std::streamsize>(data.size()));
        if (!out)
            throw rdhei::Error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

struct Options {
    std::string scheme;
    int block_side = 8;
    int threshold = 0;
    int share_count = 0;
    std::string key_path;
    std::string dkey_path;
    std::string payload_path;
    std::string out_path;
    std::string out_dir;
    std::string orig_path;
    std::string recovered_path;
    std::vector<std::string> inputs;
    std::optional<std::uint64_t> seed;
};

int run_encrypt(const Options& opt) {
    const auto img = rdhei::read_pgm_file(opt.inputs.at(0));
    const auto key = rdhei::load_encryption_key(opt.key_path);
    rdhei::SchemeParams params{opt.block_side, opt.threshold, opt.share_count};
    auto rng = opt.seed ? rdhei::seeded_rng(*opt.seed) : rdhei::os_rng();

    const auto shares = opt.scheme == "hc"
                            ? rdhei::hc_encrypt(img, params, key, *rng)
                            : rdhei::sr_encrypt(img, params, key, *rng);
    std::filesystem::create_directories(opt.out_dir);
    for (const auto& share : shares) {
        const auto path = std::filesystem::path(opt.out_dir) /
                          ("share_" + std::to_string(share.id) + ".pgm");
        rdhei::write_pgm_file(share.pixels, path);
        std::cout << path.string() << "\n";
    }
    return kExitOk;
}

int run_embed(const Options& opt) {
    const auto share = rdhei::read_pgm_file(opt.inputs.at(0));
    const auto key = rdhei::load_data_hiding_key(opt.dkey_path);
    const auto payload = read_file(opt.payload_path);
    const auto marked = opt.scheme == "hc"
                            ? rdhei::hc_embed(share, payload, key)
                            : rdhei::sr_embed(share, payload, key);
    rdhei::write_pgm_file(marked, opt.out_path);
    return kExitOk;
}

int run_extract(const Options& opt) {
    const auto share = rdhei::read_pgm_file(opt.inputs.at(0));
    const auto key = rdhei::load_data_hiding_key(opt.dkey_path);
    const auto payload = opt.scheme == "hc" ? rdhei::hc_extract(share, key)
                                            : rdhei::sr_extract(share, key);
    write_file(opt.out_path, payload);
    return kExitOk;
}

int run_recover(const Options& opt) {
    std::vector<rdhei::GrayImage> shares;
    shares.reserve(opt.inputs.size());
    for (const auto& path : opt.inputs)
        shares.push_back(rdhei::read_pgm_file(path));
    const auto key = rdhei::load_encryption_key(opt.key_path);
    const auto img = opt.scheme == "hc" ? rdhei::hc_recover(shares, key)
                                        : rdhei::sr_recover(shares, key);
    rdhei::write_pgm_file(img, opt.out_path);
    return kExitOk;
}

int run_metrics(const Options& opt) {
    if (!opt.orig_path.empty() && !opt.recovered_path.empty()) {
        const auto orig = rdhei::read_pgm_file(opt.orig_path);
        const auto rec = rdhei::read_pgm_file(opt.recovered_path);
        const bool exact = rdhei::metrics::exact_match(orig, rec);
        std::cout << "exact=" << (exact ? "true" : "false") << "\n";
        const double psnr = rdhei::metrics::psnr(orig, rec);
        if (std::isinf(psnr))
            std::cout << "psnr=inf\n";
        else
            std::printf("psnr=%.4f\n", psnr);
    }

    std::vector<rdhei::GrayImage> shares;
    for (const auto& path : opt.inputs)
        shares.push_back(rdhei::read_pgm_file(path));
    if (shares.size() > 1 && !opt.scheme.empty()) {
        // refuse to mix shares produced under different parameters
        for (const auto& share : shares) {
            bool consistent = true;
            if (opt.scheme == "hc") {
                const auto h0 = rdhei::hc_read_header(shares[0]);
                const auto h = rdhei::hc_read_header(share);
                consistent = h.params.block_side == h0.params.block_side &&
                             h.params.threshold == h0.params.threshold &&
                             h.params.share_count == h0.params.share_count;
            } else {
                const auto l0 = rdhei::sr_read_trailer(shares[0]);
                const auto l = rdhei::sr_read_trailer(share);
                consistent = l.params.block_side == l0.params.block_side &&
                             l.params.threshold == l0.params.threshold &&
                             l.params.share_count == l0.params.share_count &&
                             l.orig_height == l0.orig_height &&
                             l.orig_width == l0.orig_width;
            }
            if (!consistent)
                throw rdhei::CorruptionError(
                    "metrics: share parameters are inconsistent across files");
        }
    }
    // round half away from zero so table-style values print as published
    const auto r4 = [](double v) { return std::llround(v * 1e4) / 1e4; };
    for (std::size_t i = 0; i < shares.size(); ++i) {
        std::printf("entropy_%zu=%.4f\n", i,
                    r4(rdhei::metrics::entropy(shares[i])));
        if (opt.scheme == "hc")
            std::printf("er_%zu=%.4f\n", i,
                        r4(rdhei::metrics::hc_measured_er(shares[i])));
        else if (opt.scheme == "sr")
            std::printf("er_%zu=%.4f\n", i,
                        r4(rdhei::metrics::sr_measured_er(shares[i])));
    }
    if (!shares.empty() && opt.scheme == "sr") {
        const auto layout = rdhei::sr_read_trailer(shares[0]);
        std::printf("expansion=%.4f\n",
                    rdhei::metrics::expansion(shares, layout.orig_height,
                                              layout.orig_width));
    } else if (!shares.empty() && opt.scheme == "hc" && !opt.orig_path.empty()) {
        const auto orig = rdhei::read_pgm_file(opt.orig_path);
        std::printf("expansion=%.4f\n",
                    rdhei::metrics::expansion(shares, orig.height, orig.width));
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Threshold secret-image sharing with reversible data hiding"};
    app.require_subcommand(1);

    Options opt;
    const auto add_scheme = [&](CLI::App* cmd) {
        cmd->add_option("--scheme", opt.scheme, "hc (high capacity) or sr (size reduced)")
            ->required()
            ->check(CLI::IsMember({"hc", "sr"}));
    };

    auto* encrypt = app.add_subcommand("encrypt", "split an image into encrypted shares");
    add_scheme(encrypt);
    encrypt->add_option("--block", opt.block_side, "block side S")->required();
    encrypt->add_option("--r", opt.threshold, "recovery threshold r")->required();
    encrypt->add_option("--n", opt.share_count, "number of shares n")->required();
    encrypt->add_option("--key", opt.key_path, "32-byte encryption key file")->required();
    encrypt->add_option("--seed", opt.seed, "fix the coefficient rng (testing only)");
    encrypt->add_option("input", opt.inputs, "input PGM")->required()->expected(1);
    encrypt->add_option("--out-dir", opt.out_dir, "output directory")->required();

    auto* embed = app.add_subcommand("embed", "embed a payload into one share");
    add_scheme(embed);
    embed->add_option("--dkey", opt.dkey_path, "32-byte data hiding key file")->required();
    embed->add_option("--payload", opt.payload_path, "payload file")->required();
    embed->add_option("input", opt.inputs, "share PGM")->required()->expected(1);
    embed->add_option("--out", opt.out_path, "marked share output")->required();

    auto* extract = app.add_subcommand("extract", "extract the payload from a marked share");
    add_scheme(extract);
    extract->add_option("--dkey", opt.dkey_path, "32-byte data hiding key file")->required();
    extract->add_option("input", opt.inputs, "marked share PGM")->required()->expected(1);
    extract->add_option("--out", opt.out_path, "payload output")->required();

    auto* recover = app.add_subcommand("recover", "recover the original image from r shares");
    add_scheme(recover);
    recover->add_option("--key", opt.key_path, "32-byte encryption key file")->required();
    recover->add_option("inputs", opt.inputs, "share PGMs")->required();
    recover->add_option("--out", opt.out_path, "recovered image output")->required();

    auto* metrics = app.add_subcommand("metrics", "entropy, rates, and exactness report");
    metrics->add_option("--scheme", opt.scheme, "interpret shares as hc or sr")
        ->check(CLI::IsMember({"hc", "sr"}));
    metrics->add_option("--orig", opt.orig_path, "original image");
    metrics->add_option("--recovered", opt.recovered_path, "recovered image");
    metrics->add_option("shares", opt.inputs, "share PGMs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (encrypt->parsed())
            return run_encrypt(opt);
        if (embed->parsed())
            return run_embed(opt);
        if (extract->parsed())
            return run_extract(opt);
        if (recover->parsed())
            return run_recover(opt);
        return run_metrics(opt);
    } catch (const rdhei::CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const rdhei::VacatingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapacity;
    } catch (const rdhei::ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const rdhei::Error& e) {
        // PGM, corruption, extraction, and recovery failures
        std::cerr << "error: " << e.what() << "\n";
        return kExitCorrupt;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCorrupt;
    }
}
