#include "rdhei/gf256.hpp"

#include <array>
#include <stdexcept>

namespace rdhei::gf256 {

FieldElement mul_shift_reduce(FieldElement a, FieldElement b) {
    unsigned acc = 0;
    unsigned aa = a;
    unsigned bb = b;
    for (int bit = 0; bit < 8; ++bit) {
        if (bb & 1u)
            acc ^= aa;
        bb >>= 1;
        aa <<= 1;
        if (aa & 0x100u)
            aa ^= kReductionPoly;
    }
    return static_cast<FieldElement>(acc);
}

namespace {

struct MulTable {
    std::array<std::uint8_t, 256 * 256> t{};
    MulTable() {
        for (unsigned a = 0; a < 256; ++a)
            for (unsigned b = 0; b < 256; ++b)
                t[(a << 8) | b] = mul_shift_reduce(static_cast<FieldElement>(a),
                                                   static_cast<FieldElement>(b));
    }
};

const MulTable& mul_table() {
    static const MulTable table;
    return table;
}

struct InvTable {
    std::array<std::uint8_t, 256> t{};
    InvTable() {
        // a^254 = a^-1 for a != 0 (the multiplicative group has order 255)
        for (unsigned a = 1; a < 256; ++a)
            t[a] = pow(static_cast<FieldElement>(a), 254);
    }
};

const InvTable& inv_table() {
    static const InvTable table;
    return table;
}

} // namespace

FieldElement mul(FieldElement a, FieldElement b) {
    return mul_table().t[(static_cast<unsigned>(a) << 8) | b];
}

FieldElement pow(FieldElement a, unsigned k) {
    FieldElement result = 1;
    FieldElement base = a;
    while (k != 0) {
        if (k & 1u)
            result = mul(result, base);
        base = mul(base, base);
        k >>= 1;
    }
    return result;
}

FieldElement inv(FieldElement a) {
    if (a == 0)
        throw std::domain_error("gf256: inverse of zero");
    return inv_table().t[a];
}

FieldElement eval_poly(std::span<const FieldElement> coeffs, FieldElement x) {
    // Horner, high coefficient first
    FieldElement acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = add(mul(acc, x), coeffs[i]);
    return acc;
}

SharePoly recover_coeffs(std::span<const FieldElement> xs,
                         std::span<const FieldElement> ys) {
    const std::size_t r = xs.size();
    if (r == 0)
        throw std::invalid_argument("recover_coeffs: no points");
    if (ys.size() != r)
        throw std::invalid_argument("recover_coeffs: xs/ys size mismatch");
    for (std::size_t i = 0; i < r; ++i) {
        if (xs[i] == 0)
            throw std::invalid_argument("recover_coeffs: zero evaluation point");
        for (std::size_t j = i + 1; j < r; ++j)
            if (xs[i] == xs[j])
                throw std::invalid_argument("recover_coeffs: duplicate evaluation point");
    }

    SharePoly out(r, 0);
    SharePoly basis;
    basis.reserve(r);
    for (std::size_t k = 0; k < r; ++k) {
        // numerator prod_{j!=k} (x ^ xs[j]) expanded low-first; denominator
        // prod_{j!=k} (xs[k] ^ xs[j])
        basis.assign(1, 1);
        FieldElement denom = 1;
        for (std::size_t j = 0; j < r; ++j) {
            if (j == k)
                continue;
            basis.push_back(0);
            for (std::size_t d = basis.size() - 1; d-- > 0;) {
                basis[d + 1] = add(basis[d + 1], basis[d]);
                basis[d] = mul(basis[d], xs[j]);
            }
            denom = mul(denom, add(xs[k], xs[j]));
        }
        const FieldElement scale = mul(ys[k], inv(denom));
        for (std::size_t d = 0; d < r; ++d)
            out[d] = add(out[d], mul(basis[d], scale));
    }
    return out;
}

} // namespace rdhei::gf256
