#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Arithmetic in GF(2^8) modulo p(y) = y^8 + y^4 + y^3 + y + 1 (0x11B),
// polynomial evaluation, and full coefficient recovery from r points.
namespace rdhei::gf256 {

// A field element is a byte read as a binary polynomial of degree <= 7.
using FieldElement = std::uint8_t;

// Share polynomial, low coefficient first: coeffs[0] is the secret pixel,
// coeffs[1..r-1] the per-block random values.
using SharePoly = std::vector<FieldElement>;

inline constexpr unsigned kReductionPoly = 0x11B;

inline FieldElement add(FieldElement a, FieldElement b) {
    return static_cast<FieldElement>(a ^ b);
}

// Definitional product: carry-less shift-and-reduce over 0x11B.
FieldElement mul_shift_reduce(FieldElement a, FieldElement b);

// Table-accelerated product; bit-identical to mul_shift_reduce (tested
// exhaustively over all 65536 pairs).
FieldElement mul(FieldElement a, FieldElement b);

FieldElement pow(FieldElement a, unsigned k);

// Multiplicative inverse. Throws std::domain_error on zero.
FieldElement inv(FieldElement a);

// coeffs[0] ^ coeffs[1]*x ^ ... ^ coeffs[r-1]*x^(r-1)
FieldElement eval_poly(std::span<const FieldElement> coeffs, FieldElement x);

// The unique polynomial of degree < xs.size() through the given points,
// by Lagrange basis expansion. Returns the full coefficient vector; the
// callers need the random coefficients as well as the secret.
// Throws std::invalid_argument on empty input, size mismatch, zero x, or
// duplicate x.
SharePoly recover_coeffs(std::span<const FieldElement> xs,
                         std::span<const FieldElement> ys);

} // namespace rdhei::gf256
