#pragma once

// Bit-packed polynomial arithmetic over GF(2)[q].
//
// Coefficient i lives in bit (i mod 64) of word (i / 64), little-endian bit
// order within each word. All routines require the caller to keep bits at
// positions >= nbits cleared; they preserve that invariant on output.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace etaq::gf2 {

using word = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

inline std::size_t words_for(std::size_t nbits) {
    return (nbits + word_bits - 1) / word_bits;
}

inline bool get_bit(const std::vector<word>& w, std::size_t i) {
    return (w[i / word_bits] >> (i % word_bits)) & 1u;
}

inline void set_bit(std::vector<word>& w, std::size_t i, bool v) {
    word mask = word(1) << (i % word_bits);
    if (v)
        w[i / word_bits] |= mask;
    else
        w[i / word_bits] &= ~mask;
}

inline void flip_bit(std::vector<word>& w, std::size_t i) {
    w[i / word_bits] ^= word(1) << (i % word_bits);
}

// Clears bits at positions >= nbits in the last word.
void trim(std::vector<word>& w, std::size_t nbits);

// c = a * b as polynomials over GF(2), truncated to out_bits coefficients.
// Karatsuba above a word-count threshold, word-level schoolbook below;
// the 64x64 kernel uses PCLMUL when the CPU has it.
std::vector<word> mul(const std::vector<word>& a, std::size_t abits,
                      const std::vector<word>& b, std::size_t bbits,
                      std::size_t out_bits);

// a(q)^2 = a(q^2) over GF(2); linear-time bit spreading.
std::vector<word> square(const std::vector<word>& a, std::size_t abits,
                         std::size_t out_bits);

// Newton iteration for 1/a truncated to out_bits; requires a(0) = 1.
std::vector<word> inverse(const std::vector<word>& a, std::size_t abits,
                          std::size_t out_bits);

// Karatsuba recursion threshold in words, exposed for tests.
inline constexpr std::size_t karatsuba_threshold = 64;

bool has_clmul_hardware();

} // namespace etaq::gf2
