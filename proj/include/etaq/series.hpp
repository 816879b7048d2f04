#pragma once

// Exact truncated formal power series in one variable q, over the integers
// (arbitrary precision) or over GF(2) (bit-packed).
//
// A Series with precision P stores coefficients for exponents 0..P-1; binary
// operations require matching rings and propagate the minimum precision of
// their operands. Values are immutable after construction.

#include "etaq/gf2.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace etaq {

enum class Ring { INT, GF2 };

const char* ring_name(Ring r);

class Series {
public:
    Series() = default; // precision 0, identically zero

    static Series zero(Ring r, std::size_t precision);
    static Series one(Ring r, std::size_t precision);
    // q^exponent truncated to `precision` terms.
    static Series monomial(Ring r, std::size_t exponent, std::size_t precision);
    static Series from_coeffs(std::vector<mpz_class> coeffs, Ring r = Ring::INT);
    static Series from_ints(const std::vector<long>& coeffs, Ring r = Ring::INT);

    Ring ring() const { return ring_; }
    std::size_t precision() const { return prec_; }
    // Smallest exponent with nonzero coefficient, or precision() if zero.
    std::size_t valuation() const { return val_; }
    bool is_zero() const { return val_ == prec_; }

    mpz_class coeff(std::size_t n) const;   // GF2 coefficients come back as 0/1
    int coeff_mod2(std::size_t n) const;

    const std::vector<gf2::word>& words() const { return words_; } // GF2 only

    friend Series add(const Series& a, const Series& b);
    friend Series sub(const Series& a, const Series& b);
    friend Series mul(const Series& a, const Series& b);
    friend Series inverse(const Series& a);
    friend Series dissect(const Series& a, std::size_t m, std::size_t r);
    friend Series inflate(const Series& a, std::size_t m);
    friend Series shift(const Series& a, std::size_t k);
    friend Series truncate(const Series& a, std::size_t P);
    friend Series to_gf2(const Series& a);
    friend Series euler_product(std::size_t k, std::size_t P, Ring ring);
    friend bool operator==(const Series& a, const Series& b);
    friend Series read_cache(std::istream& is);

private:
    Series(Ring r, std::size_t prec);
    void normalize(); // recompute valuation, clear GF2 tail bits

    Ring ring_ = Ring::INT;
    std::size_t prec_ = 0;
    std::size_t val_ = 0;
    std::vector<mpz_class> ints_;   // INT: size prec_
    std::vector<gf2::word> words_;  // GF2: size ceil(prec_/64)
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series mul(const Series& a, const Series& b);
// Requires a unit constant term (+-1 over INT, 1 over GF2).
Series inverse(const Series& a);
// Binary exponentiation; negative e routes through inverse().
Series pow(const Series& a, long e);
// Sum over n of coeff(m*n + r) q^n, precision ceil((P-r)/m).
Series dissect(const Series& a, std::size_t m, std::size_t r);
// Substitution q -> q^m; precision grows to m*(P-1)+1 so that
// dissect(inflate(a, m), m, 0) == a exactly.
Series inflate(const Series& a, std::size_t m);
// Multiplication by q^k; precision grows to P+k.
Series shift(const Series& a, std::size_t k);
Series truncate(const Series& a, std::size_t P);
Series to_gf2(const Series& a);

// (q^k; q^k)_infinity truncated to P terms via the pentagonal-number expansion.
Series euler_product(std::size_t k, std::size_t P, Ring ring = Ring::INT);

bool operator==(const Series& a, const Series& b);
inline bool operator!=(const Series& a, const Series& b) { return !(a == b); }
// True when a and b agree on the first n coefficients of both.
bool prefix_equal(const Series& a, const Series& b, std::size_t n);

std::ostream& operator<<(std::ostream& os, const Series& s);

// Coefficient cache file:
//   qseries v1 ring=<int|gf2> precision=<P>
// followed by one decimal coefficient per line (INT) or one 64-bit
// hexadecimal word per line, little-endian bit order (GF2).
void write_cache(std::ostream& os, const Series& s);
Series read_cache(std::istream& is);

} // namespace etaq
