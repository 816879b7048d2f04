#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "etaq/series.hpp"

namespace etaq {

// Exact table of partition counts, built once by dynamic programming.
// t == 0 counts unrestricted partitions p(n); t >= 2 counts partitions
// with no part divisible by t.
class RegularCountTable {
public:
    RegularCountTable(unsigned t, std::size_t nmax);

    unsigned t() const { return t_; }
    std::size_t nmax() const { return counts_.size() - 1; }
    const mpz_class& count(std::size_t n) const;

private:
    unsigned t_;
    std::vector<mpz_class> counts_;
};

// Partitions of 0..nmax with no part divisible by t. Requires t >= 2.
RegularCountTable count_regular(unsigned t, std::size_t nmax);

// Unrestricted partitions of 0..nmax.
RegularCountTable count_partitions(std::size_t nmax);

// INT series of length P whose coefficient of q^n is count_regular(t)(n).
// Built from the DP table, independently of the series engine.
Series oracle_series(unsigned t, std::size_t P);

inline constexpr std::size_t default_oracle_cap = 1000000;

// Memoized b_t lookups backed by a table that regrows geometrically.
// Arguments beyond `cap` raise resource_cap_error instead of truncating.
class BtOracle {
public:
    BtOracle(unsigned t, std::size_t cap = default_oracle_cap);

    unsigned t() const { return t_; }
    std::size_t cap() const { return cap_; }
    const mpz_class& value(std::size_t n);
    int parity(std::size_t n);

private:
    void ensure(std::size_t n);

    unsigned t_;
    std::size_t cap_;
    RegularCountTable table_;
};

} // namespace etaq
