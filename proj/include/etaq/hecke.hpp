#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "etaq/eta.hpp"
#include "etaq/series.hpp"

namespace etaq {

bool is_prime(unsigned long n);

// floor(weight * mu / 12) where mu = N * prod_{p|N} (1 + 1/p) is the index
// of Gamma_0(N). A cusp form of this weight and level vanishing mod 2 up to
// and including the bound vanishes identically mod 2.
unsigned long sturm_bound(unsigned long level, unsigned long weight);

// Coefficient action b(n) = a(pn) + chi_p * p^(weight-1) * a(n/p), with
// a(n/p) = 0 when p does not divide n. Output precision floor(P/p). On the
// GF2 path the second term contributes iff chi_p * p^(weight-1) is odd,
// i.e. iff p is odd or weight == 1.
Series hecke_tp(const Series& f, unsigned long p, unsigned long weight,
                int chi_p);

struct HeckeReport {
    unsigned long prime = 0;
    unsigned long weight = 0;
    unsigned long level = 0;
    int chi_p = 0;
    unsigned long sturm = 0;
    unsigned long terms_checked = 0; // largest coefficient index examined
    bool annihilated_mod2 = false;
    std::optional<unsigned long> first_nonzero_index;
    std::string error; // nonempty when the test could not run
};

struct HeckeCaps {
    std::size_t max_precision = 1000000;
};

// Expands the sum of eta-quotients mod 2 to precision p*(sturm+1)+1,
// applies T_p, and scans coefficients 0..sturm. A true verdict certifies
// T_p f == 0 mod 2 identically. Requires a CUSP_FORM sum with integral
// weight, p prime with gcd(p, 2*level) = 1.
HeckeReport annihilation_test(const std::vector<EtaQuotient>& summands,
                              unsigned long p, const HeckeCaps& caps = {});
HeckeReport annihilation_test(const EtaQuotient& eq, unsigned long p,
                              const HeckeCaps& caps = {});

// Runs annihilation_test on every prime p <= p_max with
// p == residue (mod modulus), ascending. Per-prime failures (resource caps,
// precondition rejections) are recorded in the report's error field and the
// search continues.
std::vector<HeckeReport> prime_search(const std::vector<EtaQuotient>& summands,
                                      long residue, unsigned long modulus,
                                      unsigned long p_max,
                                      const HeckeCaps& caps = {});

} // namespace etaq
