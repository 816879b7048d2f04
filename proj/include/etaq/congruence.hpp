#pragma once

// Finite-range verifiers comparing series computations against the exact
// partition oracle: seven named mod-2 identities, three self-similarity
// congruence families for b_3, b_25, b_21, and a b_25 vanishing family.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etaq/partition.hpp"
#include "etaq/series.hpp"

namespace etaq {

struct CongruenceReport {
    std::string target;
    std::optional<unsigned long> p;
    std::optional<unsigned long> alpha;
    std::optional<unsigned long> beta;
    std::optional<unsigned long> gamma;
    std::pair<std::size_t, std::size_t> n_range{0, 0}; // inclusive
    bool holds = false;
    std::optional<std::size_t> first_failure;
};

struct SelfSimilarityParams {
    std::optional<unsigned long> alpha;
    std::optional<unsigned long> beta;
    std::optional<unsigned long> gamma;
};

// THM_B3:  alpha = (p^2-1)/24, requires prime p > 3.
// THM_B25: alpha = 2p-1, beta = p-1, requires odd prime p, p not dividing 10.
// THM_B21: gamma = (p^2-1)/6, requires prime p > 3.
SelfSimilarityParams self_similarity_params(const std::string& target,
                                            unsigned long p);

// One memoized b_t table per t, shared across verifier calls and bounded by
// a common argument cap.
class OracleSet {
public:
    explicit OracleSet(std::size_t cap = default_oracle_cap);

    std::size_t cap() const { return cap_; }
    BtOracle& oracle(unsigned t);

private:
    std::size_t cap_;
    std::map<unsigned, BtOracle> oracles_;
};

// KZ_EQ6, B3_EVEN, JUDGE, B25_ODD, B25_4N1, B21_4N1, A_UNIT.
const std::vector<std::string>& identity_names();

// Computes both sides of the named identity on the GF2 path to `terms`
// coefficients (b_t sides from the oracle) and reports coefficientwise
// equality. Requires terms >= 16.
CongruenceReport verify_identity(const std::string& name, std::size_t terms,
                                 OracleSet& oracles);

// b_3(2(pm+alpha)) == b_3(2(m/p)) mod 2 when p | m, else == 0 mod 2,
// for all 0 <= m <= n_max.
CongruenceReport verify_theorem_b3(unsigned long p, std::size_t n_max,
                                   OracleSet& oracles);

// b_25(2pm+alpha) == b_25(2(m-beta)/p+1) mod 2 when m == beta (mod p),
// else == 0 mod 2, for all 0 <= m <= n_max.
CongruenceReport verify_theorem_b25(unsigned long p, std::size_t n_max,
                                    OracleSet& oracles);

// b_21(pm+11*gamma+1) == b_21(m/p+1) mod 2 when p | m, else == 0 mod 2,
// for all 0 <= m <= n_max.
CongruenceReport verify_theorem_b21(unsigned long p, std::size_t n_max,
                                    OracleSet& oracles);

// The p=13 instance of the b_3 family, b_3(26n+14) indices: reported under
// its own target name.
CongruenceReport verify_eq_1_2(std::size_t n_max, OracleSet& oracles);

// b_25(8(p^2 n + kp - c) + 5) == 0 mod 2 with 4c == 3 (mod p^2), 0 < c < p^2,
// for all 1 <= k < p and 0 <= n <= n_max, skipping negative arguments.
// Requires prime p == 11, 13, 17, or 19 (mod 20).
CongruenceReport verify_kz_b25_vanishing(unsigned long p, std::size_t n_max,
                                         OracleSet& oracles);

} // namespace etaq
