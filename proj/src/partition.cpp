#include "etaq/partition.hpp"

#include <algorithm>
#include <stdexcept>

#include "etaq/errors.hpp"

namespace etaq {

RegularCountTable::RegularCountTable(unsigned t, std::size_t nmax) : t_(t) {
    if (t == 1)
        throw std::invalid_argument("RegularCountTable: t must be 0 or >= 2");
    counts_.assign(nmax + 1, mpz_class(0));
    counts_[0] = 1;
    // Coin-counting over allowed parts in increasing order: after part k is
    // processed, counts[n] holds partitions of n into allowed parts <= k.
    for (std::size_t k = 1; k <= nmax; ++k) {
        if (t != 0 && k % t == 0)
            continue;
        for (std::size_t n = k; n <= nmax; ++n)
            counts_[n] += counts_[n - k];
    }
}

const mpz_class& RegularCountTable::count(std::size_t n) const {
    if (n >= counts_.size())
        throw std::out_of_range("RegularCountTable::count: index beyond table");
    return counts_[n];
}

RegularCountTable count_regular(unsigned t, std::size_t nmax) {
    if (t < 2)
        throw std::invalid_argument("count_regular: t must be >= 2");
    return RegularCountTable(t, nmax);
}

RegularCountTable count_partitions(std::size_t nmax) {
    return RegularCountTable(0, nmax);
}

Series oracle_series(unsigned t, std::size_t P) {
    if (t < 2)
        throw std::invalid_argument("oracle_series: t must be >= 2");
    if (P == 0)
        return Series::zero(Ring::INT, 0);
    RegularCountTable table(t, P - 1);
    std::vector<mpz_class> coeffs(P);
    for (std::size_t n = 0; n < P; ++n)
        coeffs[n] = table.count(n);
    return Series::from_coeffs(std::move(coeffs), Ring::INT);
}

BtOracle::BtOracle(unsigned t, std::size_t cap)
    : t_(t), cap_(cap), table_(t, std::min<std::size_t>(1024, cap)) {
    if (t < 2)
        throw std::invalid_argument("BtOracle: t must be >= 2");
}

void BtOracle::ensure(std::size_t n) {
    if (n > cap_)
        throw resource_cap_error("b_t oracle argument " + std::to_string(n) +
                                 " exceeds cap " + std::to_string(cap_));
    if (n <= table_.nmax())
        return;
    table_ = RegularCountTable(t_, std::min(cap_, std::max(n, 2 * table_.nmax())));
}

const mpz_class& BtOracle::value(std::size_t n) {
    ensure(n);
    return table_.count(n);
}

int BtOracle::parity(std::size_t n) {
    return mpz_odd_p(value(n).get_mpz_t()) ? 1 : 0;
}

} // namespace etaq
