#pragma once

#include <utility>
#include <vector>

#include "delpezzo/types.hpp"

namespace delpezzo::primes {

using Factorization = std::vector<std::pair<u64, unsigned>>;

// Primes up to n (inclusive), ascending.
std::vector<u64> primes_up_to(u64 n);

// Shared read-only table of primes below 2^20, built on first use.
const std::vector<u64>& small_primes();

// Trial division against small_primes(). Exact for n < 2^40; beyond that a
// cofactor that cannot be certified prime raises DomainError.
Factorization factorize(u64 n);

bool is_prime(u64 n);

// Smallest-prime-factor table on [0, n], for hot enumeration loops.
class SpfTable {
public:
    explicit SpfTable(u64 n);
    u64 limit() const { return spf_.size() - 1; }
    bool squarefree(u64 m) const;
    Factorization factorize(u64 m) const;
    // Distinct prime divisors, ascending.
    void distinct_primes(u64 m, std::vector<u64>& out) const;

private:
    std::vector<std::uint32_t> spf_;
};

}  // namespace delpezzo::primes
