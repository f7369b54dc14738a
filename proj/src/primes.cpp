#include "delpezzo/primes.hpp"

#include <cmath>

#include "delpezzo/error.hpp"

namespace delpezzo::primes {

namespace {
constexpr u64 kSmallLimit = u64{1} << 20;
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        for (u64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

const std::vector<u64>& small_primes() {
    static const std::vector<u64> table = primes_up_to(kSmallLimit);
    return table;
}

Factorization factorize(u64 n) {
    Factorization f;
    if (n == 0) throw DomainError("factorize: zero has no factorization");
    for (u64 p : small_primes()) {
        if (p * p > n) break;
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (n > 1) {
        // Remaining cofactor has no prime factor below 2^20.
        if (n >= kSmallLimit * kSmallLimit)
            throw DomainError("factorize: cofactor beyond 2^40 not certified");
        f.emplace_back(n, 1);
    }
    return f;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    auto f = factorize(n);
    return f.size() == 1 && f[0].second == 1;
}

SpfTable::SpfTable(u64 n) : spf_(n + 1, 0) {
    for (u64 i = 2; i <= n; ++i) {
        if (spf_[i]) continue;
        for (u64 j = i; j <= n; j += i)
            if (!spf_[j]) spf_[j] = static_cast<std::uint32_t>(i);
    }
}

bool SpfTable::squarefree(u64 m) const {
    while (m > 1) {
        u64 p = spf_[m];
        m /= p;
        if (m % p == 0) return false;
    }
    return true;
}

Factorization SpfTable::factorize(u64 m) const {
    Factorization f;
    while (m > 1) {
        u64 p = spf_[m];
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    return f;
}

void SpfTable::distinct_primes(u64 m, std::vector<u64>& out) const {
    out.clear();
    while (m > 1) {
        u64 p = spf_[m];
        out.push_back(p);
        while (m % p == 0) m /= p;
    }
}

}  // namespace delpezzo::primes
