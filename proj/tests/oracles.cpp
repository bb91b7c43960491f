#include "oracles.hpp"

#include <algorithm>
#include <stdexcept>

namespace ufrac::oracle {

namespace {

using u128 = unsigned __int128;

u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

void walk(u128 p, u128 q, int j, u128 prev, Tuple& prefix, std::vector<Tuple>& out, std::uint64_t* counter) {
    if (j == 1) {
        if (q % p == 0 && q / p >= prev) {
            if (counter) {
                ++*counter;
                return;
            }
            if (q / p > UINT64_MAX) throw std::overflow_error("oracle denominator exceeds 64 bits");
            prefix.push_back(static_cast<std::uint64_t>(q / p));
            out.push_back(prefix);
            prefix.pop_back();
        }
        return;
    }
    u128 lo = q / p + 1;
    if (lo < prev) lo = prev;
    const u128 hi = static_cast<u128>(j) * q / p;
    for (u128 a = lo; a <= hi; ++a) {
        u128 np = p * a - q;
        u128 nq = q * a;
        if (nq / a != q) throw std::overflow_error("oracle overflow");
        u128 g = gcd128(np, nq);
        prefix.push_back(static_cast<std::uint64_t>(a));
        walk(np / g, nq / g, j - 1, a, prefix, out, counter);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<Tuple> naive_solutions(std::uint64_t m, std::uint64_t n, int k) {
    std::vector<Tuple> out;
    if (k <= 0 || m > static_cast<std::uint64_t>(k) * n) return out;
    const std::uint64_t g = euclid_gcd(m, n);
    Tuple prefix;
    walk(m / g, n / g, k, 1, prefix, out, nullptr);
    return out;
}

std::uint64_t naive_count(std::uint64_t m, std::uint64_t n, int k) {
    if (k <= 0 || m > static_cast<std::uint64_t>(k) * n) return 0;
    const std::uint64_t g = euclid_gcd(m, n);
    std::uint64_t c = 0;
    Tuple prefix;
    std::vector<Tuple> unused;
    walk(m / g, n / g, k, 1, prefix, unused, &c);
    return c;
}

std::vector<std::uint64_t> trial_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

std::uint64_t euclid_gcd(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace ufrac::oracle

namespace ufrac::oracle {

std::vector<std::uint64_t> relative_gcds_by_valuations(const std::vector<std::uint64_t>& t) {
    const std::size_t k = t.size();
    const unsigned full = (1u << k) - 1;
    std::vector<std::uint64_t> x(full + 1, 1);
    x[0] = 0;

    std::vector<std::uint64_t> primes;
    for (std::uint64_t v : t) {
        for (std::uint64_t p = 2; p * p <= v; ++p) {
            if (v % p) continue;
            primes.push_back(p);
            while (v % p == 0) v /= p;
        }
        if (v > 1) primes.push_back(v);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    for (std::uint64_t p : primes) {
        std::vector<int> val(k, 0);
        for (std::size_t i = 0; i < k; ++i)
            for (std::uint64_t v = t[i]; v % p == 0; v /= p) ++val[i];
        std::vector<int> g(full + 1, 0);
        for (unsigned J = 1; J <= full; ++J) {
            int lo = 1 << 30;
            for (std::size_t i = 0; i < k; ++i)
                if (J & (1u << i)) lo = std::min(lo, val[i]);
            g[J] = lo;
        }
        for (unsigned J = 1; J <= full; ++J) {
            int e = 0;
            for (unsigned K = J; K <= full; ++K) {
                if ((K & J) != J) continue;
                const int sign = (__builtin_popcount(K ^ J) % 2) ? -1 : 1;
                e += sign * g[K];
            }
            if (e < 0) throw std::logic_error("negative valuation in oracle");
            for (int r = 0; r < e; ++r) x[J] *= p;
        }
    }
    return x;
}

}  // namespace ufrac::oracle
