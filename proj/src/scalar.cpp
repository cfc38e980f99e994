#include "grasscy/scalar.hpp"

namespace grasscy {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
    unsigned __int128 result = 1 % p;
    unsigned __int128 b = base % p;
    while (exp) {
        if (exp & 1u) result = result * b % p;
        b = b * b % p;
        exp >>= 1u;
    }
    return static_cast<std::uint64_t>(result);
}

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

}  // namespace grasscy
