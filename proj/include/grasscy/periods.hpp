#pragma once

// Hasse-Witt invariants of the G(2,4) arrow pencil from its period expansion
// in local coordinates t1..t4, and hypergeometric truncations mod p.

#include <cstdint>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "grasscy/pointcount.hpp"
#include "grasscy/polynomial.hpp"

namespace grasscy {

// B_t = A_t / (frozen product) written as 1 + t * kernel, with kernel a
// Laurent polynomial in t1..t4.
struct PeriodKernel {
    Polynomial<Rational> kernel{4};
    std::vector<std::string> provenance;
};

// Rebuilds B_t symbolically from its local-coordinate form and splits off the
// kernel. Throws ConstructionError if any simplification step fails to check.
PeriodKernel build_period_kernel();

// c_k = (-1)^k * constant_term(kernel^k), k = 0..k_max.
std::vector<Integer> period_coefficients(const PeriodKernel& kernel, int k_max);

// Memoized coefficients of the default kernel; safe for concurrent use.
class PeriodSeries {
public:
    PeriodSeries();
    explicit PeriodSeries(PeriodKernel kernel);

    const PeriodKernel& kernel() const { return kernel_; }
    // c_0..c_{k_max}, extending the cache as needed.
    std::vector<Integer> coefficients(int k_max) const;

private:
    PeriodKernel kernel_;
    mutable std::mutex mutex_;
    mutable std::vector<Integer> cache_;
    mutable Polynomial<Rational> power_;  // kernel^(cache_.size()-1)
};

const PeriodSeries& default_period_series();

// sum_{k=0}^{p-1} c_k t^k mod p.
Fp hasse_witt(std::uint64_t p, const Fp& t);

// sum_{k=0}^{p-1} prod_i (a_i)_k / (prod_j (b_j)_k * k!) z^k in F_p.
Fp hypergeometric_truncation(std::span<const Rational> upper, std::span<const Rational> lower, std::uint64_t p,
                             const Fp& z);

// The 4F3(1/4, 1/2, 3/4, 1/2; 1, 1, 1) parameters of the classical G(2,4) mirror.
const std::vector<Rational>& classical_upper_parameters();
const std::vector<Rational>& classical_lower_parameters();

struct SearchCandidate {
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t first_failing_t = 0;  // 0 when the candidate matches every t
};

struct SearchReport {
    std::uint64_t p = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> hits;
    std::vector<SearchCandidate> scan_log;
};

// Every (a, b) in F_p^x x {1..p-1} with residue(t) = 1 - 4F3(... | a t^b) for
// all t in 1..p-1.
SearchReport truncation_search(std::uint64_t p, std::span<const PointCountRecord> counts);

nlohmann::json to_json(const SearchReport& report, bool include_log = true);

}  // namespace grasscy
