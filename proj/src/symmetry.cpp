#include "grasscy/symmetry.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace grasscy {

std::vector<std::int64_t> smith_invariant_factors(std::vector<std::vector<std::int64_t>> m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<std::int64_t> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        std::size_t pr = rows, pc = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (m[i][j] != 0 && (pr == rows || std::llabs(m[i][j]) < std::llabs(m[pr][pc]))) {
                    pr = i;
                    pc = j;
                }
        if (pr == rows) break;
        std::swap(m[t], m[pr]);
        for (auto& row : m) std::swap(row[t], row[pc]);

        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
            const std::int64_t q = m[i][t] / m[t][t];
            if (q != 0)
                for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
            if (m[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            const std::int64_t q = m[t][j] / m[t][t];
            if (q != 0)
                for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
            if (m[t][j] != 0) clean = false;
        }
        if (!clean) continue;
        // Enforce the divisibility chain: fold a non-divisible row into row t.
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i)
            for (std::size_t j = t + 1; j < cols; ++j)
                if (m[i][j] % m[t][t] != 0) {
                    for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
                    divides = false;
                    break;
                }
        if (!divides) continue;
        diag.push_back(std::llabs(m[t][t]));
        ++t;
    }
    std::vector<std::int64_t> out;
    for (auto d : diag)
        if (d > 1) out.push_back(d);
    return out;
}

std::string isomorphism_type(const std::vector<std::int64_t>& factors) {
    if (factors.empty()) return "trivial";
    std::vector<std::int64_t> sorted = factors;
    std::sort(sorted.rbegin(), sorted.rend());
    std::string s;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        if (!s.empty()) s += " x ";
        const std::string base = "Z/" + std::to_string(sorted[i]);
        s += j - i == 1 ? base : "(" + base + ")^" + std::to_string(j - i);
        i = j;
    }
    return s;
}

namespace {

// Coordinates of v (an element of the lattice above L) in the basis
// ((n/g) e_1, e_2 - e_1, ..., e_n - e_1).
std::vector<std::int64_t> lattice_coordinates(const std::vector<std::int64_t>& v, int n, int g) {
    const std::int64_t sum = std::accumulate(v.begin(), v.end(), std::int64_t{0});
    std::vector<std::int64_t> c(v.begin(), v.end());
    c[0] = sum / (n / g);
    return c;
}

Integer product(const std::vector<std::int64_t>& f) {
    Integer p = 1;
    for (auto x : f) p *= static_cast<long>(x);
    return p;
}

}  // namespace

SymmetryGroup::SymmetryGroup(int n, int r) : n_(n), r_(r), space_(r, n), scalar_(static_cast<std::size_t>(n), 1) {
    if (n < 2 || r < 1 || r > n - 1) throw DomainError("need n >= 2 and 1 <= r <= n-1");
    const int g = std::gcd(r, n);
    std::vector<int> first(static_cast<std::size_t>(n), 0);
    first[0] = n / g;
    generators_.push_back(first);
    for (int i = 2; i <= n; ++i) {
        std::vector<int> a(static_cast<std::size_t>(n), 0);
        a[0] = n - 1;  // -1 mod n
        a[static_cast<std::size_t>(i - 1)] = 1;
        generators_.push_back(std::move(a));
    }

    std::vector<std::vector<std::int64_t>> rel;
    for (int j = 0; j < n; ++j) {
        std::vector<std::int64_t> v(static_cast<std::size_t>(n), 0);
        v[static_cast<std::size_t>(j)] = n;
        rel.push_back(lattice_coordinates(v, n, g));
    }
    full_factors_ = smith_invariant_factors(rel);
    rel.push_back(lattice_coordinates(std::vector<std::int64_t>(static_cast<std::size_t>(n), 1), n, g));
    effective_factors_ = smith_invariant_factors(rel);
    full_order_ = product(full_factors_);
    effective_order_ = product(effective_factors_);
}

bool SymmetryGroup::contains(const std::vector<int>& a) const {
    if (static_cast<int>(a.size()) != n_) return false;
    long sum = 0;
    for (int x : a) sum += x;
    return (static_cast<long>(r_) * sum) % n_ == 0;
}

std::vector<int> SymmetryGroup::random_element(std::mt19937_64& rng) const {
    std::uniform_int_distribution<int> coeff(0, n_ - 1);
    std::vector<int> a(static_cast<std::size_t>(n_), 0);
    auto add = [&](const std::vector<int>& gen) {
        const int c = coeff(rng);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = (a[i] + c * gen[i]) % n_;
    };
    for (const auto& gen : generators_) add(gen);
    add(scalar_);
    return a;
}

SymmetryGroup build_group(int n, int r) { return SymmetryGroup(n, r); }

MonomialCharacter character(const ExponentVector& m, const SymmetryGroup& group) {
    const PluckerSpace& space = group.space();
    if (m.size() != space.variable_count()) throw ContextError("monomial is not over this Plücker variable set");
    MonomialCharacter chi{std::vector<int>(static_cast<std::size_t>(group.n()), 0), group.n()};
    for (std::size_t v = 0; v < m.size(); ++v) {
        if (m[v] == 0) continue;
        for (int i : space.index(v).entries()) chi.entries[static_cast<std::size_t>(i - 1)] += m[v];
    }
    for (int& x : chi.entries) x = ((x % group.n()) + group.n()) % group.n();
    return chi;
}

int pairing(const MonomialCharacter& chi, const std::vector<int>& a) {
    long s = 0;
    for (std::size_t i = 0; i < chi.entries.size(); ++i) s += static_cast<long>(chi.entries[i]) * a.at(i);
    return static_cast<int>(((s % chi.modulus) + chi.modulus) % chi.modulus);
}

bool is_invariant(const ExponentVector& m, const SymmetryGroup& group) {
    const MonomialCharacter chi = character(m, group);
    for (const auto& gen : group.generators())
        if (pairing(chi, gen) != 0) return false;
    return pairing(chi, group.scalar()) == 0;
}

std::vector<ExponentVector> invariant_monomials(int r, int n, int degree, const SymmetryGroup& group) {
    if (degree < 1) throw DomainError("degree must be positive");
    if (group.r() != r || group.n() != n) throw ContextError("group does not act on G(r,n)");
    const std::size_t nv = group.space().variable_count();
    Integer count;
    mpz_bin_uiui(count.get_mpz_t(), nv + static_cast<unsigned long>(degree) - 1, static_cast<unsigned long>(degree));
    if (count > 20000000) throw ResourceError("too many monomials to enumerate");
    std::vector<ExponentVector> out;
    for (auto& m : monomials_of_degree(nv, degree))
        if (is_invariant(m, group)) out.push_back(std::move(m));
    return out;
}

}  // namespace grasscy
