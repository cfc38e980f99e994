#pragma once

// Seeded generators for randomized property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "grasscy/polynomial.hpp"
#include "grasscy/scalar.hpp"
#include "grasscy/sparse_matrix.hpp"

namespace grasscy::testing {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(n) - 1)); }
    bool coin() { return integer(0, 1) == 1; }

    Rational rational(std::int64_t bound = 9) {
        Rational q(integer(-bound, bound), integer(1, bound));
        q.canonicalize();
        return q;
    }
    Rational nonzero_rational(std::int64_t bound = 9) {
        for (;;) {
            Rational q = rational(bound);
            if (sgn(q) != 0) return q;
        }
    }

    template <class S>
    S scalar(const FieldTag& field, std::int64_t bound = 9) {
        if constexpr (std::is_same_v<S, Rational>) {
            (void)field;
            return rational(bound);
        } else {
            return Fp(integer(0, static_cast<std::int64_t>(field.modulus) - 1), field.modulus);
        }
    }

    ExponentVector exponents(std::size_t nvars, int lo, int hi) {
        ExponentVector e(nvars);
        for (auto& x : e) x = static_cast<int>(integer(lo, hi));
        return e;
    }

    // Up to `terms` random terms with exponents in [lo, hi].
    template <class S>
    Polynomial<S> polynomial(std::size_t nvars, const FieldTag& field, int terms, int lo, int hi) {
        Polynomial<S> p(nvars, field);
        const int count = static_cast<int>(integer(0, terms));
        for (int i = 0; i < count; ++i) p.add_term(exponents(nvars, lo, hi), scalar<S>(field));
        return p;
    }

    // Homogeneous polynomial of the given degree with up to `terms` terms.
    template <class S>
    Polynomial<S> homogeneous(std::size_t nvars, const FieldTag& field, int degree, int terms) {
        Polynomial<S> p(nvars, field);
        const int count = static_cast<int>(integer(1, terms));
        for (int i = 0; i < count; ++i) {
            ExponentVector e(nvars, 0);
            for (int k = 0; k < degree; ++k) ++e[index(nvars)];
            p.add_term(e, scalar<S>(field));
        }
        return p;
    }

    // Integer matrix with entries in [-bound, bound] and the given density in percent.
    std::vector<std::vector<std::int64_t>> int_matrix(std::size_t rows, std::size_t cols, std::int64_t bound,
                                                      int density) {
        std::vector<std::vector<std::int64_t>> m(rows, std::vector<std::int64_t>(cols, 0));
        for (auto& row : m)
            for (auto& x : row)
                if (integer(1, 100) <= density) x = integer(-bound, bound);
        return m;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

template <class S>
SparseMatrix<S> to_sparse(const std::vector<std::vector<std::int64_t>>& m, std::size_t cols, const FieldTag& field) {
    SparseMatrix<S> out(cols, field);
    for (const auto& row : m) {
        SparseVector<S> v;
        for (std::size_t c = 0; c < row.size(); ++c)
            if (row[c] != 0) v.emplace_back(c, scalar_from<S>(field, static_cast<long>(row[c])));
        out.append_row(std::move(v));
    }
    return out;
}

}  // namespace grasscy::testing
