#include "doctest.h"

#include <algorithm>
#include <functional>
#include <thread>

#include "grasscy/errors.hpp"
#include "grasscy/periods.hpp"
#include "support.hpp"

using namespace grasscy;
using grasscy::testing::Gen;

namespace {

Rational qpow(const Rational& x, int e) {
    Rational out(1);
    const Rational base = e < 0 ? Rational(1) / x : x;
    for (int i = 0; i < std::abs(e); ++i) out *= base;
    return out;
}

// B_t in the local coordinates t1..t4, transcribed operation by operation.
Rational printed_b(const Rational& t, const Rational& t1, const Rational& t2, const Rational& t3, const Rational& t4) {
    const Rational m = t1 * t1 * t2 * t3;
    const Rational w = 1 / m - (t1 + t4) / (m * t4);
    const Rational sum = qpow(w, 4) + 1 / qpow(t1, 4) + 1 / qpow(t1 * t2, 4) + 1 / qpow(t1 * t3, 4) +
                         qpow(t1 + t4, 4) / qpow(t1 * t2 * t3 * t4, 4) + 1;
    return -((sum * t - w / m) * m) / w;
}

Rational evaluate(const Polynomial<Rational>& f, const std::vector<Rational>& at) {
    Rational out(0);
    for (const auto& [e, c] : f.terms()) {
        Rational term = c;
        for (std::size_t i = 0; i < e.size(); ++i) term *= qpow(at[i], e[i]);
        out += term;
    }
    return out;
}

// Constant term of L^k by summing multinomial terms over all exponent splits.
Integer multinomial_constant_term(const Polynomial<Rational>& l, int k) {
    std::vector<std::pair<ExponentVector, Rational>> terms(l.terms().begin(), l.terms().end());
    Rational total(0);
    std::vector<int> split(terms.size(), 0);
    Integer fact_k;
    mpz_fac_ui(fact_k.get_mpz_t(), static_cast<unsigned long>(k));
    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int left) {
        if (j + 1 == terms.size()) {
            split[j] = left;
            ExponentVector sum(l.nvars(), 0);
            Rational weight(fact_k);
            for (std::size_t i = 0; i < terms.size(); ++i) {
                for (std::size_t v = 0; v < sum.size(); ++v) sum[v] += split[i] * terms[i].first[v];
                Integer f;
                mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(split[i]));
                weight *= qpow(terms[i].second, split[i]) / Rational(f);
            }
            if (std::all_of(sum.begin(), sum.end(), [](int x) { return x == 0; })) total += weight;
            return;
        }
        for (int a = 0; a <= left; ++a) {
            split[j] = a;
            rec(j + 1, left - a);
        }
    };
    rec(0, k);
    REQUIRE(total.get_den() == 1);
    return total.get_num();
}

// Truncated sum of prod (a_i)_k / (prod (b_j)_k k!) z^k over Q, reduced mod p.
std::uint64_t direct_truncation(const std::vector<Rational>& upper, const std::vector<Rational>& lower, std::uint64_t p,
                                std::uint64_t z) {
    Rational coeff(1), total(0);
    Rational zq(static_cast<unsigned long>(z)), zk(1);
    for (std::uint64_t k = 0; k < p; ++k) {
        total += coeff * zk;
        Rational step(1);
        for (const auto& a : upper) step *= a + static_cast<unsigned long>(k);
        for (const auto& b : lower) step /= b + static_cast<unsigned long>(k);
        step /= static_cast<unsigned long>(k + 1);
        coeff *= step;
        zk *= zq;
    }
    return scalar_from<Fp>(FieldTag::prime(p), total).value();
}

}  // namespace

TEST_CASE("the period kernel matches the printed local-coordinate formula") {
    const PeriodKernel k = build_period_kernel();
    const Polynomial<Rational>& l = k.kernel;
    CHECK(l.size() == 10);
    CHECK(constant_term(l) == 0);
    CHECK(constant_term(l.pow(2)) == 12);
    CHECK(!k.provenance.empty());
    CHECK(evaluate(l, {Rational(1), Rational(1), Rational(1), Rational(1)}) == 21);

    Gen gen(81);
    for (int i = 0; i < 100; ++i) {
        const Rational t = gen.nonzero_rational(), t1 = gen.nonzero_rational(), t2 = gen.nonzero_rational(),
                       t3 = gen.nonzero_rational(), t4 = gen.nonzero_rational();
        if (t1 + t4 == 0) continue;  // w vanishes there
        REQUIRE(printed_b(t, t1, t2, t3, t4) == 1 + t * evaluate(l, {t1, t2, t3, t4}));
    }
}

TEST_CASE("period coefficients") {
    const auto c = period_coefficients(build_period_kernel(), 10);
    const std::vector<long> expected{1, 0, 12, 0, 492, 0, 32880, 0, 2743020, 0, 257986512};
    REQUIRE(c.size() == expected.size());
    for (std::size_t k = 0; k < c.size(); ++k) CHECK(c[k] == expected[k]);
    const auto series = default_period_series().coefficients(20);
    for (std::size_t k = 1; k <= 20; k += 2) CHECK(series[k] == 0);
    for (std::size_t k = 0; k <= 10; ++k) CHECK(series[k] == c[k]);
}

TEST_CASE("period coefficients agree with a multinomial expansion") {
    const PeriodKernel k = build_period_kernel();
    const auto c = default_period_series().coefficients(12);
    for (int j = 0; j <= 12; ++j) {
        const Integer ct = multinomial_constant_term(k.kernel, j);
        CHECK(c[static_cast<std::size_t>(j)] == (j % 2 == 0 ? ct : Integer(-ct)));
    }
}

TEST_CASE("the cached series is safe to share between threads") {
    PeriodSeries series;
    std::vector<std::vector<Integer>> results(4);
    std::vector<std::thread> threads;
    for (int i = 0; i < 4; ++i)
        threads.emplace_back([&, i] { results[static_cast<std::size_t>(i)] = series.coefficients(6 + 2 * i); });
    for (auto& th : threads) th.join();
    for (int i = 0; i < 4; ++i)
        for (std::size_t k = 0; k < results[static_cast<std::size_t>(i)].size(); ++k) CHECK(results[static_cast<std::size_t>(i)][k] == results[3][k]);
}

TEST_CASE("Hasse-Witt values") {
    CHECK(hasse_witt(5, Fp(1, 5)) == Fp(0, 5));
    CHECK(hasse_witt(7, Fp(1, 7)) == Fp(2, 7));
    CHECK(hasse_witt(11, Fp(1, 11)) == Fp(8, 11));
    const std::vector<long> c{1, 0, 12, 0, 492, 0, 32880, 0, 2743020, 0, 257986512};
    for (std::uint64_t p : {5, 7, 11}) {
        for (std::uint64_t t = 1; t < p; ++t) {
            Fp direct(0, p), power(1, p);
            for (std::uint64_t k = 0; k < p; ++k) {
                direct += Fp(c[k], p) * power;
                power *= Fp(static_cast<std::int64_t>(t), p);
            }
            CHECK(hasse_witt(p, Fp(static_cast<std::int64_t>(t), p)) == direct);
        }
    }
}

TEST_CASE("one minus Hasse-Witt matches the point-count residues") {
    const auto spec = build_pencil(2, 4, PencilVariant::arrow);
    for (std::uint64_t p : {5, 7, 11, 13}) {
        for (const auto& rec : count_table(spec, p)) {
            const Fp hw = hasse_witt(p, Fp(static_cast<std::int64_t>(rec.t), p));
            CHECK_MESSAGE((Fp(1, p) - hw).value() == rec.residue, "p=" << p << " t=" << rec.t);
        }
    }
}

TEST_CASE("hypergeometric truncations") {
    const auto& up = classical_upper_parameters();
    const auto& low = classical_lower_parameters();
    CHECK(hypergeometric_truncation(up, low, 5, Fp(0, 5)) == Fp(1, 5));
    // Coefficient of z: (1/4)(1/2)(3/4)(1/2) = 3/64, which is 2 in F_5; recovered by interpolation.
    std::vector<Fp> values;
    for (int z = 0; z < 5; ++z) values.push_back(hypergeometric_truncation(up, low, 5, Fp(z, 5)));
    Fp linear(0, 5);
    for (int j = 0; j < 5; ++j) {
        // Coefficient of z in the Lagrange basis polynomial for node j.
        Fp denom(1, 5);
        for (int m = 0; m < 5; ++m)
            if (m != j) denom *= Fp(j - m, 5);
        // d/dz prod_{m != j}(z - m) at z = 0.
        Fp deriv(0, 5);
        for (int skip = 0; skip < 5; ++skip) {
            if (skip == j) continue;
            Fp term(1, 5);
            for (int m = 0; m < 5; ++m)
                if (m != j && m != skip) term *= Fp(-m, 5);
            deriv += term;
        }
        linear += values[static_cast<std::size_t>(j)] * deriv / denom;
    }
    CHECK(linear == Fp(2, 5));

    for (std::uint64_t p : {5, 7, 11, 13})
        for (std::uint64_t z = 0; z < p; ++z)
            CHECK(hypergeometric_truncation(up, low, p, Fp(static_cast<std::int64_t>(z), p)).value() ==
                  direct_truncation(up, low, p, z));

    const std::vector<Rational> one{Rational(1)};
    for (std::uint64_t z = 0; z < 7; ++z) {
        Fp geometric(0, 7), power(1, 7);
        for (int k = 0; k < 7; ++k) {
            geometric += power;
            power *= Fp(static_cast<std::int64_t>(z), 7);
        }
        CHECK(hypergeometric_truncation(one, {}, 7, Fp(static_cast<std::int64_t>(z), 7)) == geometric);
    }

    const std::vector<Rational> fifth{Rational(1, 5)};
    CHECK_THROWS_AS(hypergeometric_truncation(fifth, {}, 5, Fp(1, 5)), DomainError);
    const std::vector<Rational> negative{Rational(-1)};
    CHECK_THROWS_AS(hypergeometric_truncation(one, negative, 5, Fp(1, 5)), DomainError);
}

TEST_CASE("no truncation relation for p = 5, 7, 11") {
    const auto spec = build_pencil(2, 4, PencilVariant::arrow);
    for (std::uint64_t p : {5, 7, 11}) {
        const auto counts = count_table(spec, p);
        const auto report = truncation_search(p, counts);
        CHECK(report.hits.empty());
        CHECK(report.scan_log.size() == (p - 1) * (p - 1));
        for (const auto& c : report.scan_log) CHECK(c.first_failing_t != 0);
        const auto j = to_json(report);
        CHECK(j["search_hits"] == nlohmann::json::array());
    }
}

TEST_CASE("the search finds a planted relation") {
    const std::uint64_t p = 7;
    const auto& up = classical_upper_parameters();
    const auto& low = classical_lower_parameters();
    std::vector<PointCountRecord> planted;
    for (std::uint64_t t = 1; t < p; ++t) {
        const Fp z = Fp(3, p) * Fp(static_cast<std::int64_t>(t), p).pow(2);
        const std::uint64_t residue = (Fp(1, p) - hypergeometric_truncation(up, low, p, z)).value();
        planted.push_back({p, t, residue + p, residue});
    }
    const auto report = truncation_search(p, planted);
    CHECK(std::find(report.hits.begin(), report.hits.end(), std::pair<std::uint64_t, std::uint64_t>{3, 2}) !=
          report.hits.end());
    planted.pop_back();
    CHECK_THROWS_AS(truncation_search(p, planted), DomainError);
}
