#include "doctest.h"

#include <set>

#include "grasscy/errors.hpp"
#include "grasscy/griffiths.hpp"
#include "support.hpp"

using namespace grasscy;
using grasscy::testing::Gen;

namespace {

Polynomial<Rational> mono(const PluckerSpace& s, const std::string& name, long c = 1) {
    return Polynomial<Rational>::monomial(s.parse_monomial(name), Rational(c));
}

std::size_t binomial(std::size_t n, std::size_t k) {
    std::size_t out = 1;
    for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

// Degree-d piece of the homogeneous coordinate ring of G(2,n): semistandard
// tableaux of shape (d,d) with entries at most n.
std::size_t g2n_hilbert(std::size_t n, std::size_t d) { return binomial(n + d - 1, d) * binomial(n + d - 2, d) / (d + 1); }

std::vector<std::uint64_t> primes_above(std::uint64_t start, int count) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p = start | 1; static_cast<int>(out.size()) < count; p += 2)
        if (is_prime(p)) out.push_back(p);
    return out;
}

std::vector<ExponentVector> parse_all(const PluckerSpace& s, const std::vector<std::string>& names) {
    std::vector<ExponentVector> out;
    for (const auto& n : names) out.push_back(s.parse_monomial(n));
    return out;
}

const std::vector<std::string> arrow_basis{"p34^4", "p14^2*p23^2", "p13^2*p24^2", "p24^4", "p23^4"};
const std::vector<std::string> variant_basis{"p23^4", "p13*p14*p23*p24", "p34^4", "p14^2*p23^2", "p24^4"};
const std::vector<std::string> g25_basis{"p24^5", "p35^5", "p14*p15*p23*p24*p35", "p15^2*p23*p24*p34",
                                         "p13*p14*p25^2*p34", "p23^5", "p25^5", "p34^5", "p13*p15*p24*p25*p34",
                                         "p45^5", "p14^2*p23*p25*p35"};

const PencilVariant all_variants[] = {PencilVariant::arrow, PencilVariant::squares, PencilVariant::quads,
                                      PencilVariant::squares_quads};

}  // namespace

TEST_CASE("derivations on single coordinates") {
    const PluckerSpace s(2, 4);
    CHECK(apply_derivation({1, 3}, mono(s, "p23"), s) == mono(s, "p12", -1));
    CHECK(apply_derivation({1, 3}, mono(s, "p13"), s).is_zero());
    CHECK(apply_derivation({2, 1}, mono(s, "p13"), s) == mono(s, "p23"));
    CHECK(apply_derivation({1, 1}, mono(s, "p13"), s) == mono(s, "p13"));
    CHECK(apply_derivation({2, 2}, mono(s, "p13"), s).is_zero());
    CHECK_THROWS(apply_derivation({5, 1}, mono(s, "p13"), s));

    const auto spec = build_pencil(2, 4, PencilVariant::arrow);
    const auto frozen = Polynomial<Rational>::monomial(spec.frozen, Rational(1));
    const auto d = apply_derivation({1, 2}, frozen, s);
    CHECK(d.coefficient(s.parse_monomial("p12*p13*p34*p14")) == 1);
}

TEST_CASE("Leibniz rule on random polynomials") {
    Gen gen(91);
    int cases = 0;
    for (auto [r, n] : {std::pair{2, 4}, std::pair{2, 5}, std::pair{3, 5}, std::pair{3, 6}}) {
        const PluckerSpace s(r, n);
        const std::size_t nv = s.variable_count();
        for (int i = 0; i < 300; ++i, ++cases) {
            const auto g = gen.homogeneous<Rational>(nv, FieldTag::rationals(), static_cast<int>(gen.integer(1, 3)), 4);
            const auto h = gen.homogeneous<Rational>(nv, FieldTag::rationals(), static_cast<int>(gen.integer(1, 3)), 4);
            const DerivationSpec d{static_cast<int>(gen.integer(1, n)), static_cast<int>(gen.integer(1, n))};
            REQUIRE(apply_derivation(d, g * h, s) == apply_derivation(d, g, s) * h + g * apply_derivation(d, h, s));
        }
    }
    CHECK(cases >= 1000);
}

TEST_CASE("Euler relation: sum of diagonal derivations is r times the degree") {
    Gen gen(101);
    auto euler = [](const Polynomial<Rational>& f, const PluckerSpace& s) {
        Polynomial<Rational> sum(s.variable_count());
        for (int i = 1; i <= s.n(); ++i) sum += apply_derivation({i, i}, f, s);
        return sum;
    };
    for (auto v : all_variants) {
        const auto spec = build_pencil(2, 4, v);
        const auto f = evaluate_pencil(spec, Rational(7, 3));
        CHECK(euler(f, PluckerSpace(2, 4)) == f * Rational(2 * 4));
    }
    for (auto [r, n] : {std::pair{2, 5}, std::pair{3, 6}, std::pair{2, 7}}) {
        const auto f = evaluate_pencil(build_pencil(r, n, PencilVariant::arrow), Rational(5));
        CHECK(euler(f, PluckerSpace(r, n)) == f * Rational(r * n));
    }
    int cases = 0;
    for (auto [r, n] : {std::pair{2, 4}, std::pair{2, 5}, std::pair{3, 6}}) {
        const PluckerSpace s(r, n);
        for (int i = 0; i < 400; ++i, ++cases) {
            const int d = static_cast<int>(gen.integer(1, 4));
            const auto f = gen.homogeneous<Rational>(s.variable_count(), FieldTag::rationals(), d, 5);
            REQUIRE(euler(f, s) == f * Rational(r * d));
        }
    }
    CHECK(cases >= 1000);
}

TEST_CASE("derivations preserve the Plücker ideal") {
    for (auto [r, n] : {std::pair{2, 4}, std::pair{2, 5}, std::pair{2, 6}, std::pair{3, 6}}) {
        const PluckerSpace s(r, n);
        const auto rels = plucker_relations(r, n);
        GradedSlice<Rational> slice(s, 2, FieldTag::rationals());
        for (const auto& rel : rels) slice.add_multiples(rel);
        const std::size_t base = slice.rank();
        for (const auto& rel : rels) {
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) {
                    slice.add_multiples(apply_derivation({i, j}, rel, s));
                    REQUIRE(slice.rank() == base);
                }
        }
    }
}

TEST_CASE("Jacobian generators") {
    const auto f = evaluate_pencil(build_pencil(2, 4, PencilVariant::arrow), Rational(2));
    const auto gens = grassmann_jacobian_generators(f, 2, 4);
    CHECK(gens.size() == 16);
    CHECK(gens.front() == f);
    Polynomial<Rational> mixed(6);
    mixed.add_term(ExponentVector{1, 0, 0, 0, 0, 0}, Rational(1));
    mixed.add_term(ExponentVector{2, 0, 0, 0, 0, 0}, Rational(1));
    CHECK_THROWS_AS(grassmann_jacobian_generators(mixed, 2, 4), DomainError);
    CHECK(grassmann_jacobian_generators(evaluate_pencil(build_pencil(2, 5, PencilVariant::arrow), Rational(2)), 2, 5)
              .size() == 25);
}

TEST_CASE("coordinate rings of Grassmannians") {
    const auto r24 = graded_quotient<Rational>(2, 4, 4, {}, FieldTag::rationals());
    CHECK(r24.ambient == 126);
    CHECK(r24.relation_rank == 21);
    CHECK(r24.quotient_dim == 105);
    const auto r25 = graded_quotient<Fp>(2, 5, 5, {}, FieldTag::prime(2147483647));
    CHECK(r25.ambient == 2002);
    CHECK(r25.quotient_dim == g2n_hilbert(5, 5));
    CHECK(r25.quotient_dim == 1176);
    for (std::size_t n = 4; n <= 7; ++n)
        for (int d = 1; d <= 3; ++d)
            CHECK(graded_quotient<Fp>(2, static_cast<int>(n), d, {}, FieldTag::prime(1000003)).quotient_dim ==
                  g2n_hilbert(n, static_cast<std::size_t>(d)));
    CHECK(graded_quotient<Rational>(1, 4, 3, {}, FieldTag::rationals()).quotient_dim == 20);
}

TEST_CASE("two formalisms give h^{2,1} = 89 for the arrow pencil") {
    const auto spec = build_pencil(2, 4, PencilVariant::arrow);
    for (long t : {2, 3, 5, 7}) {
        const auto ctx = g24_ci_context(spec, Rational(t));
        const auto c00 = ci_bigraded_quotient(ctx, 0, 0);
        CHECK(c00.quotient_dim == 1);
        const auto c01 = ci_bigraded_quotient(ctx, 0, 1);
        CHECK(c01.ambient == 147);
        CHECK(c01.ideal_rank == 58);
        CHECK(c01.quotient_dim == 89);
        const auto f = evaluate_pencil(spec, Rational(t));
        const auto g = graded_quotient(2, 4, 4, grassmann_jacobian_generators(f, 2, 4), FieldTag::rationals());
        CHECK(g.ambient == 126);
        CHECK(g.quotient_dim == c01.quotient_dim);
    }
    const auto ctx = g24_ci_context(spec, Rational(2));
    CHECK(bidegree(ctx, ExponentVector{4, 0, 0, 0, 0, 0, 1, 0}) == std::pair{0, 1});
    CHECK(bidegree(ctx, ExponentVector{2, 0, 0, 0, 0, 0, 0, 1}) == std::pair{0, 1});
    CHECK(ci_jacobian_generators(ctx).size() == 8);
}

TEST_CASE("quotients shrink as generators are added") {
    const auto spec = build_pencil(2, 4, PencilVariant::squares_quads);
    const auto f = evaluate_pencil(spec, Rational(3));
    const auto gens = grassmann_jacobian_generators(f, 2, 4);
    const PluckerSpace s(2, 4);
    const auto group = build_group(4, 2);
    const auto candidates = invariant_monomials(2, 4, 4, group);
    GradedSlice<Rational> slice(s, 4, FieldTag::rationals());
    for (const auto& rel : plucker_relations(2, 4)) slice.add_multiples(rel);
    std::size_t last_quotient = slice.ambient() - slice.rank();
    std::size_t last_invariant = candidates.size() + 1;
    for (const auto& g : gens) {
        slice.add_multiples(g);
        const std::size_t quotient = slice.ambient() - slice.rank();
        GradedSlice<Rational> copy = slice;
        const std::size_t invariant = copy.extend(candidates).size();
        CHECK(quotient <= last_quotient);
        CHECK(invariant <= last_invariant);
        last_quotient = quotient;
        last_invariant = invariant;
    }
    CHECK(last_quotient == 89);
    CHECK(last_invariant == 5);
}

TEST_CASE("the invariant subspace is stable across specializations") {
    const auto primes = primes_above((1ULL << 20) + 1, 2);
    const auto group = build_group(4, 2);
    for (auto v : all_variants) {
        std::vector<Specialization> at;
        for (long t : {2, 3, 5, 11}) {
            at.push_back({Rational(t), FieldTag::rationals()});
            for (auto p : primes) at.push_back({Rational(t), FieldTag::prime(p)});
        }
        at.push_back({Rational(1, 3), FieldTag::rationals()});
        const auto res = invariant_subspace(build_pencil(2, 4, v), group, 4, at);
        CHECK(res.unanimous);
        CHECK(res.bad_specializations.empty());
        CHECK(res.quotient_dim == 89);
        CHECK(res.invariant_dim == 5);
        CHECK(res.candidates.size() == 12);
        CHECK(res.reports.size() == at.size());
        for (const auto& rep : res.reports) {
            CHECK(rep.quotient_dim == 89);
            CHECK(rep.invariant_dim == 5u);
        }
    }
}

TEST_CASE("survivors and printed bases span the same invariant quotient") {
    const auto group = build_group(4, 2);
    const PluckerSpace s(2, 4);
    for (auto v : all_variants) {
        const auto spec = build_pencil(2, 4, v);
        const Specialization at{Rational(2), FieldTag::rationals()};
        const auto res = invariant_subspace(spec, group, 4, {at});
        const auto targets = parse_all(s, v == PencilVariant::arrow ? arrow_basis : variant_basis);
        const auto check = check_span(spec, 4, at, res.survivors, targets);
        CHECK(check.target_rank == 5);
        CHECK(check.targets_in_span);
    }
    // The same targets against survivors from a different specialization and field.
    const auto spec = build_pencil(2, 4, PencilVariant::arrow);
    const auto res = invariant_subspace(spec, group, 4, {{Rational(5), FieldTag::prime(1000003)}});
    const auto check = check_span(spec, 4, {Rational(5), FieldTag::prime(1000003)}, res.survivors, parse_all(s, arrow_basis));
    CHECK(check.target_rank == 5);
    CHECK(check.targets_in_span);
    // A set that is too small does not pass.
    const auto partial = check_span(spec, 4, {Rational(2), FieldTag::rationals()}, res.survivors,
                                    parse_all(s, {"p34^4", "p24^4"}));
    CHECK(partial.target_rank == 2);
}

TEST_CASE("G(2,5): eleven invariant classes") {
    const auto group = build_group(5, 2);
    const auto spec = build_pencil(2, 5, PencilVariant::arrow);
    std::vector<Specialization> at;
    for (long t : {2, 3, 7, 13}) at.push_back({Rational(t), FieldTag::prime(2147483647)});
    const auto res = invariant_subspace(spec, group, 5, at);
    CHECK(res.unanimous);
    CHECK(res.invariant_dim == 11);
    CHECK(res.candidates.size() == 32);
    for (const auto& rep : res.reports) {
        CHECK(rep.ambient == 2002);
        CHECK(rep.relation_rank == 2002 - 1176);
    }
    const PluckerSpace s(2, 5);
    for (const auto& a : at) {
        const auto check = check_span(spec, 5, a, res.survivors, parse_all(s, g25_basis));
        CHECK(check.target_rank == 11);
        CHECK(check.targets_in_span);
    }
}

TEST_CASE("isotypic reduction agrees with the full slice") {
    for (auto v : all_variants) {
        const auto spec = build_pencil(2, 4, v);
        const std::vector<Specialization> at{{Rational(3), FieldTag::rationals()}, {Rational(3), FieldTag::prime(1000003)}};
        const auto full = invariant_subspace(spec, build_group(4, 2), 4, at);
        const auto iso = invariant_subspace(spec, build_group(4, 2), 4, at, {.isotypic = true});
        CHECK(iso.invariant_dim == full.invariant_dim);
        CHECK(iso.survivors == full.survivors);
        CHECK(iso.reports[0].ambient == 12);
    }
    const std::vector<Specialization> at{{Rational(2), FieldTag::rationals()}, {Rational(7), FieldTag::rationals()}};
    const auto iso = invariant_subspace(build_pencil(2, 5, PencilVariant::arrow), build_group(5, 2), 5, at, {.isotypic = true});
    CHECK(iso.invariant_dim == 11);
}

TEST_CASE("disagreeing specializations are reported, never averaged") {
    const auto spec = build_pencil(2, 4, PencilVariant::arrow);
    const auto group = build_group(4, 2);
    // Characteristic 2 divides the degree; its answer differs from the generic one.
    const Specialization char2{Rational(1), FieldTag::prime(2)};
    const auto lone = invariant_subspace(spec, group, 4, {char2});
    REQUIRE(lone.quotient_dim != 89);

    const std::vector<Specialization> majority{{Rational(2), FieldTag::rationals()}, {Rational(3), FieldTag::rationals()}, char2};
    const auto res = invariant_subspace(spec, group, 4, majority);
    CHECK(!res.unanimous);
    CHECK(res.bad_specializations == std::vector<std::size_t>{2});
    CHECK(res.quotient_dim == 89);
    CHECK(res.invariant_dim == 5);

    const std::vector<Specialization> tie{{Rational(2), FieldTag::rationals()}, char2};
    CHECK_THROWS_AS(invariant_subspace(spec, group, 4, tie), InconsistencyError);
    CHECK_THROWS_AS(invariant_subspace(spec, group, 4, {}), DomainError);
    CHECK_THROWS_AS(invariant_subspace(spec, group, 4, {{Rational(0), FieldTag::rationals()}}), DomainError);
    CHECK_THROWS_AS(invariant_subspace(spec, build_group(5, 2), 4, majority), ContextError);
}

TEST_CASE("slice guards") {
    const PluckerSpace s(2, 4);
    const auto group = build_group(4, 2);
    GradedSlice<Rational> iso(s, 4, FieldTag::rationals(), &group);
    CHECK(iso.ambient() == 12);
    const auto bad = mono(s, "p12^4") + mono(s, "p12^3*p34");
    CHECK_THROWS_AS(iso.add_multiples(bad), ConstructionError);
    CHECK_THROWS_AS(GradedSlice<Rational>(PluckerSpace(3, 9), 5, FieldTag::rationals()), ResourceError);
    GradedSlice<Rational> full(s, 4, FieldTag::rationals());
    CHECK_THROWS_AS(full.add_multiples(mono(s, "p12^5")), DomainError);
    CHECK_THROWS_AS(full.contains(ExponentVector{1, 0, 0, 0, 0, 0}), DomainError);
}
