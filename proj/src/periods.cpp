#include "grasscy/periods.hpp"

#include <algorithm>
#include <set>

namespace grasscy {

namespace {

// Variables t1, t2, t3, t4 and the pencil parameter t.
constexpr std::size_t kVars = 5;
constexpr std::size_t kT = 4;

using Laurent = Polynomial<Rational>;

Laurent mono(std::initializer_list<int> e, long c = 1) { return Laurent::monomial(ExponentVector(e), Rational(c)); }

void require(bool ok, const std::string& what) {
    if (!ok) throw ConstructionError("period kernel check failed: " + what);
}

}  // namespace

PeriodKernel build_period_kernel() {
    PeriodKernel out;
    const Laurent one = Laurent::constant(kVars, Rational(1));
    const Laurent t1 = mono({1, 0, 0, 0, 0});
    const Laurent t4 = mono({0, 0, 0, 1, 0});
    const Laurent t = mono({0, 0, 0, 0, 1});
    const Laurent inv_t1sq_t2_t3 = mono({-2, -1, -1, 0, 0});       // 1/(t1^2 t2 t3)
    const Laurent inv_t1sq_t2_t3_t4 = mono({-2, -1, -1, -1, 0});   // 1/(t1^2 t2 t3 t4)
    const Laurent t1sq_t2_t3 = mono({2, 1, 1, 0, 0});

    const Laurent w = inv_t1sq_t2_t3 - (t1 + t4) * inv_t1sq_t2_t3_t4;
    require(w == mono({-1, -1, -1, -1, 0}, -1), "w = -1/(t1 t2 t3 t4)");
    out.provenance.push_back("w = 1/(t1^2 t2 t3) - (t1 + t4)/(t1^2 t2 t3 t4) reduces to -1/(t1 t2 t3 t4)");

    const Laurent sigma = w.pow(4) + mono({-4, 0, 0, 0, 0}) + mono({-4, -4, 0, 0, 0}) + mono({-4, 0, -4, 0, 0}) +
                          (t1 + t4).pow(4) * mono({-4, -4, -4, -4, 0}) + one;
    out.provenance.push_back("six-term sum expanded to " + std::to_string(sigma.size()) + " Laurent terms");

    const Laurent inner = sigma * t - w * inv_t1sq_t2_t3;
    const Laurent b = -(inner * t1sq_t2_t3 * inverse_monomial(w));
    out.provenance.push_back("B_t assembled with division by the monomial w");

    const auto by_t = coefficients_in(b, kT);
    require(by_t.size() == 2 && by_t.count(0) && by_t.count(1), "B_t is affine-linear in t");
    require(by_t.at(0) == one, "B_t has constant part 1 in t");

    Polynomial<Rational> kernel(4);
    for (const auto& [e, c] : by_t.at(1).terms()) kernel.add_term(ExponentVector(e.begin(), e.begin() + 4), c);

    Laurent lifted(kVars);
    for (const auto& [e, c] : kernel.terms()) {
        ExponentVector f = e;
        f.push_back(1);
        lifted.add_term(std::move(f), c);
    }
    require((b - (one + lifted)).is_zero(), "B_t - (1 + t L) = 0");
    require(is_zero(constant_term(kernel)), "L has no constant term");
    out.provenance.push_back("B_t = 1 + t*L with L of " + std::to_string(kernel.size()) + " terms");
    out.kernel = std::move(kernel);
    return out;
}

std::vector<Integer> period_coefficients(const PeriodKernel& kernel, int k_max) {
    if (k_max < 0) throw DomainError("k_max must be nonnegative");
    std::vector<Integer> out;
    Polynomial<Rational> power = Polynomial<Rational>::constant(kernel.kernel.nvars(), Rational(1));
    for (int k = 0; k <= k_max; ++k) {
        if (k > 0) power = power * kernel.kernel;
        const Rational ct = constant_term(power);
        if (ct.get_den() != 1) throw ConstructionError("non-integral period coefficient");
        out.push_back(k % 2 == 0 ? ct.get_num() : Integer(-ct.get_num()));
    }
    return out;
}

PeriodSeries::PeriodSeries() : PeriodSeries(build_period_kernel()) {}

PeriodSeries::PeriodSeries(PeriodKernel kernel)
    : kernel_(std::move(kernel)), power_(Polynomial<Rational>::constant(kernel_.kernel.nvars(), Rational(1))) {}

std::vector<Integer> PeriodSeries::coefficients(int k_max) const {
    if (k_max < 0) throw DomainError("k_max must be nonnegative");
    std::lock_guard lock(mutex_);
    while (static_cast<int>(cache_.size()) <= k_max) {
        if (!cache_.empty()) power_ = power_ * kernel_.kernel;
        const Rational ct = constant_term(power_);
        if (ct.get_den() != 1) throw ConstructionError("non-integral period coefficient");
        cache_.push_back(cache_.size() % 2 == 0 ? ct.get_num() : Integer(-ct.get_num()));
    }
    return {cache_.begin(), cache_.begin() + k_max + 1};
}

const PeriodSeries& default_period_series() {
    static const PeriodSeries series;
    return series;
}

Fp hasse_witt(std::uint64_t p, const Fp& t) {
    if (p < 3 || !is_prime(p)) throw DomainError("Hasse-Witt invariant needs an odd prime");
    if (t.modulus() != p) throw ContextError("t does not live in F_p");
    const auto coeffs = default_period_series().coefficients(static_cast<int>(p) - 1);
    const FieldTag field = FieldTag::prime(p);
    Fp sum(0, p);
    Fp power(1, p);
    for (const Integer& c : coeffs) {
        sum += scalar_from<Fp>(field, Rational(c)) * power;
        power *= t;
    }
    return sum;
}

Fp hypergeometric_truncation(std::span<const Rational> upper, std::span<const Rational> lower, std::uint64_t p,
                             const Fp& z) {
    if (p < 3 || !is_prime(p)) throw DomainError("hypergeometric truncation needs an odd prime");
    if (z.modulus() != p) throw ContextError("z does not live in F_p");
    const FieldTag field = FieldTag::prime(p);
    std::vector<Fp> a, b;
    for (const auto& q : upper) a.push_back(scalar_from<Fp>(field, q));  // throws if p | denominator
    for (const auto& q : lower) b.push_back(scalar_from<Fp>(field, q));

    Fp sum(0, p);
    Fp term(1, p);  // prod (a_i)_k / (prod (b_j)_k k!) z^k
    for (std::uint64_t k = 0; k < p; ++k) {
        sum += term;
        if (k + 1 == p) break;
        const Fp kk(static_cast<std::int64_t>(k), p);
        Fp num(1, p), den(static_cast<std::int64_t>(k + 1), p);
        for (const Fp& x : a) num *= x + kk;
        for (const Fp& x : b) den *= x + kk;
        if (is_zero(den)) throw DomainError("lower Pochhammer symbol vanishes mod p before the truncation point");
        term = term * num / den * z;
    }
    return sum;
}

const std::vector<Rational>& classical_upper_parameters() {
    static const std::vector<Rational> params{Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1, 2)};
    return params;
}

const std::vector<Rational>& classical_lower_parameters() {
    static const std::vector<Rational> params{Rational(1), Rational(1), Rational(1)};
    return params;
}

SearchReport truncation_search(std::uint64_t p, std::span<const PointCountRecord> counts) {
    if (p < 3 || !is_prime(p)) throw DomainError("search needs an odd prime");
    std::vector<std::uint64_t> residue(p, 0);
    std::set<std::uint64_t> seen;
    for (const auto& rec : counts) {
        if (rec.p != p || rec.t == 0 || rec.t >= p) throw DomainError("count record outside the search grid");
        residue[rec.t] = rec.count % p;
        seen.insert(rec.t);
    }
    if (seen.size() != p - 1) throw DomainError("counts must cover every t in 1..p-1");

    // 1 - F(z) for every z in F_p.
    std::vector<std::uint64_t> predicted(p);
    for (std::uint64_t z = 0; z < p; ++z) {
        const Fp f = hypergeometric_truncation(classical_upper_parameters(), classical_lower_parameters(), p,
                                               Fp::from_residue(z, p));
        predicted[z] = (Fp(1, static_cast<std::uint64_t>(p)) - f).value();
    }

    SearchReport report{p, {}, {}};
    for (std::uint64_t a = 1; a < p; ++a) {
        for (std::uint64_t b = 1; b < p; ++b) {
            SearchCandidate cand{a, b, 0};
            for (std::uint64_t t = 1; t < p; ++t) {
                const std::uint64_t z = a * pow_mod(t, b, p) % p;
                if (predicted[z] != residue[t]) {
                    cand.first_failing_t = t;
                    break;
                }
            }
            if (cand.first_failing_t == 0) report.hits.emplace_back(a, b);
            report.scan_log.push_back(cand);
        }
    }
    return report;
}

nlohmann::json to_json(const SearchReport& report, bool include_log) {
    nlohmann::json hits = nlohmann::json::array();
    for (const auto& [a, b] : report.hits) hits.push_back({{"a", a}, {"b", b}});
    nlohmann::json j{{"p", report.p}, {"candidates", report.scan_log.size()}, {"search_hits", hits}};
    if (include_log) {
        nlohmann::json log = nlohmann::json::array();
        for (const auto& c : report.scan_log) log.push_back({c.a, c.b, c.first_failing_t});
        j["scan_log"] = log;
        j["scan_log_columns"] = {"a", "b", "first_failing_t"};
    }
    return j;
}

}  // namespace grasscy
