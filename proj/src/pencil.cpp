#include "grasscy/pencil.hpp"

#include <algorithm>
#include <set>

namespace grasscy {

std::string to_string(PencilVariant v) {
    switch (v) {
        case PencilVariant::arrow: return "arrow";
        case PencilVariant::squares: return "squares";
        case PencilVariant::quads: return "quads";
        case PencilVariant::squares_quads: return "squares+quads";
    }
    return "?";
}

PencilVariant parse_variant(const std::string& s) {
    if (s == "arrow") return PencilVariant::arrow;
    if (s == "squares") return PencilVariant::squares;
    if (s == "quads") return PencilVariant::quads;
    if (s == "squares+quads" || s == "squares_quads") return PencilVariant::squares_quads;
    throw DomainError("unknown pencil variant '" + s + "'");
}

namespace {

ExponentVector g24_monomial(const PluckerSpace& space, std::initializer_list<std::pair<std::vector<int>, int>> factors) {
    ExponentVector e(space.variable_count(), 0);
    for (const auto& [idx, k] : factors) e[space.position(idx)] += k;
    return e;
}

}  // namespace

PencilSpec build_pencil(int r, int n, PencilVariant variant) {
    if (variant != PencilVariant::arrow && !(r == 2 && n == 4))
        throw DomainError("variant " + to_string(variant) + " is only defined for G(2,4)");
    const PluckerSpace space(r, n);
    PencilSpec spec{r, n, variant, {}, ExponentVector(space.variable_count(), 0)};
    for (const auto& p : enumerate_arrow_partitions(r, n)) {
        ExponentVector e(space.variable_count(), 0);
        e[space.position(partition_to_index(p, r, n))] = n;
        spec.deforming.push_back(std::move(e));
    }
    for (const auto& idx : frozen_variables(r, n)) spec.frozen[space.position(idx)] += 1;

    const bool squares = variant == PencilVariant::squares || variant == PencilVariant::squares_quads;
    const bool quads = variant == PencilVariant::quads || variant == PencilVariant::squares_quads;
    if (squares) {
        spec.deforming.push_back(g24_monomial(space, {{{1, 4}, 2}, {{2, 3}, 2}}));
        spec.deforming.push_back(g24_monomial(space, {{{1, 3}, 2}, {{2, 4}, 2}}));
        spec.deforming.push_back(g24_monomial(space, {{{1, 2}, 2}, {{3, 4}, 2}}));
    }
    if (quads) {
        spec.deforming.push_back(g24_monomial(space, {{{1, 3}, 1}, {{1, 4}, 1}, {{2, 3}, 1}, {{2, 4}, 1}}));
        spec.deforming.push_back(g24_monomial(space, {{{1, 2}, 1}, {{1, 3}, 1}, {{2, 4}, 1}, {{3, 4}, 1}}));
    }
    return spec;
}

nlohmann::json to_json(const PencilSpec& spec) {
    return {{"r", spec.r},
            {"n", spec.n},
            {"variant", to_string(spec.variant)},
            {"monomials", spec.deforming},
            {"frozen", spec.frozen}};
}

PencilSpec pencil_from_json(const nlohmann::json& j) {
    PencilSpec spec;
    spec.r = j.at("r").get<int>();
    spec.n = j.at("n").get<int>();
    spec.variant = parse_variant(j.at("variant").get<std::string>());
    spec.deforming = j.at("monomials").get<std::vector<ExponentVector>>();
    spec.frozen = j.at("frozen").get<ExponentVector>();

    const PluckerSpace space(spec.r, spec.n);
    const std::size_t nv = space.variable_count();
    std::set<ExponentVector> distinct;
    auto check = [&](const ExponentVector& e) {
        if (e.size() != nv) throw DomainError("pencil monomial has the wrong number of variables");
        if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; }) || total_degree(e) != spec.n)
            throw DomainError("pencil monomials must be nonnegative of degree n");
    };
    for (const auto& e : spec.deforming) {
        check(e);
        if (!distinct.insert(e).second) throw DomainError("duplicate deforming monomial");
    }
    check(spec.frozen);
    return spec;
}

}  // namespace grasscy
