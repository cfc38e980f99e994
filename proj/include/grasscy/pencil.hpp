#pragma once

// One-parameter families t * (deforming sum) + (frozen product) in Plücker
// coordinates.

#include <string>
#include <vector>

#include "json.hpp"

#include "grasscy/grassmann.hpp"
#include "grasscy/polynomial.hpp"

namespace grasscy {

enum class PencilVariant { arrow, squares, quads, squares_quads };

std::string to_string(PencilVariant v);
PencilVariant parse_variant(const std::string& s);

struct PencilSpec {
    int r = 0;
    int n = 0;
    PencilVariant variant = PencilVariant::arrow;
    std::vector<ExponentVector> deforming;  // each carries coefficient 1
    ExponentVector frozen;                  // product of the n frozen variables
};

// The arrow pencil of G(r,n); the three other variants exist only for G(2,4)
// and add the pairs of squares, the non-frozen four-fold products, or both.
PencilSpec build_pencil(int r, int n, PencilVariant variant);

template <class S>
Polynomial<S> evaluate_pencil(const PencilSpec& spec, const S& t) {
    const std::size_t nv = spec.frozen.size();
    const FieldTag field = field_of(t);
    const S one = scalar_from<S>(field, 1L);
    Polynomial<S> f(nv, field);
    for (const auto& m : spec.deforming) f.add_term(m, t);
    f.add_term(spec.frozen, one);
    return f;
}

nlohmann::json to_json(const PencilSpec& spec);
PencilSpec pencil_from_json(const nlohmann::json& j);

}  // namespace grasscy
