#include "grasscy/griffiths.hpp"

#include <algorithm>
#include <chrono>

#include "grasscy/workers.hpp"

namespace grasscy {

namespace {

constexpr std::size_t kMaxAmbient = 1'000'000;

// Image of a single Plücker coordinate: sign * p_{target}, or nothing.
struct CoordinateImage {
    int sign = 0;
    std::size_t var = 0;
};

CoordinateImage act_on_coordinate(const DerivationSpec& d, const PluckerIndex& idx, const PluckerSpace& space) {
    const int i = d.source;
    const int j = d.target;
    if (!idx.contains(j)) return {};
    if (i == j) return {1, space.position(idx)};
    if (idx.contains(i)) return {};
    std::vector<int> seq = idx.entries();
    std::replace(seq.begin(), seq.end(), j, i);
    const SignedIndex s = sort_with_sign(std::move(seq));
    return {s.sign, space.position(s.sorted)};
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

void check_size(std::size_t nvars, int degree) {
    Integer count;
    mpz_bin_uiui(count.get_mpz_t(), nvars + static_cast<unsigned long>(std::max(degree, 0)) - 1,
                 static_cast<unsigned long>(std::max(degree, 0)));
    if (count > static_cast<unsigned long>(kMaxAmbient)) throw ResourceError("graded slice exceeds 10^6 monomials");
}

}  // namespace

template <class S>
Polynomial<S> apply_derivation(const DerivationSpec& d, const Polynomial<S>& g, const PluckerSpace& space) {
    if (d.source < 1 || d.source > space.n() || d.target < 1 || d.target > space.n())
        throw DomainError("derivation index out of range");
    if (g.nvars() != space.variable_count()) throw ContextError("polynomial is not over the Plücker variables");
    std::vector<CoordinateImage> image;
    for (const auto& idx : space.indices()) image.push_back(act_on_coordinate(d, idx, space));

    Polynomial<S> out(g.nvars(), g.field());
    for (const auto& [e, c] : g.terms()) {
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0 || image[v].sign == 0) continue;
            ExponentVector f = e;
            f[v] -= 1;
            f[image[v].var] += 1;
            out.add_term(std::move(f), S(c * scalar_from<S>(g.field(), static_cast<long>(e[v]) * image[v].sign)));
        }
    }
    return out;
}

template <class S>
std::vector<Polynomial<S>> grassmann_jacobian_generators(const Polynomial<S>& f, int r, int n) {
    const PluckerSpace space(r, n);
    f.homogeneous_degree();
    std::vector<Polynomial<S>> out{f};
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) out.push_back(apply_derivation<S>({i, j}, f, space));
    for (int i = 1; i < n; ++i)
        out.push_back(apply_derivation<S>({i, i}, f, space) - apply_derivation<S>({i + 1, i + 1}, f, space));
    return out;
}

nlohmann::json to_json(const GradedPieceReport& report) {
    nlohmann::json j{{"rn", report.context},
                     {"degree", report.degree.size() == 1 ? nlohmann::json(report.degree[0]) : nlohmann::json(report.degree)},
                     {"t", report.t},
                     {"field", report.field},
                     {"ambient", report.ambient},
                     {"relation_rank", report.relation_rank},
                     {"ideal_rank", report.ideal_rank},
                     {"quotient_dim", report.quotient_dim},
                     {"invariant_dim", report.invariant_dim ? nlohmann::json(*report.invariant_dim) : nlohmann::json()},
                     {"survivors", report.survivor_names},
                     {"survivor_exponents", report.survivors},
                     {"isotypic", report.isotypic},
                     {"elapsed_ms", report.elapsed_ms}};
    if (!report.group.empty()) j["group"] = report.group;
    return j;
}

template <class S>
GradedSlice<S>::GradedSlice(const PluckerSpace& space, int degree, FieldTag field, const SymmetryGroup* isotypic)
    : space_(space), degree_(degree), field_(field), group_(isotypic), echelon_(0, field) {
    if (degree < 0) throw DomainError("negative degree");
    check_size(space.variable_count(), degree);
    if (group_ && (group_->r() != space.r() || group_->n() != space.n()))
        throw ContextError("group does not act on this Grassmannian");
    for (auto& m : monomials_of_degree(space.variable_count(), degree)) {
        if (group_ && !is_invariant(m, *group_)) continue;
        column_of_.emplace(m, columns_.size());
        columns_.push_back(std::move(m));
    }
    echelon_ = EchelonBasis<S>(columns_.size(), field);
}

template <class S>
std::optional<SparseVector<S>> GradedSlice<S>::row_of(const Polynomial<S>& g, const ExponentVector& shift) const {
    SparseVector<S> row;
    row.reserve(g.size());
    int kept = 0, dropped = 0;
    ExponentVector e(shift.size());
    for (const auto& [ge, c] : g.terms()) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ge[i] + shift[i];
        auto it = column_of_.find(e);
        if (it == column_of_.end()) {
            if (!group_ || total_degree(e) != degree_) throw DomainError("term outside the graded slice");
            ++dropped;
            continue;
        }
        ++kept;
        row.emplace_back(it->second, c);
    }
    if (kept && dropped) throw ConstructionError("spanning vector is not a weight vector of the group");
    if (!kept) return std::nullopt;
    return normalized(std::move(row));
}

template <class S>
void GradedSlice<S>::add_multiples(const Polynomial<S>& g) {
    if (g.is_zero()) return;
    if (g.field() != field_) throw ContextError("generator field mismatch");
    const int d = g.homogeneous_degree();
    if (d > degree_) throw DomainError("generator degree exceeds the slice degree");
    for (const auto& m : monomials_of_degree(space_.variable_count(), degree_ - d)) {
        if (auto row = row_of(g, m)) echelon_.insert(*row);
    }
}

template <class S>
std::vector<std::size_t> GradedSlice<S>::extend(const std::vector<ExponentVector>& candidates) {
    std::vector<std::size_t> chosen;
    const S one = scalar_from<S>(field_, 1L);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        auto it = column_of_.find(candidates[i]);
        if (it == column_of_.end()) throw DomainError("candidate monomial outside the slice");
        if (echelon_.insert(SparseVector<S>{{it->second, one}})) chosen.push_back(i);
    }
    return chosen;
}

template <class S>
bool GradedSlice<S>::contains(const ExponentVector& monomial) const {
    auto it = column_of_.find(monomial);
    if (it == column_of_.end()) throw DomainError("monomial outside the slice");
    return echelon_.contains(SparseVector<S>{{it->second, scalar_from<S>(field_, 1L)}});
}

template <class S>
GradedPieceReport graded_quotient(int r, int n, int degree, const std::vector<Polynomial<S>>& generators,
                                  FieldTag field) {
    const auto start = std::chrono::steady_clock::now();
    const PluckerSpace space(r, n);
    for (const auto& g : generators)
        if (!g.is_zero() && g.homogeneous_degree() > degree) throw DomainError("generator degree exceeds slice degree");
    GradedSlice<S> slice(space, degree, field);
    // Relations are quadrics: they have no multiples below degree 2.
    if (degree >= 2)
        for (const auto& rel : plucker_relations(r, n)) slice.add_multiples(map_to_field<S>(rel, field));
    GradedPieceReport rep;
    rep.context = "G(" + std::to_string(r) + "," + std::to_string(n) + ")";
    rep.degree = {degree};
    rep.field = field.name();
    rep.ambient = slice.ambient();
    rep.relation_rank = slice.rank();
    for (const auto& g : generators) slice.add_multiples(g);
    rep.ideal_rank = slice.rank();
    rep.quotient_dim = rep.ambient - rep.ideal_rank;
    rep.elapsed_ms = elapsed_since(start);
    return rep;
}

template <class S>
CIJacobianContext<S> make_ci_context(std::vector<Polynomial<S>> equations) {
    if (equations.empty()) throw DomainError("a complete intersection needs at least one equation");
    CIJacobianContext<S> ctx;
    ctx.x_count = equations.front().nvars();
    ctx.field = equations.front().field();
    for (const auto& f : equations) {
        if (f.nvars() != ctx.x_count || f.field() != ctx.field) throw ContextError("equations live in different rings");
        ctx.degrees.push_back(f.homogeneous_degree());
    }
    ctx.equations = std::move(equations);
    return ctx;
}

template <class S>
CIJacobianContext<S> g24_ci_context(const PencilSpec& spec, const S& t) {
    if (spec.r != 2 || spec.n != 4) throw DomainError("the P^5 model is specific to G(2,4)");
    const auto rels = plucker_relations(2, 4);
    return make_ci_context<S>({evaluate_pencil(spec, t), map_to_field<S>(rels.at(0), field_of(t))});
}

namespace {

template <class S>
Polynomial<S> widen(const Polynomial<S>& f, std::size_t extra) {
    Polynomial<S> out(f.nvars() + extra, f.field());
    for (const auto& [e, c] : f.terms()) {
        ExponentVector w = e;
        w.resize(e.size() + extra, 0);
        out.add_term(std::move(w), c);
    }
    return out;
}

template <class S>
std::vector<ExponentVector> bidegree_monomials(const CIJacobianContext<S>& ctx, int a, int b) {
    std::vector<ExponentVector> out;
    if (b < 0) return out;
    const std::size_t c = ctx.equations.size();
    for (const auto& beta : monomials_of_degree(c, b)) {
        int xdeg = a;
        for (std::size_t j = 0; j < c; ++j) xdeg += beta[j] * ctx.degrees[j];
        if (xdeg < 0) continue;
        check_size(ctx.x_count, xdeg);
        for (const auto& alpha : monomials_of_degree(ctx.x_count, xdeg)) {
            ExponentVector e = alpha;
            e.insert(e.end(), beta.begin(), beta.end());
            out.push_back(std::move(e));
        }
    }
    return out;
}

}  // namespace

template <class S>
std::vector<Polynomial<S>> ci_jacobian_generators(const CIJacobianContext<S>& ctx) {
    const std::size_t c = ctx.equations.size();
    const std::size_t total = ctx.x_count + c;
    const S one = scalar_from<S>(ctx.field, 1L);
    std::vector<Polynomial<S>> out;
    Polynomial<S> big_f(total, ctx.field);
    for (std::size_t j = 0; j < c; ++j) {
        const Polynomial<S> fj = widen(ctx.equations[j], c);
        out.push_back(fj);
        big_f += Polynomial<S>::variable(total, ctx.x_count + j, one) * fj;
    }
    for (std::size_t i = 0; i < ctx.x_count; ++i) out.push_back(big_f.derivative(i));
    return out;
}

template <class S>
std::pair<int, int> bidegree(const CIJacobianContext<S>& ctx, const ExponentVector& e) {
    if (e.size() != ctx.x_count + ctx.equations.size()) throw ContextError("exponent vector has the wrong length");
    int a = 0, b = 0;
    for (std::size_t i = 0; i < ctx.x_count; ++i) a += e[i];
    for (std::size_t j = 0; j < ctx.equations.size(); ++j) {
        a -= e[ctx.x_count + j] * ctx.degrees[j];
        b += e[ctx.x_count + j];
    }
    return {a, b};
}

template <class S>
GradedPieceReport ci_bigraded_quotient(const CIJacobianContext<S>& ctx, int a, int b) {
    const auto start = std::chrono::steady_clock::now();
    const auto columns = bidegree_monomials(ctx, a, b);
    std::map<ExponentVector, std::size_t> column_of;
    for (std::size_t i = 0; i < columns.size(); ++i) column_of.emplace(columns[i], i);

    EchelonBasis<S> echelon(columns.size(), ctx.field);
    ExponentVector e;
    for (const auto& g : ci_jacobian_generators(ctx)) {
        if (g.is_zero()) continue;
        const auto gdeg = bidegree(ctx, g.terms().begin()->first);
        for (const auto& [ge, c] : g.terms())
            if (bidegree(ctx, ge) != gdeg) throw DomainError("Jacobian generator is not bihomogeneous");
        for (const auto& m : bidegree_monomials(ctx, a - gdeg.first, b - gdeg.second)) {
            SparseVector<S> row;
            for (const auto& [ge, c] : g.terms()) {
                e = ge;
                for (std::size_t i = 0; i < e.size(); ++i) e[i] += m[i];
                row.emplace_back(column_of.at(e), c);
            }
            echelon.insert(normalized(std::move(row)));
        }
    }

    GradedPieceReport rep;
    std::string degs;
    for (int d : ctx.degrees) degs += (degs.empty() ? "" : ",") + std::to_string(d);
    rep.context = "CI(P^" + std::to_string(ctx.x_count - 1) + ";" + degs + ")";
    rep.degree = {a, b};
    rep.field = ctx.field.name();
    rep.ambient = columns.size();
    rep.ideal_rank = echelon.rank();
    rep.quotient_dim = rep.ambient - rep.ideal_rank;
    rep.elapsed_ms = elapsed_since(start);
    return rep;
}

namespace {

template <class S>
GradedSlice<S> jacobian_slice(const PencilSpec& spec, int degree, const Specialization& at, const SymmetryGroup* group,
                              std::size_t& relation_rank) {
    const PluckerSpace space(spec.r, spec.n);
    const S t = scalar_from<S>(at.field, at.t);
    if (is_zero(t)) throw DomainError("t = 0 does not give a Calabi-Yau member");
    const Polynomial<S> f = evaluate_pencil(spec, t);
    GradedSlice<S> slice(space, degree, at.field, group);
    for (const auto& rel : plucker_relations(spec.r, spec.n)) slice.add_multiples(map_to_field<S>(rel, at.field));
    relation_rank = slice.rank();
    for (const auto& g : grassmann_jacobian_generators(f, spec.r, spec.n)) slice.add_multiples(g);
    return slice;
}

template <class S>
GradedPieceReport invariant_report(const PencilSpec& spec, const SymmetryGroup& group, int degree,
                                   const Specialization& at, const std::vector<ExponentVector>& candidates,
                                   bool isotypic) {
    const auto start = std::chrono::steady_clock::now();
    std::size_t relation_rank = 0;
    GradedSlice<S> slice = jacobian_slice<S>(spec, degree, at, isotypic ? &group : nullptr, relation_rank);
    GradedPieceReport rep;
    rep.context = "G(" + std::to_string(spec.r) + "," + std::to_string(spec.n) + ")";
    rep.degree = {degree};
    rep.t = at.t.get_str();
    rep.field = at.field.name();
    rep.ambient = slice.ambient();
    rep.relation_rank = relation_rank;
    rep.ideal_rank = slice.rank();
    rep.quotient_dim = rep.ambient - rep.ideal_rank;
    rep.isotypic = isotypic;
    rep.group = group.label();
    const auto chosen = slice.extend(candidates);
    rep.invariant_dim = chosen.size();
    for (std::size_t i : chosen) {
        rep.survivors.push_back(candidates[i]);
        rep.survivor_names.push_back(group.space().format_monomial(candidates[i]));
    }
    rep.elapsed_ms = elapsed_since(start);
    return rep;
}

}  // namespace

InvariantSubspaceResult invariant_subspace(const PencilSpec& spec, const SymmetryGroup& group, int degree,
                                           const std::vector<Specialization>& specializations,
                                           const InvariantOptions& opts) {
    if (specializations.empty()) throw DomainError("need at least one specialization");
    if (group.r() != spec.r || group.n() != spec.n) throw ContextError("group does not act on the pencil's Grassmannian");
    for (const auto& m : spec.deforming)
        if (!is_invariant(m, group)) throw DomainError("pencil is not invariant under the group");

    InvariantSubspaceResult result;
    result.candidates = invariant_monomials(spec.r, spec.n, degree, group);
    result.reports.resize(specializations.size());
    parallel_for(specializations.size(), worker_count(opts.workers), [&](std::size_t i) {
        const auto& at = specializations[i];
        result.reports[i] = at.field.is_rational()
                                ? invariant_report<Rational>(spec, group, degree, at, result.candidates, opts.isotypic)
                                : invariant_report<Fp>(spec, group, degree, at, result.candidates, opts.isotypic);
    });

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> tally;
    for (const auto& rep : result.reports) ++tally[{rep.quotient_dim, *rep.invariant_dim}];
    auto best = tally.begin();
    bool tie = false;
    for (auto it = tally.begin(); it != tally.end(); ++it) {
        if (it->second > best->second) {
            best = it;
            tie = false;
        } else if (it != best && it->second == best->second) {
            tie = true;
        }
    }
    result.unanimous = tally.size() == 1;
    if (!result.unanimous && (tie || best->second < 2)) {
        std::string detail;
        for (const auto& rep : result.reports)
            detail += " [t=" + rep.t + " over " + rep.field + ": quotient " + std::to_string(rep.quotient_dim) +
                      ", invariant " + std::to_string(*rep.invariant_dim) + "]";
        throw InconsistencyError("specializations disagree with no shared answer:" + detail);
    }
    result.quotient_dim = best->first.first;
    result.invariant_dim = best->first.second;
    bool have_survivors = false;
    for (std::size_t i = 0; i < result.reports.size(); ++i) {
        const auto& rep = result.reports[i];
        if (rep.quotient_dim != result.quotient_dim || *rep.invariant_dim != result.invariant_dim) {
            result.bad_specializations.push_back(i);
        } else if (!have_survivors) {
            result.survivors = rep.survivors;
            have_survivors = true;
        }
    }
    return result;
}

namespace {

template <class S>
SpanCheck check_span_in(const PencilSpec& spec, int degree, const Specialization& at,
                        const std::vector<ExponentVector>& survivors, const std::vector<ExponentVector>& targets) {
    std::size_t relation_rank = 0;
    GradedSlice<S> base = jacobian_slice<S>(spec, degree, at, nullptr, relation_rank);
    GradedSlice<S> with_targets = base;
    SpanCheck out;
    out.target_rank = with_targets.extend(targets).size();
    base.extend(survivors);
    out.targets_in_span = std::all_of(targets.begin(), targets.end(), [&](const auto& m) { return base.contains(m); });
    return out;
}

}  // namespace

SpanCheck check_span(const PencilSpec& spec, int degree, const Specialization& at,
                     const std::vector<ExponentVector>& survivors, const std::vector<ExponentVector>& targets) {
    return at.field.is_rational() ? check_span_in<Rational>(spec, degree, at, survivors, targets)
                                  : check_span_in<Fp>(spec, degree, at, survivors, targets);
}

#define GRASSCY_INSTANTIATE(S)                                                                                      \
    template Polynomial<S> apply_derivation<S>(const DerivationSpec&, const Polynomial<S>&, const PluckerSpace&);   \
    template std::vector<Polynomial<S>> grassmann_jacobian_generators<S>(const Polynomial<S>&, int, int);          \
    template class GradedSlice<S>;                                                                                  \
    template GradedPieceReport graded_quotient<S>(int, int, int, const std::vector<Polynomial<S>>&, FieldTag);      \
    template CIJacobianContext<S> make_ci_context<S>(std::vector<Polynomial<S>>);                                  \
    template CIJacobianContext<S> g24_ci_context<S>(const PencilSpec&, const S&);                                  \
    template std::vector<Polynomial<S>> ci_jacobian_generators<S>(const CIJacobianContext<S>&);                    \
    template std::pair<int, int> bidegree<S>(const CIJacobianContext<S>&, const ExponentVector&);                  \
    template GradedPieceReport ci_bigraded_quotient<S>(const CIJacobianContext<S>&, int, int);

GRASSCY_INSTANTIATE(Rational)
GRASSCY_INSTANTIATE(Fp)

#undef GRASSCY_INSTANTIATE

}  // namespace grasscy
