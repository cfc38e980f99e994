#pragma once

// Graded pieces of Jacobian rings: the complete-intersection ring for the P^5
// model of G(2,4) hypersurfaces, and the generalized Jacobian ring of a
// Grassmannian hypersurface built from the gl_n derivations D^i_j. Every
// dimension is the corank of a single graded slice, so no Gröbner bases are
// involved.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "grasscy/grassmann.hpp"
#include "grasscy/linalg.hpp"
#include "grasscy/pencil.hpp"
#include "grasscy/polynomial.hpp"
#include "grasscy/symmetry.hpp"

namespace grasscy {

// D^i_j = x_i d/dx_j acting on wedge products x_{i1} ^ ... ^ x_{ir}.
struct DerivationSpec {
    int source = 1;  // i
    int target = 1;  // j
};

template <class S>
Polynomial<S> apply_derivation(const DerivationSpec& d, const Polynomial<S>& g, const PluckerSpace& space);

// [f] + [D^i_j f, i != j] + [D^i_i f - D^{i+1}_{i+1} f, i = 1..n-1].
template <class S>
std::vector<Polynomial<S>> grassmann_jacobian_generators(const Polynomial<S>& f, int r, int n);

struct GradedPieceReport {
    std::string context;       // "G(r,n)" or "CI(P^m; d1,...)"
    std::vector<int> degree;   // {d} or the bidegree {a, b}
    std::string t;             // specialization of the pencil parameter, if any
    std::string field;
    std::size_t ambient = 0;
    std::size_t relation_rank = 0;  // Plücker-relation multiples alone
    std::size_t ideal_rank = 0;     // relations and ideal generators together
    std::size_t quotient_dim = 0;
    std::optional<std::size_t> invariant_dim;
    std::vector<ExponentVector> survivors;
    std::vector<std::string> survivor_names;
    std::string group;
    bool isotypic = false;  // slice restricted to the invariant isotypic part
    double elapsed_ms = 0;
};

nlohmann::json to_json(const GradedPieceReport& report);

// One graded slice of C[p_I] modulo the Plücker ideal plus an optional ideal,
// kept in row echelon form so further vectors can be tested or adjoined.
// With a group, only the invariant isotypic component is kept: columns are the
// invariant monomials and only invariant spanning vectors are adjoined (every
// spanning vector is a weight vector of the diagonal group, so this computes
// the invariant part of the quotient exactly).
template <class S>
class GradedSlice {
public:
    GradedSlice(const PluckerSpace& space, int degree, FieldTag field, const SymmetryGroup* isotypic = nullptr);

    int degree() const { return degree_; }
    std::size_t ambient() const { return columns_.size(); }
    const std::vector<ExponentVector>& columns() const { return columns_; }
    std::size_t rank() const { return echelon_.rank(); }
    bool isotypic() const { return group_ != nullptr; }

    // Adds m * g for every monomial m making m * g land in this degree.
    void add_multiples(const Polynomial<S>& g);
    // Adjoins monomial candidates in order; returns the indices that raised the rank.
    std::vector<std::size_t> extend(const std::vector<ExponentVector>& candidates);
    bool contains(const ExponentVector& monomial) const;

private:
    // Row vector of x^shift * g; nullopt when the isotypic filter drops it.
    std::optional<SparseVector<S>> row_of(const Polynomial<S>& g, const ExponentVector& shift) const;

    PluckerSpace space_;
    int degree_;
    FieldTag field_;
    const SymmetryGroup* group_;
    std::vector<ExponentVector> columns_;
    std::map<ExponentVector, std::size_t> column_of_;
    EchelonBasis<S> echelon_;
};

// Slice of C[p_I] / (P + (generators)) in one degree.
template <class S>
GradedPieceReport graded_quotient(int r, int n, int degree, const std::vector<Polynomial<S>>& generators,
                                  FieldTag field);

// Jacobian ring data of a complete intersection f_1 = ... = f_c = 0 in P^{m-1}.
// Polynomials over x_1..x_m, y_1..y_c use m + c variables, x first.
template <class S>
struct CIJacobianContext {
    std::size_t x_count = 0;
    std::vector<Polynomial<S>> equations;  // over the x-variables only
    std::vector<int> degrees;
    FieldTag field;
};

template <class S>
CIJacobianContext<S> make_ci_context(std::vector<Polynomial<S>> equations);

// The G(2,4) hypersurface as {f = 0, Plücker quadric = 0} in P^5.
template <class S>
CIJacobianContext<S> g24_ci_context(const PencilSpec& spec, const S& t);

// f_1..f_c and dF/dx_i for F = sum y_j f_j, in the m + c variables.
template <class S>
std::vector<Polynomial<S>> ci_jacobian_generators(const CIJacobianContext<S>& ctx);

// (|alpha| - sum beta_j d_j, |beta|) for x^alpha y^beta.
template <class S>
std::pair<int, int> bidegree(const CIJacobianContext<S>& ctx, const ExponentVector& e);

template <class S>
GradedPieceReport ci_bigraded_quotient(const CIJacobianContext<S>& ctx, int a, int b);

// A value of the pencil parameter together with the field it is reduced into.
struct Specialization {
    Rational t;
    FieldTag field;
};

struct InvariantOptions {
    bool isotypic = false;  // restrict slices to the invariant isotypic component
    unsigned workers = 0;
};

struct InvariantSubspaceResult {
    std::vector<GradedPieceReport> reports;  // one per specialization, in input order
    std::vector<ExponentVector> candidates;  // invariant monomials, graded-lex order
    std::size_t quotient_dim = 0;            // consensus
    std::size_t invariant_dim = 0;           // consensus
    std::vector<ExponentVector> survivors;   // from the first specialization agreeing with the consensus
    bool unanimous = true;
    std::vector<std::size_t> bad_specializations;
};

// Dimension of the group-invariant part of the degree-`degree` slice of the
// generalized Jacobian ring of the pencil, at each specialization. Specializations
// disagreeing with the most common answer are listed as bad; if no answer is
// shared by two or more specializations an InconsistencyError is thrown.
InvariantSubspaceResult invariant_subspace(const PencilSpec& spec, const SymmetryGroup& group, int degree,
                                           const std::vector<Specialization>& specializations,
                                           const InvariantOptions& opts = {});

struct SpanCheck {
    std::size_t target_rank = 0;    // rank the targets add over the Jacobian ideal
    bool targets_in_span = false;   // every target lies in span(ideal + survivors)
};

// Compares a list of target monomials with computed survivors in the quotient
// at one specialization.
SpanCheck check_span(const PencilSpec& spec, int degree, const Specialization& at,
                     const std::vector<ExponentVector>& survivors, const std::vector<ExponentVector>& targets);

}  // namespace grasscy
