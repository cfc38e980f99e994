#pragma once

// Exact rank computations over Q and F_p.

#include <cstddef>
#include <span>
#include <vector>

#include "grasscy/scalar.hpp"
#include "grasscy/sparse_matrix.hpp"

namespace grasscy {

// Row echelon basis that grows one vector at a time. Stored rows have leading
// coefficient 1 and are zero left of their pivot.
template <class S>
class EchelonBasis {
public:
    EchelonBasis(std::size_t cols, FieldTag field);

    std::size_t cols() const { return cols_; }
    std::size_t rank() const { return rows_.size(); }

    // Adds v if it is independent of the current span; returns whether it was.
    bool insert(const SparseVector<S>& v);
    bool contains(const SparseVector<S>& v) const;

private:
    // Returns the dense residue of v modulo the span.
    std::vector<S> reduce(const SparseVector<S>& v) const;

    std::size_t cols_;
    FieldTag field_;
    std::vector<SparseVector<S>> rows_;
    std::vector<long> pivot_row_;
};

// Fraction-free (Bareiss) elimination over Q with smallest-magnitude pivots.
std::size_t rank(const SparseMatrix<Rational>& m);
// Gaussian elimination over F_p.
std::size_t rank(const SparseMatrix<Fp>& m);

template <class S>
std::size_t quotient_dimension(std::size_t ambient_dim, const SparseMatrix<S>& span) {
    if (span.cols() != ambient_dim) throw ContextError("span column count differs from the ambient dimension");
    return ambient_dim - rank(span);
}

// Greedy maximal subset of `candidates`, in order, each raising the rank of
// base plus the candidates already chosen.
template <class S>
std::vector<std::size_t> independent_extension(const SparseMatrix<S>& base,
                                               std::span<const SparseVector<S>> candidates) {
    EchelonBasis<S> basis(base.cols(), base.field());
    for (std::size_t r = 0; r < base.rows(); ++r) basis.insert(base.row(r));
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (basis.insert(candidates[i])) chosen.push_back(i);
    return chosen;
}

extern template class EchelonBasis<Rational>;
extern template class EchelonBasis<Fp>;

}  // namespace grasscy
