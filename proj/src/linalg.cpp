#include "grasscy/linalg.hpp"

#include <cstdlib>

namespace grasscy {

template <class S>
EchelonBasis<S>::EchelonBasis(std::size_t cols, FieldTag field)
    : cols_(cols), field_(field), pivot_row_(cols, -1) {}

template <class S>
std::vector<S> EchelonBasis<S>::reduce(const SparseVector<S>& v) const {
    const S zero = scalar_from<S>(field_, 0L);
    std::vector<S> dense(cols_, zero);
    for (const auto& [c, x] : v) {
        if (c >= cols_) throw DomainError("vector index out of range");
        if (field_of(x) != field_) throw ContextError("vector entry field mismatch");
        dense[c] += x;
    }
    const std::size_t start = v.empty() ? cols_ : v.front().first;
    for (std::size_t j = start; j < cols_; ++j) {
        if (is_zero(dense[j]) || pivot_row_[j] < 0) continue;
        const S factor = dense[j];
        for (const auto& [c, x] : rows_[static_cast<std::size_t>(pivot_row_[j])]) dense[c] -= S(factor * x);
    }
    return dense;
}

template <class S>
bool EchelonBasis<S>::insert(const SparseVector<S>& v) {
    std::vector<S> dense = reduce(v);
    std::size_t lead = 0;
    while (lead < cols_ && is_zero(dense[lead])) ++lead;
    if (lead == cols_) return false;
    const S inv = S(scalar_from<S>(field_, 1L) / dense[lead]);
    SparseVector<S> row;
    for (std::size_t c = lead; c < cols_; ++c)
        if (!is_zero(dense[c])) row.emplace_back(c, S(dense[c] * inv));
    pivot_row_[lead] = static_cast<long>(rows_.size());
    rows_.push_back(std::move(row));
    return true;
}

template <class S>
bool EchelonBasis<S>::contains(const SparseVector<S>& v) const {
    const std::vector<S> dense = reduce(v);
    for (const S& x : dense)
        if (!is_zero(x)) return false;
    return true;
}

template class EchelonBasis<Rational>;
template class EchelonBasis<Fp>;

std::size_t rank(const SparseMatrix<Rational>& m) {
    const std::size_t nrows = m.rows();
    const std::size_t ncols = m.cols();
    // Clear denominators row by row; rank is unchanged by nonzero row scaling.
    std::vector<std::vector<Integer>> a(nrows, std::vector<Integer>(ncols, 0));
    for (std::size_t r = 0; r < nrows; ++r) {
        Integer scale = 1;
        for (const auto& [c, x] : m.row(r)) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.get_den_mpz_t());
        for (const auto& [c, x] : m.row(r)) a[r][c] = x.get_num() * (scale / x.get_den());
    }

    std::size_t k = 0;
    Integer prev = 1;
    Integer t;
    for (std::size_t c = 0; c < ncols && k < nrows; ++c) {
        std::size_t best = nrows;
        for (std::size_t i = k; i < nrows; ++i) {
            if (sgn(a[i][c]) == 0) continue;
            if (best == nrows || mpz_cmpabs(a[i][c].get_mpz_t(), a[best][c].get_mpz_t()) < 0) best = i;
        }
        if (best == nrows) continue;
        std::swap(a[k], a[best]);
        const Integer& piv = a[k][c];
        for (std::size_t i = k + 1; i < nrows; ++i) {
            Integer& lead = a[i][c];
            for (std::size_t j = c + 1; j < ncols; ++j) {
                if (sgn(lead) == 0 && sgn(a[i][j]) == 0) continue;
                t = piv * a[i][j] - lead * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            lead = 0;
        }
        prev = piv;
        ++k;
    }
    return k;
}

std::size_t rank(const SparseMatrix<Fp>& m) {
    EchelonBasis<Fp> basis(m.cols(), m.field());
    for (std::size_t r = 0; r < m.rows(); ++r) basis.insert(m.row(r));
    return basis.rank();
}

}  // namespace grasscy
