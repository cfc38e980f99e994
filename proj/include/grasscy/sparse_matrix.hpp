#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "grasscy/errors.hpp"
#include "grasscy/scalar.hpp"

namespace grasscy {

// Sorted (column, value) pairs with no zero values.
template <class S>
using SparseVector = std::vector<std::pair<std::size_t, S>>;

// Sorts by column, merges duplicates and drops zeros.
template <class S>
SparseVector<S> normalized(SparseVector<S> v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVector<S> out;
    out.reserve(v.size());
    for (auto& [c, x] : v) {
        if (!out.empty() && out.back().first == c)
            out.back().second += x;
        else
            out.emplace_back(c, std::move(x));
        if (is_zero(out.back().second)) out.pop_back();
    }
    return out;
}

template <class S>
class SparseMatrix {
public:
    using Row = SparseVector<S>;

    SparseMatrix(std::size_t rows, std::size_t cols, FieldTag field)
        : cols_(cols), field_(field), rows_(rows) {}
    SparseMatrix(std::size_t cols, FieldTag field) : SparseMatrix(0, cols, field) {}

    std::size_t rows() const { return rows_.size(); }
    std::size_t cols() const { return cols_; }
    const FieldTag& field() const { return field_; }
    const Row& row(std::size_t r) const { return rows_.at(r); }

    void set(std::size_t r, std::size_t c, const S& v) {
        check_index(r, c);
        auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, std::size_t col) { return e.first < col; });
        if (it != row.end() && it->first == c) {
            if (is_zero(v))
                row.erase(it);
            else
                it->second = v;
        } else if (!is_zero(v)) {
            row.insert(it, {c, v});
        }
    }

    S at(std::size_t r, std::size_t c) const {
        check_index(r, c);
        const auto& row = rows_[r];
        auto it = std::lower_bound(row.begin(), row.end(), c,
                                   [](const auto& e, std::size_t col) { return e.first < col; });
        return (it != row.end() && it->first == c) ? it->second : scalar_from<S>(field_, 0L);
    }

    void append_row(Row r) {
        r = normalized(std::move(r));
        if (!r.empty() && r.back().first >= cols_) throw DomainError("column index out of range");
        rows_.push_back(std::move(r));
    }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (const auto& r : rows_) n += r.size();
        return n;
    }

private:
    void check_index(std::size_t r, std::size_t c) const {
        if (r >= rows_.size() || c >= cols_) throw DomainError("matrix index out of range");
    }

    std::size_t cols_;
    FieldTag field_;
    std::vector<Row> rows_;
};

}  // namespace grasscy
