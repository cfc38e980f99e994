#pragma once

// Plücker coordinates of G(r,n): index tuples, partitions in the r x (n-r)
// grid, the arrow/frozen classification and the quadratic Plücker relations.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "grasscy/polynomial.hpp"

namespace grasscy {

// Strictly increasing r-tuple in {1..n}.
class PluckerIndex {
public:
    PluckerIndex(std::vector<int> entries, int n);

    std::size_t size() const { return entries_.size(); }
    int operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<int>& entries() const { return entries_; }
    bool contains(int i) const;
    std::string to_string() const;

    friend auto operator<=>(const PluckerIndex&, const PluckerIndex&) = default;

private:
    std::vector<int> entries_;
};

// Weakly decreasing parts, trailing zeros trimmed.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int size() const;  // number of boxes
    bool empty() const { return parts_.empty(); }
    // Part i (0-based, from the top row); zero past the last part.
    int part(std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }
    bool fits(int rows, int cols) const;
    std::string to_string() const;

    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

PluckerIndex partition_to_index(const Partition& p, int r, int n);
Partition index_to_partition(const PluckerIndex& idx, int r, int n);

// All partitions fitting in the r x k grid.
std::vector<Partition> partitions_in_grid(int r, int k);
bool is_arrow_partition(const Partition& p, int r, int n);
std::vector<Partition> enumerate_arrow_partitions(int r, int n);
std::vector<PluckerIndex> frozen_variables(int r, int n);

// Sign and sorted form of an arbitrary index sequence under the wedge
// convention p_I = x_{i1} ^ ... ^ x_{ir}. Sign 0 means a repeated index.
struct SignedIndex {
    int sign = 0;
    std::vector<int> sorted;
};
SignedIndex sort_with_sign(std::vector<int> seq);

// The Plücker variables p_I of G(r,n), ordered lexicographically by I.
class PluckerSpace {
public:
    PluckerSpace(int r, int n);

    int r() const { return r_; }
    int n() const { return n_; }
    std::size_t variable_count() const { return indices_.size(); }
    const std::vector<PluckerIndex>& indices() const { return indices_; }
    const PluckerIndex& index(std::size_t var) const { return indices_.at(var); }
    std::size_t position(const PluckerIndex& idx) const;
    std::size_t position(const std::vector<int>& sorted_entries) const;
    const std::vector<std::string>& names() const { return names_; }

    ExponentVector unit(std::size_t var) const;
    std::string format_monomial(const ExponentVector& e) const;
    // Inverse of format_monomial.
    ExponentVector parse_monomial(const std::string& text) const;

private:
    int r_;
    int n_;
    std::vector<PluckerIndex> indices_;
    std::vector<std::string> names_;
    std::map<std::vector<int>, std::size_t> lookup_;
};

// Grassmann-Plücker quadrics sum_l (-1)^l p_{I+j_l} p_{J-j_l} for every
// (r-1)-subset I and (r+1)-subset J, with zero relations and relations equal up
// to sign removed. Empty unless 2 <= r <= n-2.
std::vector<Polynomial<Rational>> plucker_relations(int r, int n);

}  // namespace grasscy
