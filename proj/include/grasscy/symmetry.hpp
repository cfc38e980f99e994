#pragma once

// The diagonal groups H~_{n,r} = {a in (Z/n)^n : r * sum(a) = 0 mod n} acting
// on Plücker coordinates by p_I -> zeta^(sum_{i in I} a_i) p_I, written
// additively, and their effective quotients H_{n,r} by the scalars.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "grasscy/grassmann.hpp"
#include "grasscy/polynomial.hpp"

namespace grasscy {

// Entry i is the number of times index i occurs among the Plücker factors of
// a monomial (with multiplicity), reduced mod n.
struct MonomialCharacter {
    std::vector<int> entries;
    int modulus = 1;

    friend bool operator==(const MonomialCharacter&, const MonomialCharacter&) = default;
};

// Invariant factors (all > 1) of the cokernel of an integer relation matrix.
std::vector<std::int64_t> smith_invariant_factors(std::vector<std::vector<std::int64_t>> m);
// "(Z/4)^2 x Z/2" style rendering of a factor list; "trivial" when empty.
std::string isomorphism_type(const std::vector<std::int64_t>& factors);

class SymmetryGroup {
public:
    SymmetryGroup(int n, int r);

    int n() const { return n_; }
    int r() const { return r_; }
    const PluckerSpace& space() const { return space_; }

    // e_i - e_1 for i = 2..n and (n/gcd(r,n)) e_1: a Z-basis of the lattice
    // above L; the scalar (1,...,1) is listed separately.
    const std::vector<std::vector<int>>& generators() const { return generators_; }
    const std::vector<int>& scalar() const { return scalar_; }

    bool contains(const std::vector<int>& a) const;
    std::vector<int> random_element(std::mt19937_64& rng) const;

    const Integer& full_order() const { return full_order_; }
    const Integer& effective_order() const { return effective_order_; }
    const std::vector<std::int64_t>& full_invariant_factors() const { return full_factors_; }
    const std::vector<std::int64_t>& effective_invariant_factors() const { return effective_factors_; }
    std::string label() const { return "H_{" + std::to_string(n_) + "," + std::to_string(r_) + "}"; }

private:
    int n_;
    int r_;
    PluckerSpace space_;
    std::vector<std::vector<int>> generators_;
    std::vector<int> scalar_;
    Integer full_order_;
    Integer effective_order_;
    std::vector<std::int64_t> full_factors_;
    std::vector<std::int64_t> effective_factors_;
};

SymmetryGroup build_group(int n, int r);

MonomialCharacter character(const ExponentVector& m, const SymmetryGroup& group);
// Pairing of a character with a group element, mod n.
int pairing(const MonomialCharacter& chi, const std::vector<int>& a);
bool is_invariant(const ExponentVector& m, const SymmetryGroup& group);

// Degree-`degree` monomials in the Plücker variables of G(r,n) fixed by the
// group, in graded-lex order (largest first).
std::vector<ExponentVector> invariant_monomials(int r, int n, int degree, const SymmetryGroup& group);

}  // namespace grasscy
