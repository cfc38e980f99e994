#pragma once

// Sparse multivariate Laurent polynomials over an exact field.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "grasscy/errors.hpp"
#include "grasscy/scalar.hpp"

namespace grasscy {

// One exponent per variable. Negative entries are Laurent exponents.
using ExponentVector = std::vector<int>;

inline int total_degree(const ExponentVector& e) { return std::accumulate(e.begin(), e.end(), 0); }

// Graded lexicographic order, largest first: higher total degree precedes, ties
// broken by the first differing exponent (larger exponent first).
struct GrlexGreater {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const {
        const int da = total_degree(a);
        const int db = total_degree(b);
        if (da != db) return da > db;
        return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
    }
};

// All exponent vectors of total degree `degree` in `nvars` nonnegative
// variables, in GrlexGreater order.
inline std::vector<ExponentVector> monomials_of_degree(std::size_t nvars, int degree) {
    std::vector<ExponentVector> out;
    if (degree < 0) return out;
    if (nvars == 0) {
        if (degree == 0) out.emplace_back();
        return out;
    }
    ExponentVector cur(nvars, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == nvars) {
            cur[i] = left;
            out.push_back(cur);
            return;
        }
        for (int e = left; e >= 0; --e) {
            cur[i] = e;
            rec(i + 1, left - e);
        }
    };
    rec(0, degree);
    return out;
}

template <class S>
class Polynomial {
public:
    using Scalar = S;
    using Terms = std::map<ExponentVector, S, GrlexGreater>;

    Polynomial(std::size_t nvars, FieldTag field) : nvars_(nvars), field_(field) {}
    explicit Polynomial(std::size_t nvars) : Polynomial(nvars, FieldTag::rationals()) {}

    static Polynomial constant(std::size_t nvars, const S& c) {
        Polynomial p(nvars, field_of(c));
        p.add_term(ExponentVector(nvars, 0), c);
        return p;
    }
    static Polynomial monomial(ExponentVector e, const S& c) {
        Polynomial p(e.size(), field_of(c));
        p.add_term(std::move(e), c);
        return p;
    }
    static Polynomial variable(std::size_t nvars, std::size_t i, const S& one) {
        ExponentVector e(nvars, 0);
        e.at(i) = 1;
        return monomial(std::move(e), one);
    }

    std::size_t nvars() const { return nvars_; }
    const FieldTag& field() const { return field_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    S coefficient(const ExponentVector& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? scalar_from<S>(field_, 0L) : it->second;
    }

    // Adds c·x^e, keeping the term map free of zeros.
    void add_term(ExponentVector e, const S& c) {
        if (e.size() != nvars_) throw ContextError("exponent vector length does not match variable count");
        if (field_of(c) != field_) throw ContextError("coefficient field mismatch");
        if (grasscy::is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(std::move(e), c);
        if (!inserted) {
            it->second += c;
            if (grasscy::is_zero(it->second)) terms_.erase(it);
        }
    }

    // Total degree if every term shares it; throws DomainError otherwise.
    int homogeneous_degree() const {
        if (terms_.empty()) throw DomainError("the zero polynomial has no degree");
        const int d = total_degree(terms_.begin()->first);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) != d) throw DomainError("polynomial is not homogeneous");
        return d;
    }
    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        const int d = total_degree(terms_.begin()->first);
        return std::all_of(terms_.begin(), terms_.end(),
                           [d](const auto& t) { return total_degree(t.first) == d; });
    }

    Polynomial& operator+=(const Polynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -S(c));
        return *this;
    }
    Polynomial& operator*=(const S& s) {
        if (field_of(s) != field_) throw ContextError("coefficient field mismatch");
        if (grasscy::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const S& s) { return a *= s; }
    friend Polynomial operator*(const S& s, Polynomial a) { return a *= s; }
    Polynomial operator-() const {
        Polynomial r(*this);
        for (auto& [e, c] : r.terms_) c = -S(c);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check(b);
        Polynomial r(a.nvars_, a.field_);
        ExponentVector e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, S(ca * cb));
            }
        }
        return r;
    }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.field_ == b.field_ && a.terms_ == b.terms_;
    }

    Polynomial pow(unsigned k) const {
        Polynomial r = constant(nvars_, scalar_from<S>(field_, 1L));
        Polynomial base = *this;
        while (k) {
            if (k & 1u) r *= base;
            k >>= 1u;
            if (k) base *= base;
        }
        return r;
    }

    // Multiplies every exponent vector by x^shift (a Laurent monomial shift).
    Polynomial shifted(const ExponentVector& shift) const {
        if (shift.size() != nvars_) throw ContextError("shift length does not match variable count");
        Polynomial r(nvars_, field_);
        for (const auto& [e, c] : terms_) {
            ExponentVector f = e;
            for (std::size_t i = 0; i < f.size(); ++i) f[i] += shift[i];
            r.terms_.emplace(std::move(f), c);
        }
        return r;
    }

    // Partial derivative with respect to variable i (nonnegative exponents).
    Polynomial derivative(std::size_t i) const {
        Polynomial r(nvars_, field_);
        for (const auto& [e, c] : terms_) {
            if (e.at(i) == 0) continue;
            ExponentVector f = e;
            const long k = f[i];
            f[i] -= 1;
            r.add_term(std::move(f), S(c * scalar_from<S>(field_, k)));
        }
        return r;
    }

    std::string to_string(const std::vector<std::string>& names = {}) const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string coeff = grasscy::to_string(c);
            bool neg = !coeff.empty() && coeff[0] == '-';
            if (neg) coeff.erase(0, 1);
            os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
            first = false;
            const bool unit_monomial = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
            if (coeff != "1" || unit_monomial) os << coeff;
            bool need_star = coeff != "1" && !unit_monomial;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (need_star) os << '*';
                need_star = true;
                os << (i < names.size() ? names[i] : "x" + std::to_string(i + 1));
                if (e[i] != 1) os << '^' << e[i];
            }
        }
        return os.str();
    }

private:
    void check(const Polynomial& o) const {
        if (nvars_ != o.nvars_) throw ContextError("polynomials have different variable counts");
        if (field_ != o.field_) throw ContextError("polynomials live over different fields");
    }

    std::size_t nvars_;
    FieldTag field_;
    Terms terms_;
};

enum class PolyOp { add, mul };

template <class S>
Polynomial<S> poly_arith(const Polynomial<S>& a, const Polynomial<S>& b, PolyOp op) {
    return op == PolyOp::add ? a + b : a * b;
}

template <class S>
S constant_term(const Polynomial<S>& a) {
    return a.coefficient(ExponentVector(a.nvars(), 0));
}

// Inverse of a single-term Laurent polynomial.
template <class S>
Polynomial<S> inverse_monomial(const Polynomial<S>& a) {
    if (a.size() != 1) throw DomainError("only single-term Laurent polynomials are invertible");
    const auto& [e, c] = *a.terms().begin();
    ExponentVector f = e;
    for (int& x : f) x = -x;
    return Polynomial<S>::monomial(std::move(f), S(scalar_from<S>(a.field(), 1L) / c));
}

// Reinterprets a rational polynomial over another field.
template <class S>
Polynomial<S> map_to_field(const Polynomial<Rational>& a, const FieldTag& field) {
    Polynomial<S> r(a.nvars(), field);
    for (const auto& [e, c] : a.terms()) r.add_term(e, scalar_from<S>(field, c));
    return r;
}

// Splits by the exponent of variable `var`: result[k] collects the terms with
// x_var^k, with that variable's exponent zeroed. Exponents must be >= 0.
template <class S>
std::map<int, Polynomial<S>> coefficients_in(const Polynomial<S>& a, std::size_t var) {
    std::map<int, Polynomial<S>> out;
    for (const auto& [e, c] : a.terms()) {
        ExponentVector f = e;
        const int k = f.at(var);
        f[var] = 0;
        out.try_emplace(k, a.nvars(), a.field()).first->second.add_term(std::move(f), c);
    }
    return out;
}

}  // namespace grasscy
