#include "grasscy/grassmann.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace grasscy {

namespace {

void check_rn(int r, int n) {
    if (n < 2 || r < 1 || r > n - 1) throw DomainError("need 1 <= r <= n-1");
}

void subsets(int n, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int next) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = next; i <= n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(1);
}

}  // namespace

PluckerIndex::PluckerIndex(std::vector<int> entries, int n) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] < 1 || entries_[i] > n) throw DomainError("Plücker index entry out of range");
        if (i > 0 && entries_[i] <= entries_[i - 1]) throw DomainError("Plücker index must be strictly increasing");
    }
}

bool PluckerIndex::contains(int i) const { return std::find(entries_.begin(), entries_.end(), i) != entries_.end(); }

std::string PluckerIndex::to_string() const {
    const bool wide = std::any_of(entries_.begin(), entries_.end(), [](int x) { return x >= 10; });
    std::string s;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (wide && i > 0) s += ',';
        s += std::to_string(entries_[i]);
    }
    return s;
}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] < 0) throw DomainError("negative partition part");
        if (i > 0 && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be weakly decreasing");
    }
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

bool Partition::fits(int rows, int cols) const {
    return static_cast<int>(parts_.size()) <= rows && (parts_.empty() || parts_.front() <= cols);
}

std::string Partition::to_string() const {
    if (parts_.empty()) return "()";
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) s += (i ? "+" : "") + std::to_string(parts_[i]);
    return s;
}

// Walk from the lower-left corner of the grid to the upper-right one along the
// rim of the diagram; the i-th upward step (from the bottom) has index
// lambda_{r+1-i} + i.
PluckerIndex partition_to_index(const Partition& p, int r, int n) {
    check_rn(r, n);
    if (!p.fits(r, n - r)) throw DomainError("partition " + p.to_string() + " does not fit the grid");
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 1; i <= r; ++i) idx[static_cast<std::size_t>(i - 1)] = p.part(static_cast<std::size_t>(r - i)) + i;
    return PluckerIndex(std::move(idx), n);
}

Partition index_to_partition(const PluckerIndex& idx, int r, int n) {
    check_rn(r, n);
    if (static_cast<int>(idx.size()) != r) throw DomainError("index length differs from r");
    std::vector<int> parts(static_cast<std::size_t>(r));
    for (int i = 1; i <= r; ++i) parts[static_cast<std::size_t>(r - i)] = idx[static_cast<std::size_t>(i - 1)] - i;
    Partition p(std::move(parts));
    if (!p.fits(r, n - r)) throw DomainError("index does not correspond to a partition in the grid");
    return p;
}

std::vector<Partition> partitions_in_grid(int r, int k) {
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int bound) {
        out.emplace_back(cur);
        if (static_cast<int>(cur.size()) == r) return;
        for (int a = 1; a <= bound; ++a) {
            cur.push_back(a);
            rec(a);
            cur.pop_back();
        }
    };
    rec(k);
    return out;
}

bool is_arrow_partition(const Partition& p, int r, int n) {
    check_rn(r, n);
    const int k = n - r;
    if (!p.fits(r, k)) throw DomainError("partition does not fit the grid");
    if (p.empty()) return true;
    const auto& parts = p.parts();
    const int rows = static_cast<int>(parts.size());
    if (rows == r && std::all_of(parts.begin(), parts.end(), [k](int x) { return x == k; })) return true;
    // j full rows followed by one row of length a, 0 <= j <= r-2, 1 <= a <= k.
    if (rows <= r - 1 && std::all_of(parts.begin(), parts.end() - 1, [k](int x) { return x == k; })) return true;
    // c full-height columns plus one column of height b, 1 <= c <= k-1, 0 <= b <= r-1.
    if (rows == r) {
        const int c = parts.back();
        if (c >= 1 && c <= k - 1) {
            int b = 0;
            while (b < r && parts[static_cast<std::size_t>(b)] == c + 1) ++b;
            if (b <= r - 1 && std::all_of(parts.begin() + b, parts.end(), [c](int x) { return x == c; })) return true;
        }
    }
    return false;
}

std::vector<Partition> enumerate_arrow_partitions(int r, int n) {
    check_rn(r, n);
    std::vector<Partition> all = partitions_in_grid(r, n - r);
    std::vector<Partition> out;
    for (auto& p : all)
        if (is_arrow_partition(p, r, n)) out.push_back(std::move(p));
    std::sort(out.begin(), out.end(), [r, n](const Partition& a, const Partition& b) {
        return partition_to_index(a, r, n) < partition_to_index(b, r, n);
    });
    return out;
}

std::vector<PluckerIndex> frozen_variables(int r, int n) {
    check_rn(r, n);
    std::vector<PluckerIndex> out;
    for (int start = 1; start <= n; ++start) {
        std::vector<int> e;
        for (int j = 0; j < r; ++j) e.push_back((start - 1 + j) % n + 1);
        std::sort(e.begin(), e.end());
        out.emplace_back(std::move(e), n);
    }
    return out;
}

SignedIndex sort_with_sign(std::vector<int> seq) {
    int sign = 1;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        for (std::size_t j = i; j > 0 && seq[j - 1] >= seq[j]; --j) {
            if (seq[j - 1] == seq[j]) return {0, {}};
            std::swap(seq[j - 1], seq[j]);
            sign = -sign;
        }
    }
    return {sign, std::move(seq)};
}

PluckerSpace::PluckerSpace(int r, int n) : r_(r), n_(n) {
    check_rn(r, n);
    std::vector<std::vector<int>> all;
    subsets(n, r, all);
    for (auto& s : all) {
        lookup_.emplace(s, indices_.size());
        indices_.emplace_back(std::move(s), n);
        names_.push_back("p" + indices_.back().to_string());
    }
}

std::size_t PluckerSpace::position(const PluckerIndex& idx) const { return position(idx.entries()); }

std::size_t PluckerSpace::position(const std::vector<int>& sorted_entries) const {
    auto it = lookup_.find(sorted_entries);
    if (it == lookup_.end()) throw DomainError("not a Plücker index of this Grassmannian");
    return it->second;
}

ExponentVector PluckerSpace::unit(std::size_t var) const {
    ExponentVector e(variable_count(), 0);
    e.at(var) = 1;
    return e;
}

std::string PluckerSpace::format_monomial(const ExponentVector& e) const {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += '*';
        s += names_.at(i);
        if (e[i] != 1) s += '^' + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

ExponentVector PluckerSpace::parse_monomial(const std::string& text) const {
    ExponentVector e(indices_.size(), 0);
    if (text == "1") return e;
    std::stringstream in(text);
    std::string factor;
    while (std::getline(in, factor, '*')) {
        int power = 1;
        const auto caret = factor.find('^');
        if (caret != std::string::npos) {
            try {
                std::size_t used = 0;
                power = std::stoi(factor.substr(caret + 1), &used);
                if (used != factor.size() - caret - 1 || power < 1) throw std::invalid_argument("power");
            } catch (const std::logic_error&) {
                throw ContextError("bad exponent in monomial '" + text + "'");
            }
            factor.resize(caret);
        }
        const auto it = std::find(names_.begin(), names_.end(), factor);
        if (it == names_.end()) throw ContextError("unknown Plücker coordinate '" + factor + "'");
        e[static_cast<std::size_t>(it - names_.begin())] += power;
    }
    return e;
}

std::vector<Polynomial<Rational>> plucker_relations(int r, int n) {
    check_rn(r, n);
    std::vector<Polynomial<Rational>> out;
    if (r < 2 || r > n - 2) return out;
    const PluckerSpace space(r, n);
    std::vector<std::vector<int>> small, large;
    subsets(n, r - 1, small);
    subsets(n, r + 1, large);
    std::set<std::map<ExponentVector, Rational, GrlexGreater>> seen;
    const std::size_t nv = space.variable_count();
    for (const auto& I : small) {
        for (const auto& J : large) {
            Polynomial<Rational> rel(nv);
            for (std::size_t l = 0; l < J.size(); ++l) {
                std::vector<int> left = I;
                left.push_back(J[l]);
                std::vector<int> right;
                for (std::size_t m = 0; m < J.size(); ++m)
                    if (m != l) right.push_back(J[m]);
                const SignedIndex a = sort_with_sign(left);
                const SignedIndex b = sort_with_sign(right);
                if (a.sign == 0 || b.sign == 0) continue;
                ExponentVector e(nv, 0);
                e[space.position(a.sorted)] += 1;
                e[space.position(b.sorted)] += 1;
                const int sign = (l % 2 == 0 ? 1 : -1) * a.sign * b.sign;
                rel.add_term(std::move(e), Rational(sign));
            }
            if (rel.is_zero()) continue;
            if (sgn(rel.terms().begin()->second) < 0) rel = -rel;
            if (seen.insert(rel.terms()).second) out.push_back(std::move(rel));
        }
    }
    return out;
}

}  // namespace grasscy
