#include "grasscy/pointcount.hpp"

#include <functional>
#include <sstream>

#include "grasscy/workers.hpp"

namespace grasscy {

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 p) { return a * b % p; }

u64 det_mod(std::vector<u64> a, std::size_t r, u64 p) {
    u64 det = 1;
    for (std::size_t c = 0; c < r; ++c) {
        std::size_t piv = c;
        while (piv < r && a[piv * r + c] == 0) ++piv;
        if (piv == r) return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < r; ++j) std::swap(a[piv * r + j], a[c * r + j]);
            det = det == 0 ? 0 : p - det;
        }
        det = mulmod(det, a[c * r + c], p);
        const u64 inv = pow_mod(a[c * r + c], p - 2, p);
        for (std::size_t i = c + 1; i < r; ++i) {
            const u64 f = mulmod(a[i * r + c], inv, p);
            if (f == 0) continue;
            for (std::size_t j = c; j < r; ++j) a[i * r + j] = (a[i * r + j] + p - mulmod(f, a[c * r + j], p)) % p;
        }
    }
    return det;
}

// Sparse monomial x^e as (variable, exponent) pairs.
using CompiledMonomial = std::vector<std::pair<std::size_t, int>>;

CompiledMonomial compile(const ExponentVector& e) {
    CompiledMonomial m;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) m.emplace_back(i, e[i]);
    return m;
}

u64 eval_monomial(const CompiledMonomial& m, const std::vector<u64>& x, u64 p) {
    u64 v = 1;
    for (const auto& [i, k] : m)
        for (int j = 0; j < k; ++j) v = mulmod(v, x[i], p);
    return v;
}

void check_prime(u64 p) {
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
    if (p >= (u64{1} << 32)) throw DomainError("prime too large for point counting");
}

void guard(int r, int n, u64 p, const CountOptions& opts) {
    u64 total = 0;
    try {
        total = grassmannian_count(r, n, p);
    } catch (const ResourceError&) {
        if (!opts.force) throw;
        return;
    }
    if (total > opts.max_points && !opts.force)
        throw ResourceError("G(" + std::to_string(r) + "," + std::to_string(n) + ") has " + std::to_string(total) +
                            " points over F_" + std::to_string(p) + "; pass force to enumerate anyway");
}

// Calls visit(plucker) for every point of the cell, Plücker coordinates in
// PluckerSpace order.
template <class Visit>
void visit_cell(const SchubertCell& cell, const PluckerSpace& space, u64 p, Visit&& visit) {
    const std::size_t r = static_cast<std::size_t>(space.r());
    const std::size_t n = static_cast<std::size_t>(space.n());
    std::vector<u64> mat(r * n, 0);
    for (std::size_t i = 0; i < r; ++i) mat[i * n + static_cast<std::size_t>(cell.pivots[i] - 1)] = 1;
    std::vector<u64> digits(cell.free_entries.size(), 0);
    std::vector<u64> plucker(space.variable_count());
    std::vector<u64> minor(r * r);
    while (true) {
        for (std::size_t k = 0; k < digits.size(); ++k) {
            const auto [row, col] = cell.free_entries[k];
            mat[static_cast<std::size_t>(row) * n + static_cast<std::size_t>(col)] = digits[k];
        }
        for (std::size_t v = 0; v < plucker.size(); ++v) {
            const auto& cols = space.index(v).entries();
            for (std::size_t i = 0; i < r; ++i)
                for (std::size_t j = 0; j < r; ++j) minor[i * r + j] = mat[i * n + static_cast<std::size_t>(cols[j] - 1)];
            plucker[v] = det_mod(minor, r, p);
        }
        visit(plucker);
        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
        if (k == digits.size()) break;
    }
}

}  // namespace

std::vector<SchubertCell> enumerate_cells(int r, int n) {
    const PluckerSpace space(r, n);
    std::vector<SchubertCell> cells;
    for (const auto& pivots : space.indices()) {
        SchubertCell cell{pivots, 0, {}};
        for (int i = 0; i < r; ++i) {
            for (int c = pivots[static_cast<std::size_t>(i)] + 1; c <= n; ++c) {
                if (pivots.contains(c)) continue;
                cell.free_entries.emplace_back(i, c - 1);
            }
        }
        cell.dimension = static_cast<int>(cell.free_entries.size());
        cells.push_back(std::move(cell));
    }
    return cells;
}

std::uint64_t grassmannian_count(int r, int n, std::uint64_t p) {
    unsigned __int128 total = 0;
    for (const auto& cell : enumerate_cells(r, n)) {
        unsigned __int128 term = 1;
        for (int i = 0; i < cell.dimension; ++i) {
            term *= p;
            if (term > ~u64{0}) throw ResourceError("point count overflows 64 bits");
        }
        total += term;
        if (total > ~u64{0}) throw ResourceError("point count overflows 64 bits");
    }
    return static_cast<u64>(total);
}

std::uint64_t count_zeros(const Polynomial<Fp>& f, int r, int n, const CountOptions& opts) {
    const u64 p = f.field().modulus;
    if (f.field().is_rational()) throw ContextError("point counting needs a prime field");
    check_prime(p);
    const PluckerSpace space(r, n);
    if (f.nvars() != space.variable_count()) throw ContextError("polynomial is not over the Plücker variables");
    guard(r, n, p, opts);

    std::vector<std::pair<u64, CompiledMonomial>> terms;
    for (const auto& [e, c] : f.terms()) {
        if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; }))
            throw DomainError("cannot evaluate Laurent terms at points");
        terms.emplace_back(c.value(), compile(e));
    }
    const auto cells = enumerate_cells(r, n);
    std::vector<u64> per_cell(cells.size(), 0);
    parallel_for(cells.size(), worker_count(opts.workers), [&](std::size_t ci) {
        u64 zeros = 0;
        visit_cell(cells[ci], space, p, [&](const std::vector<u64>& x) {
            u64 v = 0;
            for (const auto& [c, m] : terms) v = (v + mulmod(c, eval_monomial(m, x, p), p)) % p;
            if (v == 0) ++zeros;
        });
        per_cell[ci] = zeros;
    });
    u64 total = 0;
    for (u64 z : per_cell) total += z;
    return total;
}

PointCountRecord count_points(const PencilSpec& spec, std::uint64_t p, std::uint64_t t, const CountOptions& opts) {
    check_prime(p);
    if (t % p == 0) throw DomainError("t = 0 does not give a Calabi-Yau member");
    if (t >= p) throw DomainError("t must lie in 1..p-1");
    const Polynomial<Fp> f = evaluate_pencil(spec, Fp::from_residue(t, p));
    const u64 count = count_zeros(f, spec.r, spec.n, opts);
    return {p, t, count, count % p};
}

std::vector<PointCountRecord> count_table(const PencilSpec& spec, std::uint64_t p, const CountOptions& opts) {
    check_prime(p);
    guard(spec.r, spec.n, p, opts);
    const PluckerSpace space(spec.r, spec.n);
    std::vector<CompiledMonomial> deforming;
    for (const auto& m : spec.deforming) deforming.push_back(compile(m));
    const CompiledMonomial frozen = compile(spec.frozen);

    // A point lies on X_t iff t * D + P = 0, so it contributes to exactly one
    // t when D != 0, to every t when D = P = 0, and to none otherwise.
    const auto cells = enumerate_cells(spec.r, spec.n);
    std::vector<std::vector<u64>> per_cell(cells.size(), std::vector<u64>(p, 0));
    std::vector<u64> everywhere(cells.size(), 0);
    parallel_for(cells.size(), worker_count(opts.workers), [&](std::size_t ci) {
        auto& hist = per_cell[ci];
        visit_cell(cells[ci], space, p, [&](const std::vector<u64>& x) {
            u64 d = 0;
            for (const auto& m : deforming) d = (d + eval_monomial(m, x, p)) % p;
            const u64 prod = eval_monomial(frozen, x, p);
            if (d == 0) {
                if (prod == 0) ++everywhere[ci];
                return;
            }
            const u64 t = mulmod(p - prod, pow_mod(d, p - 2, p), p) % p;
            ++hist[t];
        });
    });
    std::vector<PointCountRecord> out;
    for (u64 t = 1; t < p; ++t) {
        u64 count = 0;
        for (std::size_t ci = 0; ci < cells.size(); ++ci) count += per_cell[ci][t] + everywhere[ci];
        out.push_back({p, t, count, count % p});
    }
    return out;
}

std::string to_csv(const std::vector<PointCountRecord>& records) {
    std::ostringstream os;
    os << "t,count,residue\n";
    for (const auto& rec : records) os << rec.t << ',' << rec.count << ',' << rec.residue << '\n';
    return os.str();
}

nlohmann::json to_json(const PointCountRecord& rec) {
    return {{"p", rec.p}, {"t", rec.t}, {"count", rec.count}, {"residue", rec.residue}};
}

}  // namespace grasscy
