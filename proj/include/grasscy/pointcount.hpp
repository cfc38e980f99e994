#pragma once

// Brute-force point counts of hypersurfaces in G(r,n) over F_p, enumerating
// the Schubert cells of reduced row echelon matrices.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "grasscy/grassmann.hpp"
#include "grasscy/pencil.hpp"
#include "grasscy/polynomial.hpp"

namespace grasscy {

// Matrices in reduced row echelon form with pivots in the given columns. Row i
// has a 1 at pivot column s_i, zeros at the other pivot columns and to the left
// of s_i, and free entries at the remaining columns right of s_i.
struct SchubertCell {
    PluckerIndex pivots;
    int dimension = 0;
    std::vector<std::pair<int, int>> free_entries;  // (row, column), 0-based
};

// One cell per pivot set, pivot sets in lexicographic order.
std::vector<SchubertCell> enumerate_cells(int r, int n);

// |G(r,n)(F_p)| as the sum over cells of p^dim. Throws ResourceError on
// 64-bit overflow.
std::uint64_t grassmannian_count(int r, int n, std::uint64_t p);

struct PointCountRecord {
    std::uint64_t p = 0;
    std::uint64_t t = 0;
    std::uint64_t count = 0;
    std::uint64_t residue = 0;  // count mod p

    friend bool operator==(const PointCountRecord&, const PointCountRecord&) = default;
};

struct CountOptions {
    bool force = false;                        // lift the enumeration guard
    unsigned workers = 0;                      // 0: see worker_count()
    std::uint64_t max_points = 1'000'000'000;  // guard on |G(r,n)(F_p)|
};

// Number of F_p points of G(r,n) where f vanishes.
std::uint64_t count_zeros(const Polynomial<Fp>& f, int r, int n, const CountOptions& opts = {});

PointCountRecord count_points(const PencilSpec& spec, std::uint64_t p, std::uint64_t t,
                              const CountOptions& opts = {});

// Counts for every t = 1..p-1 in one pass over G(r,n)(F_p).
std::vector<PointCountRecord> count_table(const PencilSpec& spec, std::uint64_t p, const CountOptions& opts = {});

std::string to_csv(const std::vector<PointCountRecord>& records);
nlohmann::json to_json(const PointCountRecord& rec);

}  // namespace grasscy
