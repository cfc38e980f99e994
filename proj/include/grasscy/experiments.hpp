#pragma once

// Named, reproducible experiments behind the command-line tool.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "grasscy/pencil.hpp"
#include "grasscy/scalar.hpp"

namespace grasscy {

enum ExitStatus : int { exit_ok = 0, exit_error = 1, exit_mismatch = 2, exit_inconsistent = 3 };

// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(std::string_view data);

struct ExperimentManifest {
    std::string experiment;
    nlohmann::json parameters;
    std::string version = GRASSCY_VERSION;
    std::vector<std::pair<std::string, double>> timings_ms;
    std::map<std::string, std::string> digests;  // file name -> FNV-1a
};

nlohmann::json to_json(const ExperimentManifest& m);

struct ExperimentOutput {
    std::string primary;                          // what goes to stdout
    std::map<std::string, std::string> files;     // file name -> contents
    ExperimentManifest manifest;
    int status = exit_ok;
    std::vector<std::string> messages;            // mismatches, bad specializations
};

struct TablesParams {
    std::uint64_t p = 5;
    int r = 2;
    int n = 4;
    PencilVariant variant = PencilVariant::arrow;
    bool force = false;
    bool check = false;
    std::string fixture_dir = GRASSCY_FIXTURE_DIR;
};

struct SearchParams {
    std::uint64_t p = 5;
    bool force = false;
    bool check = false;
    std::string fixture_dir = GRASSCY_FIXTURE_DIR;
};

struct HodgeParams {
    int r = 2;
    int n = 4;
    PencilVariant variant = PencilVariant::arrow;
    std::vector<Rational> t_values;          // empty: defaults for (r,n)
    std::vector<std::uint64_t> primes;       // empty: defaults
    std::optional<bool> rational;            // unset: defaults for (r,n)
    std::optional<int> degree;               // unset: 2d - n with d = n
    bool isotypic = false;
    bool check = false;
    std::string fixture_dir = GRASSCY_FIXTURE_DIR;
};

ExperimentOutput run_tables(const TablesParams& params);
ExperimentOutput run_search(const SearchParams& params);
ExperimentOutput run_hodge(const HodgeParams& params);

// Fills t-values, primes and field choice with the defaults for (r,n).
HodgeParams with_defaults(HodgeParams params);

// Writes every file and manifest.json into dir (created if needed).
void write_outputs(const ExperimentOutput& out, const std::string& dir);

}  // namespace grasscy
