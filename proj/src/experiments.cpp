#include "grasscy/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "grasscy/errors.hpp"
#include "grasscy/griffiths.hpp"
#include "grasscy/periods.hpp"
#include "grasscy/pointcount.hpp"
#include "grasscy/symmetry.hpp"

namespace grasscy {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ContextError("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

nlohmann::json load_dimensions(const std::string& fixture_dir) {
    const auto path = std::filesystem::path(fixture_dir) / "dimensions.json";
    if (!std::filesystem::exists(path)) return nlohmann::json::object();
    return nlohmann::json::parse(read_file(path));
}

std::string rn_key(int r, int n) { return std::to_string(r) + "," + std::to_string(n); }

std::string table_stem(const TablesParams& params) {
    std::string stem = "p" + std::to_string(params.p) + "_" + to_string(params.variant);
    if (params.r != 2 || params.n != 4) stem = "r" + std::to_string(params.r) + "n" + std::to_string(params.n) + "_" + stem;
    return stem;
}

void finish(ExperimentOutput& out) {
    for (const auto& [name, contents] : out.files) out.manifest.digests[name] = fnv1a_hex(contents);
}

}  // namespace

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    return out;
}

nlohmann::json to_json(const ExperimentManifest& m) {
    nlohmann::json timings = nlohmann::json::array();
    for (const auto& [step, ms] : m.timings_ms) timings.push_back({{"step", step}, {"ms", ms}});
    return {{"experiment", m.experiment},
            {"parameters", m.parameters},
            {"version", m.version},
            {"timings", timings},
            {"digests", m.digests}};
}

ExperimentOutput run_tables(const TablesParams& params) {
    ExperimentOutput out;
    out.manifest.experiment = "tables";
    out.manifest.parameters = {{"p", params.p},         {"rn", {params.r, params.n}},
                               {"variant", to_string(params.variant)}, {"force", params.force},
                               {"check", params.check}};

    const PencilSpec spec = build_pencil(params.r, params.n, params.variant);
    auto start = Clock::now();
    const auto records = count_table(spec, params.p, {.force = params.force});
    out.manifest.timings_ms.emplace_back("count_table", ms_since(start));

    const bool with_hw = params.r == 2 && params.n == 4 && params.variant == PencilVariant::arrow;
    bool all_congruent = true;
    nlohmann::json rows = nlohmann::json::array();
    start = Clock::now();
    for (const auto& rec : records) {
        nlohmann::json row = to_json(rec);
        if (with_hw) {
            const Fp hw = hasse_witt(params.p, Fp(static_cast<std::int64_t>(rec.t), params.p));
            const Fp one_minus = Fp(1, params.p) - hw;
            const bool congruent = one_minus.value() == rec.residue;
            all_congruent = all_congruent && congruent;
            row["hw"] = hw.value();
            row["one_minus_hw"] = one_minus.value();
            row["congruent"] = congruent;
        }
        rows.push_back(row);
    }
    if (with_hw) out.manifest.timings_ms.emplace_back("hasse_witt", ms_since(start));

    const std::string stem = table_stem(params);
    const std::string csv = to_csv(records);
    nlohmann::json doc = {{"r", params.r},
                          {"n", params.n},
                          {"p", params.p},
                          {"variant", to_string(params.variant)},
                          {"rows", rows},
                          {"hw_congruence", with_hw ? nlohmann::json(all_congruent) : nlohmann::json()}};
    out.files["table_" + stem + ".csv"] = csv;
    out.files["table_" + stem + ".json"] = doc.dump(2) + "\n";
    out.primary = csv;

    if (with_hw && !all_congruent) {
        out.status = exit_inconsistent;
        out.messages.push_back("1 - HW(t) disagrees with the point-count residue for some t");
    }
    if (params.check) {
        const auto path = std::filesystem::path(params.fixture_dir) / "tables" / (stem + ".csv");
        if (!std::filesystem::exists(path)) throw ContextError("no fixture for this table: " + path.string());
        if (read_file(path) != csv) {
            if (out.status == exit_ok) out.status = exit_mismatch;
            out.messages.push_back("table differs from " + path.string());
        }
    }
    finish(out);
    return out;
}

ExperimentOutput run_search(const SearchParams& params) {
    ExperimentOutput out;
    out.manifest.experiment = "search";
    out.manifest.parameters = {{"p", params.p}, {"force", params.force}, {"check", params.check}};
    if (!is_prime(params.p)) throw DomainError("p must be prime");

    auto start = Clock::now();
    const auto coefficients = default_period_series().coefficients(static_cast<int>(params.p) - 1);
    out.manifest.timings_ms.emplace_back("period_coefficients", ms_since(start));

    start = Clock::now();
    const auto records = count_table(build_pencil(2, 4, PencilVariant::arrow), params.p, {.force = params.force});
    out.manifest.timings_ms.emplace_back("count_table", ms_since(start));

    start = Clock::now();
    const SearchReport report = truncation_search(params.p, records);
    out.manifest.timings_ms.emplace_back("truncation_search", ms_since(start));

    nlohmann::json doc = to_json(report, true);
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : coefficients) coeffs.push_back(c.get_str());
    doc["coefficients"] = coeffs;
    nlohmann::json hw = nlohmann::json::object();
    for (std::uint64_t t = 1; t < params.p; ++t)
        hw[std::to_string(t)] = hasse_witt(params.p, Fp(static_cast<std::int64_t>(t), params.p)).value();
    doc["hw"] = hw;

    const std::string text = doc.dump(2) + "\n";
    out.files["search_p" + std::to_string(params.p) + ".json"] = text;
    out.primary = text;

    if (params.check) {
        const auto dims = load_dimensions(params.fixture_dir);
        const std::string key = std::to_string(params.p);
        if (!dims.contains("search") || !dims["search"].contains(key))
            throw ContextError("no search fixture for p = " + key);
        if (dims["search"][key] != doc["search_hits"]) {
            out.status = exit_mismatch;
            out.messages.push_back("search hits differ from the fixture");
        }
    }
    finish(out);
    return out;
}

HodgeParams with_defaults(HodgeParams params) {
    const bool g24 = params.r == 2 && params.n == 4;
    if (params.t_values.empty()) {
        if (params.r == 2 && params.n == 5)
            params.t_values = {Rational(2), Rational(3), Rational(7), Rational(13)};
        else
            params.t_values = {Rational(2), Rational(3), Rational(5)};
    }
    if (params.primes.empty()) params.primes = {1000000007ULL, 2147483647ULL};
    if (!params.rational) params.rational = g24;
    if (!params.degree) params.degree = params.n;  // 2d - n for the degree-n hypersurface
    return params;
}

namespace {

template <class S>
GradedPieceReport ci_piece(const PencilSpec& spec, const Specialization& at, int a, int b) {
    const S t = scalar_from<S>(at.field, at.t);
    GradedPieceReport rep = ci_bigraded_quotient(g24_ci_context<S>(spec, t), a, b);
    rep.t = at.t.get_str();
    return rep;
}

nlohmann::json strip_timing(const GradedPieceReport& rep, ExperimentManifest& manifest, const std::string& step) {
    manifest.timings_ms.emplace_back(step + "[t=" + rep.t + ", " + rep.field + "]", rep.elapsed_ms);
    nlohmann::json j = to_json(rep);
    j.erase("elapsed_ms");
    return j;
}

}  // namespace

ExperimentOutput run_hodge(const HodgeParams& raw) {
    const HodgeParams params = with_defaults(raw);
    ExperimentOutput out;
    out.manifest.experiment = "hodge";

    std::vector<Specialization> specs;
    nlohmann::json t_json = nlohmann::json::array();
    for (const auto& t : params.t_values) {
        t_json.push_back(t.get_str());
        if (*params.rational) specs.push_back({t, FieldTag::rationals()});
        for (auto p : params.primes) {
            if (!is_prime(p) || p >= (1ULL << 32)) throw DomainError("primes must be prime and below 2^32");
            specs.push_back({t, FieldTag::prime(p)});
        }
    }
    out.manifest.parameters = {{"rn", {params.r, params.n}}, {"variant", to_string(params.variant)},
                               {"t", t_json},                {"primes", params.primes},
                               {"rational", *params.rational}, {"degree", *params.degree},
                               {"isotypic", params.isotypic}, {"check", params.check}};

    const PencilSpec spec = build_pencil(params.r, params.n, params.variant);
    const SymmetryGroup group = build_group(params.n, params.r);
    const PluckerSpace space(params.r, params.n);
    // The symmetry group of the pencil is taken to be H_{n,r} also for (2,5).
    out.manifest.parameters["group"] = group.label();

    nlohmann::json doc = {{"rn", {params.r, params.n}},
                          {"variant", to_string(params.variant)},
                          {"degree", *params.degree},
                          {"group", group.label()},
                          {"group_order", group.effective_order().get_str()},
                          {"group_type", isomorphism_type(group.effective_invariant_factors())}};

    InvariantSubspaceResult result;
    try {
        result = invariant_subspace(spec, group, *params.degree, specs, {.isotypic = params.isotypic});
    } catch (const InconsistencyError& e) {
        out.status = exit_inconsistent;
        out.messages.push_back(e.what());
        doc["consensus"] = {{"verdict", "inconsistent"}, {"detail", e.what()}};
        out.primary = doc.dump(2) + "\n";
        out.files["hodge.json"] = out.primary;
        finish(out);
        return out;
    }

    nlohmann::json candidates = nlohmann::json::array();
    for (const auto& m : result.candidates) candidates.push_back(space.format_monomial(m));
    doc["candidates"] = candidates;
    nlohmann::json reports = nlohmann::json::array();
    for (const auto& rep : result.reports) reports.push_back(strip_timing(rep, out.manifest, "invariant_subspace"));
    doc["specializations"] = reports;

    nlohmann::json survivors = nlohmann::json::array();
    for (const auto& m : result.survivors) survivors.push_back(space.format_monomial(m));
    nlohmann::json bad = nlohmann::json::array();
    for (auto i : result.bad_specializations)
        bad.push_back({{"t", result.reports[i].t}, {"field", result.reports[i].field}});
    doc["consensus"] = {{"verdict", result.unanimous ? "unanimous" : "majority"},
                        {"quotient_dim", result.quotient_dim},
                        {"invariant_dim", result.invariant_dim},
                        {"survivors", survivors},
                        {"bad_specializations", bad}};
    if (!result.unanimous) {
        out.status = exit_inconsistent;
        for (const auto& b : bad)
            out.messages.push_back("specialization t=" + b["t"].get<std::string>() + " over " +
                                   b["field"].get<std::string>() + " disagrees with the consensus");
    }

    // First specialization agreeing with the consensus.
    std::size_t good = 0;
    while (std::find(result.bad_specializations.begin(), result.bad_specializations.end(), good) !=
           result.bad_specializations.end())
        ++good;

    const auto dims = load_dimensions(params.fixture_dir);
    const std::string key = rn_key(params.r, params.n) + "," + to_string(params.variant);
    const nlohmann::json expected = dims.contains("hodge") && dims["hodge"].contains(key) ? dims["hodge"][key]
                                                                                          : nlohmann::json();
    std::vector<std::string> mismatches;

    if (params.r == 2 && params.n == 4) {
        nlohmann::json ci = nlohmann::json::array();
        for (const auto& at : specs) {
            for (auto [a, b] : {std::pair{0, 0}, std::pair{0, 1}}) {
                const auto rep = at.field.is_rational() ? ci_piece<Rational>(spec, at, a, b)
                                                        : ci_piece<Fp>(spec, at, a, b);
                ci.push_back(strip_timing(rep, out.manifest, "ci_bigraded_quotient"));
                const auto ci_key = std::to_string(a) + "," + std::to_string(b);
                if (dims.contains("ci") && dims["ci"].contains("2,4") && dims["ci"]["2,4"].contains(ci_key) &&
                    dims["ci"]["2,4"][ci_key].get<std::size_t>() != rep.quotient_dim)
                    mismatches.push_back("CI piece (" + ci_key + ") at t=" + rep.t + " over " + rep.field + " is " +
                                         std::to_string(rep.quotient_dim));
            }
        }
        doc["ci"] = ci;
        for (const auto& rep : result.reports) {
            bool agrees = false;
            for (const auto& c : ci)
                if (c["t"] == rep.t && c["field"] == rep.field && c["degree"] == nlohmann::json{0, 1})
                    agrees = c["quotient_dim"].get<std::size_t>() == rep.quotient_dim;
            if (!agrees) {
                out.status = exit_inconsistent;
                out.messages.push_back("CI and Grassmannian quotients differ at t=" + rep.t + " over " + rep.field);
            }
        }
    }

    if (expected.contains("basis") && good < specs.size()) {
        std::vector<ExponentVector> targets;
        for (const auto& name : expected["basis"]) targets.push_back(space.parse_monomial(name.get<std::string>()));
        const auto start = Clock::now();
        const SpanCheck sc = check_span(spec, *params.degree, specs[good], result.survivors, targets);
        out.manifest.timings_ms.emplace_back("check_span", ms_since(start));
        doc["basis_check"] = {{"t", specs[good].t.get_str()},
                              {"field", specs[good].field.name()},
                              {"basis", expected["basis"]},
                              {"independent", sc.target_rank},
                              {"in_span", sc.targets_in_span}};
        if (sc.target_rank != result.invariant_dim || !sc.targets_in_span)
            mismatches.push_back("reference basis does not match the computed invariant subspace");
    }

    if (params.check) {
        if (expected.is_null()) throw ContextError("no dimension fixture for " + key);
        if (expected.contains("quotient_dim") && expected["quotient_dim"].get<std::size_t>() != result.quotient_dim)
            mismatches.push_back("quotient dimension " + std::to_string(result.quotient_dim));
        if (expected.contains("invariant_dim") && expected["invariant_dim"].get<std::size_t>() != result.invariant_dim)
            mismatches.push_back("invariant dimension " + std::to_string(result.invariant_dim));
        if (!mismatches.empty() && out.status == exit_ok) out.status = exit_mismatch;
        for (auto& m : mismatches) out.messages.push_back(m);
    }

    out.primary = doc.dump(2) + "\n";
    out.files["hodge_" + std::to_string(params.r) + "_" + std::to_string(params.n) + "_" + to_string(params.variant) +
              ".json"] = out.primary;
    finish(out);
    return out;
}

void write_outputs(const ExperimentOutput& out, const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& [name, contents] : out.files) {
        std::ofstream f(std::filesystem::path(dir) / name, std::ios::binary);
        if (!f) throw ContextError("cannot write " + name);
        f << contents;
    }
    std::ofstream f(std::filesystem::path(dir) / "manifest.json", std::ios::binary);
    if (!f) throw ContextError("cannot write manifest.json");
    f << to_json(out.manifest).dump(2) << "\n";
}

}  // namespace grasscy
