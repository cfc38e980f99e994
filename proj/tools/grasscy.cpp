// grasscy: reproduces point-count tables, truncation searches and Hodge-number
// computations for pencils of Calabi-Yau hypersurfaces in Grassmannians.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "grasscy/errors.hpp"
#include "grasscy/experiments.hpp"
#include "grasscy/periods.hpp"
#include "grasscy/symmetry.hpp"

using namespace grasscy;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) parts.push_back(item);
    return parts;
}

std::pair<int, int> parse_rn(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 2) throw ContextError("--rn expects r,n");
    try {
        return {std::stoi(parts[0]), std::stoi(parts[1])};
    } catch (const std::logic_error&) {
        throw ContextError("--rn expects two integers");
    }
}

std::vector<Rational> parse_rationals(const std::string& s) {
    std::vector<Rational> out;
    for (const auto& item : split(s, ',')) {
        Rational q;
        if (item.empty() || q.set_str(item, 10) != 0) throw ContextError("bad rational '" + item + "'");
        q.canonicalize();
        out.push_back(q);
    }
    return out;
}

std::vector<std::uint64_t> parse_primes(const std::string& s) {
    std::vector<std::uint64_t> out;
    for (const auto& item : split(s, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoull(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ContextError("bad prime '" + item + "'");
        }
    }
    return out;
}

int emit(const ExperimentOutput& out, const std::string& dir) {
    std::cout << out.primary;
    if (!dir.empty()) write_outputs(out, dir);
    for (const auto& m : out.messages) std::cerr << "grasscy: " << m << "\n";
    return out.status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arrow pencils of Calabi-Yau hypersurfaces in Grassmannians"};
    app.set_version_flag("--version", std::string(GRASSCY_VERSION));
    app.require_subcommand(1);

    std::string out_dir;
    std::string fixture_dir = GRASSCY_FIXTURE_DIR;
    bool check = false;
    bool force = false;
    std::uint64_t p = 0;
    std::string rn = "2,4";
    std::string variant = "arrow";

    auto* tables = app.add_subcommand("tables", "Point counts of the pencil over F_p for t = 1..p-1 (CSV)");
    tables->add_option("--p", p, "prime")->required();
    tables->add_option("--variant", variant, "arrow, squares, quads or squares+quads")->capture_default_str();
    tables->add_option("--rn", rn, "Grassmannian G(r,n) as r,n")->capture_default_str();

    auto* search = app.add_subcommand("search", "Hypergeometric truncation search against the point counts (JSON)");
    search->add_option("--p", p, "prime")->required();

    std::string t_list;
    std::string prime_list;
    int degree = 0;
    bool rational = false;
    bool no_rational = false;
    bool isotypic = false;
    auto* hodge = app.add_subcommand("hodge", "Invariant part of the generalized Jacobian ring (JSON)");
    hodge->add_option("--rn", rn, "Grassmannian G(r,n) as r,n")->capture_default_str();
    hodge->add_option("--variant", variant, "arrow, squares, quads or squares+quads")->capture_default_str();
    hodge->add_option("--t", t_list, "comma-separated values of t (rationals allowed)");
    hodge->add_option("--primes", prime_list, "comma-separated primes below 2^32");
    hodge->add_option("--degree", degree, "graded degree (default n)");
    auto* rat_flag = hodge->add_flag("--rational", rational, "also specialize over Q");
    hodge->add_flag("--no-rational", no_rational, "skip the specializations over Q")->excludes(rat_flag);
    hodge->add_flag("--isotypic", isotypic, "restrict slices to the invariant isotypic component");

    for (auto* sub : {tables, search, hodge}) {
        sub->add_option("--out", out_dir, "directory for output files and manifest.json");
        sub->add_flag("--check", check, "compare with the shipped fixtures; exit 2 on mismatch");
        sub->add_option("--fixtures", fixture_dir, "directory holding the expected values")->capture_default_str();
        if (sub != hodge) sub->add_flag("--force", force, "lift the enumeration guard");
    }

    auto* pencil = app.add_subcommand("pencil", "Monomials of a pencil (JSON)");
    pencil->add_option("--rn", rn, "Grassmannian G(r,n) as r,n")->capture_default_str();
    pencil->add_option("--variant", variant, "arrow, squares, quads or squares+quads")->capture_default_str();

    auto* group = app.add_subcommand("group", "Diagonal symmetry group and its invariant monomials (JSON)");
    group->add_option("--rn", rn, "Grassmannian G(r,n) as r,n")->capture_default_str();
    group->add_option("--degree", degree, "degree of invariant monomials (default n)");

    int k_max = 10;
    auto* periods = app.add_subcommand("periods", "Period coefficients c_0..c_k of the G(2,4) arrow pencil (JSON)");
    periods->add_option("--k", k_max, "largest index")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (tables->parsed()) {
            TablesParams params;
            params.p = p;
            std::tie(params.r, params.n) = parse_rn(rn);
            params.variant = parse_variant(variant);
            params.force = force;
            params.check = check;
            params.fixture_dir = fixture_dir;
            return emit(run_tables(params), out_dir);
        }
        if (search->parsed()) {
            SearchParams params;
            params.p = p;
            params.force = force;
            params.check = check;
            params.fixture_dir = fixture_dir;
            return emit(run_search(params), out_dir);
        }
        if (hodge->parsed()) {
            HodgeParams params;
            std::tie(params.r, params.n) = parse_rn(rn);
            params.variant = parse_variant(variant);
            if (!t_list.empty()) params.t_values = parse_rationals(t_list);
            if (!prime_list.empty()) params.primes = parse_primes(prime_list);
            if (rational) params.rational = true;
            if (no_rational) params.rational = false;
            if (degree != 0) params.degree = degree;
            params.isotypic = isotypic;
            params.check = check;
            params.fixture_dir = fixture_dir;
            return emit(run_hodge(params), out_dir);
        }
        if (pencil->parsed()) {
            const auto [r, n] = parse_rn(rn);
            std::cout << to_json(build_pencil(r, n, parse_variant(variant))).dump(2) << "\n";
            return exit_ok;
        }
        if (group->parsed()) {
            const auto [r, n] = parse_rn(rn);
            const SymmetryGroup g = build_group(n, r);
            const PluckerSpace space(r, n);
            nlohmann::json monomials = nlohmann::json::array();
            for (const auto& m : invariant_monomials(r, n, degree != 0 ? degree : n, g))
                monomials.push_back(space.format_monomial(m));
            nlohmann::json doc = {{"group", g.label()},
                                  {"full_order", g.full_order().get_str()},
                                  {"full_type", isomorphism_type(g.full_invariant_factors())},
                                  {"order", g.effective_order().get_str()},
                                  {"type", isomorphism_type(g.effective_invariant_factors())},
                                  {"invariant_monomials", monomials}};
            std::cout << doc.dump(2) << "\n";
            return exit_ok;
        }
        if (periods->parsed()) {
            if (k_max < 0) throw DomainError("--k must be non-negative");
            nlohmann::json coeffs = nlohmann::json::array();
            for (const auto& c : default_period_series().coefficients(k_max)) coeffs.push_back(c.get_str());
            std::cout << nlohmann::json{{"coefficients", coeffs}}.dump(2) << "\n";
            return exit_ok;
        }
    } catch (const InconsistencyError& e) {
        std::cerr << "grasscy: " << e.what() << "\n";
        return exit_inconsistent;
    } catch (const std::exception& e) {
        std::cerr << "grasscy: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
