// Command-line front end: catalog listing, ad hoc cohomology and brackets,
// structure reports, and the table/claim verification harness.

#include <superlie/superlie.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

#ifndef SUPERLIE_DEFAULT_CATALOG
#define SUPERLIE_DEFAULT_CATALOG "data/catalog.json"
#endif

namespace {

using namespace superlie;

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string catalog_path(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("SUPERLIE_CATALOG"); env && *env) return env;
    return SUPERLIE_DEFAULT_CATALOG;
}

std::string triage_path(const std::string& flag, const std::string& catalog) {
    if (!flag.empty()) return flag;
    return (std::filesystem::path(catalog).parent_path() / "triage.json").string();
}

GradedSpace space_arg(const std::string& text) {
    try {
        return GradedSpace::parse(text);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
}

Cochain cochain_arg(const std::string& text, const GradedSpace& space, const Bindings& b) {
    try {
        return instantiate(text, space, b);
    } catch (const ParseError& e) {
        throw UsageError(std::string("cannot parse '") + text + "': " + e.what());
    }
}

Bindings bindings_arg(const std::string& text) {
    if (text.empty()) return {};
    try {
        return parse_bindings(text);
    } catch (const std::exception& e) {
        throw UsageError(std::string("bad --set: ") + e.what());
    }
}

/// Column-aligned plain text.
void print_table(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) {
            if (width.size() <= c) width.push_back(0);
            width[c] = std::max(width[c], r[c].size());
        }
    for (const auto& r : rows) {
        std::string line;
        for (std::size_t c = 0; c < r.size(); ++c) {
            line += r[c];
            if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
        }
        os << line << '\n';
    }
}

void write_json(const Json& j, const std::string& path) {
    if (path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

int cmd_catalog_list(const Catalog& c, const std::string& space) {
    std::vector<std::vector<std::string>> rows{{"id", "space", "rows", "expression"}};
    for (const auto& e : c.entries) {
        if (!space.empty() && e.id.rfind(space + ":", 0) != 0) continue;
        rows.push_back({e.id, e.space.str(), std::to_string(e.rows.size()), e.expr});
    }
    print_table(std::cout, rows);
    return exit_ok;
}

int cmd_catalog_fmt(const std::string& path, bool check) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string canonical = serialize(parse_catalog_text(ss.str()));
    if (canonical == ss.str()) return exit_ok;
    if (check) {
        std::cerr << path << ": not in canonical form\n";
        return exit_failed;
    }
    std::ofstream out(path, std::ios::binary);
    out << canonical;
    return exit_ok;
}

int cmd_cohomology(const std::string& space_text, const std::string& diff, const std::string& set, int max_degree) {
    if (max_degree < 0) throw UsageError("--max-degree must be non-negative");
    const GradedSpace space = space_arg(space_text);
    const Cochain d = cochain_arg(diff, space, bindings_arg(set));
    if (!is_codifferential(d)) {
        std::cerr << "not a codifferential: [d,d] = " << to_text(bracket(d, d)) << '\n';
        return exit_failed;
    }
    CochainComplex cx(d);
    std::string line;
    for (int n = 0; n <= max_degree; ++n) line += (n ? " h" : "h") + std::to_string(n) + "=" + cx.cohomology(n).str();
    std::cout << line << '\n';
    return exit_ok;
}

int cmd_bracket(const std::string& space_text, const std::string& left, const std::string& right) {
    const GradedSpace space = space_arg(space_text);
    std::cout << to_text(bracket(cochain_arg(left, space, {}), cochain_arg(right, space, {}))) << '\n';
    return exit_ok;
}

int cmd_structure(const Catalog& c, const std::string& id, const std::string& point) {
    const CatalogEntry* e = c.try_find(id);
    if (!e) throw UsageError("no catalog entry '" + id + "'");
    Cochain d(e->space);
    if (point.empty() || point == "generic") {
        d = e->is_family() ? instantiate_entry(*e, CatalogPoint::make_generic()) : instantiate_entry(*e, Bindings{});
    } else {
        d = instantiate_entry(*e, bindings_arg(point));
    }
    const StructureReport s = analyze_structure(d);
    std::vector<std::vector<std::string>> rows{
        {"entry", id},
        {"codifferential", to_text(d)},
        {"cohomology", cohomology_row(d).str()},
        {"center", s.center.str()},
        {"derived series", s.derived.str()},
        {"lower central series", s.lower_central.str()},
        {"solvable", s.solvable ? "yes" : "no"},
        {"nilpotent", s.nilpotent ? "yes" : "no"},
        {"jacobi", s.jacobi ? "yes" : "no"},
    };
    print_table(std::cout, rows);
    return exit_ok;
}

int cmd_verify_tables(const Catalog& c, const std::string& triage, const std::string& filter, const std::string& json,
                      unsigned threads) {
    VerifyOptions opt;
    opt.filter = filter.empty() ? "*" : filter;
    opt.threads = threads;
    opt.triage = load_triage(triage);
    const auto start = std::chrono::steady_clock::now();
    const TableReport rep = verify_tables(c, opt);
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (!json.empty()) write_json(to_json(rep), json);
    if (json != "-") {
        std::vector<std::vector<std::string>> rows{{"entry", "row", "source", "status", "expected", "computed"}};
        for (const auto& r : rep.rows)
            rows.push_back({r.entry, r.label, r.source, to_string(r.status), r.expected.str(),
                            r.computed ? r.computed->str() : "(" + r.error + ")"});
        print_table(std::cout, rows);
        std::cout << rep.summary.rows << " rows: " << rep.summary.match << " match, " << rep.summary.mismatch
                  << " mismatch, " << rep.summary.flagged << " transcription-flagged (" << ms << " ms)\n";
    }
    return rep.ok() ? exit_ok : exit_failed;
}

int cmd_verify_claims(const Catalog& c, const std::string& kind, const std::string& json, unsigned threads,
                      std::size_t budget) {
    std::optional<ClaimKind> k;
    if (kind != "all") {
        k = parse_claim_kind(kind);
        if (!k) throw UsageError("--kind must be structural, equivalence, jump or all");
    }
    WitnessSearchOptions w;
    w.budget = budget;
    const ClaimReport rep = verify_claims(c, k, threads, w);
    if (!json.empty()) write_json(to_json(rep), json);
    if (json != "-") {
        std::vector<std::vector<std::string>> rows{{"kind", "status", "required", "claim"}};
        for (const auto& r : rep.rows)
            rows.push_back({to_string(r.kind), to_string(r.status), r.required ? "yes" : "no", r.subject});
        print_table(std::cout, rows);
        for (const auto& r : rep.rows)
            if (r.status != ClaimStatus::verified)
                std::cout << "  " << to_string(r.status) << ": " << r.subject << " -- " << r.detail << '\n';
        std::cout << rep.summary.claims << " claims: " << rep.summary.verified << " verified, "
                  << rep.summary.unverified << " unverified, " << rep.summary.contradicted << " contradicted\n";
    }
    return rep.ok() ? exit_ok : exit_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lie superalgebras as odd codifferentials: cohomology, structure and catalog verification"};
    app.require_subcommand(1);

    std::string catalog_flag, triage_flag;
    app.add_option("--catalog", catalog_flag, "catalog file (default: $SUPERLIE_CATALOG or the bundled catalog)");
    app.add_option("--triage", triage_flag, "triage notes (default: triage.json next to the catalog)");

    auto* catalog = app.add_subcommand("catalog", "inspect the catalog");
    catalog->require_subcommand(1);
    std::string list_space;
    auto* list = catalog->add_subcommand("list", "list entries");
    list->add_option("--space", list_space, "algebra bidimension m|n, e.g. 2|2");
    bool fmt_check = false;
    auto* fmt = catalog->add_subcommand("fmt", "rewrite the catalog in canonical form");
    fmt->add_flag("--check", fmt_check, "only report whether the file is canonical");

    std::string space, diff, set, left, right;
    int max_degree = 3;
    auto* coh = app.add_subcommand("cohomology", "h0..hN of a codifferential");
    coh->add_option("--space", space, "codifferential space m|n")->required();
    coh->add_option("--diff", diff, "codifferential, e.g. \"ps(1,1;2)\"")->required();
    coh->add_option("--set", set, "parameter values, e.g. p=1,q=-2/3");
    coh->add_option("--max-degree", max_degree, "highest degree (default 3)");

    auto* br = app.add_subcommand("bracket", "[left, right] of two cochains");
    br->add_option("--space", space, "space m|n")->required();
    br->add_option("--left", left)->required();
    br->add_option("--right", right)->required();

    std::string entry, point;
    auto* st = app.add_subcommand("structure", "center, derived and lower central series of a catalog entry");
    st->add_option("--entry", entry, "entry id, e.g. 2|1:d_3")->required();
    st->add_option("--point", point, "parameter values p=1,q=2, or generic");

    auto* verify = app.add_subcommand("verify", "recompute catalog rows or claims");
    verify->require_subcommand(1);
    std::string filter, json, kind = "all";
    unsigned threads = 0;
    std::size_t budget = WitnessSearchOptions{}.budget;
    auto* vt = verify->add_subcommand("tables", "recompute h0..h3 for every row");
    vt->add_option("--filter", filter, "entry id glob, e.g. \"1|3:*\"");
    vt->add_option("--json", json, "write the JSON report to a file (- for stdout)");
    vt->add_option("--threads", threads, "worker threads (default: all cores)");
    auto* vc = verify->add_subcommand("claims", "check structural, equivalence and jump claims");
    vc->add_option("--kind", kind, "structural | equivalence | jump | all");
    vc->add_option("--json", json, "write the JSON report to a file (- for stdout)");
    vc->add_option("--threads", threads, "worker threads (default: all cores)");
    vc->add_option("--budget", budget, "witness search nodes per attempt");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        const std::string cpath = catalog_path(catalog_flag);
        if (*coh) return cmd_cohomology(space, diff, set, max_degree);
        if (*br) return cmd_bracket(space, left, right);
        if (*fmt) return cmd_catalog_fmt(cpath, fmt_check);
        const Catalog c = load_catalog(cpath);
        if (*list) return cmd_catalog_list(c, list_space);
        if (*st) return cmd_structure(c, entry, point);
        if (*vt) return cmd_verify_tables(c, triage_path(triage_flag, cpath), filter, json, threads);
        if (*vc) return cmd_verify_claims(c, kind, json, threads, budget);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_failed;
    }
    return exit_usage;
}
