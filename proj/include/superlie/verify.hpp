#pragma once

// Recomputes catalog rows and claim fixtures; reports are deterministic and
// carry no timing so repeated runs are byte-identical.

#include <superlie/catalog.hpp>
#include <superlie/deformation.hpp>
#include <superlie/structure.hpp>
#include <superlie/transform.hpp>

#include <atomic>
#include <functional>
#include <thread>

namespace superlie {

enum class RowStatus { match, mismatch, flagged };

inline const char* to_string(RowStatus s) {
    switch (s) {
        case RowStatus::match: return "match";
        case RowStatus::mismatch: return "mismatch";
        case RowStatus::flagged: return "transcription-flagged";
    }
    return "?";
}

struct TriageNote {
    std::string entry;
    std::string label;
    std::string source;
    std::string verdict;  // toolkit bug | transcription error | paper erratum
    std::string note;
};

/// Triage notes keyed by entry, label and source table.
inline std::vector<TriageNote> load_triage(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw CatalogError(path, e.what());
    }
    std::vector<TriageNote> out;
    std::size_t k = 0;
    for (const auto& n : detail::JsonReader::array(detail::JsonReader::field(j, "$", "notes"), "$.notes")) {
        const std::string p = "notes[" + std::to_string(k++) + "]";
        using R = detail::JsonReader;
        out.push_back({R::string(R::field(n, p, "entry"), p + ".entry"), R::string(R::field(n, p, "label"), p + ".label"),
                       R::string(R::field(n, p, "source"), p + ".source"),
                       R::string(R::field(n, p, "verdict"), p + ".verdict"), R::string(R::field(n, p, "note"), p + ".note")});
    }
    return out;
}

struct RowResult {
    std::string entry;
    std::string label;
    std::string point;  // family bindings used, or "" for singletons
    std::string source;
    CohomologyRow expected;
    std::optional<CohomologyRow> computed;
    std::optional<Bidim> center;  // independent of the cohomology path
    bool codifferential = false;
    bool literal_agrees = false;  // the printed row equals the family at the point
    RowStatus status = RowStatus::mismatch;
    std::string flag;
    std::string error;
    std::vector<std::string> skipped;
    std::optional<TriageNote> triage;
};

struct TableSummary {
    std::size_t rows = 0, match = 0, mismatch = 0, flagged = 0;
};

struct TableReport {
    std::vector<RowResult> rows;
    TableSummary summary;

    bool ok() const noexcept { return summary.mismatch == 0; }
};

struct VerifyOptions {
    std::string filter = "*";
    unsigned threads = 0;  // 0: hardware concurrency
    std::vector<TriageNote> triage;
    SampleOptions sampling;
};

namespace detail {

/// Runs f(i) for i in [0, n) on a small pool; results are written by index so
/// aggregation order never depends on scheduling.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    auto worker = [&](unsigned w) {
        try {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) f(i);
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < threads; ++w) pool.emplace_back(worker, w);
    worker(0);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

inline RowResult verify_row(const CatalogEntry& e, const CatalogRow& row, const VerifyOptions& opt) {
    RowResult r;
    r.entry = e.id;
    r.label = row.label;
    r.source = row.source;
    r.expected = row.expected;
    if (row.flag) r.flag = *row.flag;
    else if (e.flag) r.flag = *e.flag;
    for (const auto& t : opt.triage)
        if (t.entry == e.id && t.label == row.label && t.source == row.source) r.triage = t;
    try {
        const RowSample s = sample_row(e, row, opt.sampling);
        r.point = bindings_text(s.family);
        r.skipped = s.skipped;
        const Cochain d = instantiate_entry(e, s.family);
        r.literal_agrees = instantiate_row_literal(e, row, s) == d;
        r.codifferential = is_codifferential(d);
        if (!r.codifferential) {
            r.error = "not a codifferential";
        } else {
            r.computed = cohomology_row(d);
            r.center = center(d).codifferential_bidim();
        }
        if (!r.literal_agrees && r.error.empty()) r.error = "printed row differs from the family at this point";
    } catch (const std::exception& ex) {
        r.error = ex.what();
    }
    if (r.error.empty() && r.computed && *r.computed == r.expected) r.status = RowStatus::match;
    else r.status = r.flag.empty() ? RowStatus::mismatch : RowStatus::flagged;
    return r;
}

}  // namespace detail

inline TableReport verify_tables(const Catalog& c, const VerifyOptions& opt = {}) {
    std::vector<std::pair<const CatalogEntry*, const CatalogRow*>> work;
    for (const auto& e : c.entries)
        if (glob_match(opt.filter, e.id))
            for (const auto& r : e.rows) work.emplace_back(&e, &r);
    TableReport rep;
    rep.rows.resize(work.size());
    detail::parallel_for(work.size(), opt.threads, [&](std::size_t i) {
        rep.rows[i] = detail::verify_row(*work[i].first, *work[i].second, opt);
    });
    for (const auto& r : rep.rows) {
        ++rep.summary.rows;
        switch (r.status) {
            case RowStatus::match: ++rep.summary.match; break;
            case RowStatus::mismatch: ++rep.summary.mismatch; break;
            case RowStatus::flagged: ++rep.summary.flagged; break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------- claims

enum class ClaimKind { structural, equivalence, jump };

inline const char* to_string(ClaimKind k) {
    switch (k) {
        case ClaimKind::structural: return "structural";
        case ClaimKind::equivalence: return "equivalence";
        case ClaimKind::jump: return "jump";
    }
    return "?";
}

inline std::optional<ClaimKind> parse_claim_kind(std::string_view s) {
    if (s == "structural") return ClaimKind::structural;
    if (s == "equivalence") return ClaimKind::equivalence;
    if (s == "jump") return ClaimKind::jump;
    return std::nullopt;
}

struct ClaimResult {
    ClaimKind kind = ClaimKind::structural;
    std::string subject;
    ClaimStatus status = ClaimStatus::unverified;
    bool required = false;
    std::string detail;
    std::string source;
    std::string flag;
};

struct ClaimSummary {
    std::size_t claims = 0, verified = 0, unverified = 0, contradicted = 0;
};

struct ClaimReport {
    std::vector<ClaimResult> rows;
    ClaimSummary summary;

    bool ok() const noexcept { return summary.contradicted == 0; }
};

namespace detail {

inline std::string matrix_text(const Matrix& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        s += i ? ",[" : "[";
        for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? "," : "") + to_string(m(i, j));
        s += "]";
    }
    return s + "]";
}

inline ClaimResult check_structural(const Catalog& c, const StructuralClaim& q) {
    ClaimResult r;
    r.kind = ClaimKind::structural;
    r.source = q.source;
    r.required = true;
    r.subject = q.target.str();
    std::string what;
    if (q.solvable) what += *q.solvable ? " solvable" : " not-solvable";
    if (q.nilpotent) what += *q.nilpotent ? " nilpotent" : " not-nilpotent";
    if (q.center) what += " center=" + *q.center;
    r.subject += ":" + what;
    try {
        const StructureReport s = analyze_structure(instantiate_ref(c, q.target));
        std::string bad;
        if (q.solvable && *q.solvable != s.solvable) bad += " solvable=" + std::string(s.solvable ? "yes" : "no");
        if (q.nilpotent && *q.nilpotent != s.nilpotent) bad += " nilpotent=" + std::string(s.nilpotent ? "yes" : "no");
        if (q.center && Bidim::parse(*q.center) != s.center) bad += " center=" + s.center.str();
        r.status = bad.empty() ? ClaimStatus::verified : ClaimStatus::contradicted;
        r.detail = bad.empty() ? "derived " + s.derived.str() + "; lower central " + s.lower_central.str()
                               : "computed" + bad;
    } catch (const std::exception& e) {
        r.status = ClaimStatus::unverified;
        r.detail = e.what();
    }
    return r;
}

inline ClaimResult check_equivalence(const Catalog& c, const EquivalenceClaim& q, const WitnessSearchOptions& wopt) {
    ClaimResult r;
    r.kind = ClaimKind::equivalence;
    r.source = q.source;
    r.required = q.required;
    r.subject = q.left.str() + " ~ " + q.right.str();
    try {
        const Cochain a = instantiate_ref(c, q.left), b = instantiate_ref(c, q.right);
        if (!(a.space() == b.space())) {
            r.status = ClaimStatus::contradicted;
            r.detail = "different spaces";
        } else if (auto g = search_witness(a, b, wopt)) {
            r.status = ClaimStatus::verified;
            r.detail = "witness " + matrix_text(g->matrix());
        } else if (const Verdict v = distinguish(a, b); v.distinct) {
            r.status = ClaimStatus::contradicted;
            r.detail = "distinct by " + v.invariant + " (" + v.detail + ")";
        } else {
            r.status = ClaimStatus::unverified;
            r.detail = "invariants agree, no witness within budget";
        }
    } catch (const std::exception& e) {
        r.status = ClaimStatus::unverified;
        r.detail = e.what();
    }
    return r;
}

inline ClaimResult check_jump(const Catalog& c, const JumpClaim& q, const WitnessSearchOptions& wopt) {
    ClaimResult r;
    r.kind = ClaimKind::jump;
    r.source = q.source;
    r.required = q.required;
    r.flag = q.flag.value_or("");
    r.subject = q.space + ":" + q.family.value_or("(no family)") + " -> " + q.target.str();
    if (!q.family) {
        r.status = ClaimStatus::unverified;
        r.detail = "no family fixture";
        return r;
    }
    try {
        const GradedSpace space = GradedSpace::parse(q.space);
        FamilyCurve fc{space, parse(*q.family), {}, instantiate_ref(c, q.target), {}, std::nullopt};
        for (const auto& s : q.samples) fc.samples.push_back(parse_rational(s));
        if (q.witness) {
            std::vector<std::vector<CoeffExpr>> w;
            for (const auto& row : *q.witness) {
                w.emplace_back();
                for (const auto& x : row) w.back().push_back(parse_coefficient(x));
            }
            fc.witness = std::move(w);
        }
        const JumpReport rep = check_jump_witness(fc, wopt);
        r.status = rep.status();
        for (const auto& s : rep.samples) {
            if (!r.detail.empty()) r.detail += "; ";
            r.detail += "t=" + to_string(s.t) + " " + to_string(s.status) + " (" + s.how +
                        (s.witness ? " " + matrix_text(*s.witness) : "") + ")";
        }
    } catch (const std::exception& e) {
        r.status = ClaimStatus::unverified;
        r.detail = e.what();
    }
    return r;
}

}  // namespace detail

inline ClaimReport verify_claims(const Catalog& c, std::optional<ClaimKind> kind = std::nullopt,
                                 unsigned threads = 0, const WitnessSearchOptions& wopt = {}) {
    std::vector<std::function<ClaimResult()>> work;
    auto want = [&](ClaimKind k) { return !kind || *kind == k; };
    if (want(ClaimKind::structural))
        for (const auto& q : c.claims.structural) work.push_back([&c, &q] { return detail::check_structural(c, q); });
    if (want(ClaimKind::equivalence))
        for (const auto& q : c.claims.equivalence)
            work.push_back([&c, &q, wopt] { return detail::check_equivalence(c, q, wopt); });
    if (want(ClaimKind::jump))
        for (const auto& q : c.claims.jump) work.push_back([&c, &q, wopt] { return detail::check_jump(c, q, wopt); });
    ClaimReport rep;
    rep.rows.resize(work.size());
    detail::parallel_for(work.size(), threads, [&](std::size_t i) { rep.rows[i] = work[i](); });
    for (const auto& r : rep.rows) {
        ++rep.summary.claims;
        switch (r.status) {
            case ClaimStatus::verified: ++rep.summary.verified; break;
            case ClaimStatus::unverified: ++rep.summary.unverified; break;
            case ClaimStatus::contradicted: ++rep.summary.contradicted; break;
        }
    }
    return rep;
}

// ---------------------------------------------------------------- reports

inline constexpr const char* report_version = "1";

inline Json to_json(const TableReport& rep) {
    Json j;
    j["version"] = report_version;
    j["kind"] = "tables";
    j["rows"] = Json::array();
    for (const auto& r : rep.rows) {
        Json rj;
        rj["entry"] = r.entry;
        rj["label"] = r.label;
        rj["point"] = r.point;
        rj["source"] = r.source;
        rj["expected"] = r.expected.str();
        rj["computed"] = r.computed ? Json(r.computed->str()) : Json(nullptr);
        rj["center"] = r.center ? Json(r.center->str()) : Json(nullptr);
        rj["codifferential"] = r.codifferential;
        rj["literal_agrees"] = r.literal_agrees;
        rj["status"] = to_string(r.status);
        if (!r.flag.empty()) rj["flag"] = r.flag;
        if (!r.error.empty()) rj["error"] = r.error;
        if (!r.skipped.empty()) rj["skipped"] = r.skipped;
        if (r.triage) rj["triage"] = {{"verdict", r.triage->verdict}, {"note", r.triage->note}};
        j["rows"].push_back(std::move(rj));
    }
    j["summary"] = {{"rows", rep.summary.rows},
                    {"match", rep.summary.match},
                    {"mismatch", rep.summary.mismatch},
                    {"transcription_flagged", rep.summary.flagged}};
    return j;
}

inline Json to_json(const ClaimReport& rep) {
    Json j;
    j["version"] = report_version;
    j["kind"] = "claims";
    j["rows"] = Json::array();
    for (const auto& r : rep.rows) {
        Json rj;
        rj["kind"] = to_string(r.kind);
        rj["subject"] = r.subject;
        rj["status"] = to_string(r.status);
        rj["required"] = r.required;
        rj["detail"] = r.detail;
        rj["source"] = r.source;
        if (!r.flag.empty()) rj["flag"] = r.flag;
        j["rows"].push_back(std::move(rj));
    }
    j["summary"] = {{"claims", rep.summary.claims},
                    {"verified", rep.summary.verified},
                    {"unverified", rep.summary.unverified},
                    {"contradicted", rep.summary.contradicted}};
    return j;
}

}  // namespace superlie
