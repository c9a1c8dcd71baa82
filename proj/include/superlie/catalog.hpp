#pragma once

// Machine-readable transcription of the classification tables and the prose
// claims, plus instantiation of entries at special points, subfamilies and
// deterministic generic samples.

#include <superlie/cohomology.hpp>
#include <superlie/literal_parser.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace superlie {

using Json = nlohmann::json;

/// Schema violation; where() is a path such as "entries[3].rows[2].expected.h1".
class CatalogError : public std::runtime_error {
public:
    CatalogError(std::string where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// Parameter assignment of a row: "generic", or each parameter mapped to a
/// coefficient expression (constants for points, free names for subfamilies).
struct CatalogPoint {
    bool generic = false;
    std::map<std::string, std::string> values;

    static CatalogPoint make_generic() { return {true, {}}; }
    friend bool operator==(const CatalogPoint&, const CatalogPoint&) = default;
};

struct CatalogRow {
    std::string label;  // e.g. "d_6(p:q:p+q)"
    CatalogPoint at;
    std::string expr;  // the row as printed, in the row's own names
    CohomologyRow expected;
    std::string source;  // table label
    std::optional<std::string> flag;
    std::optional<std::string> note;
};

struct CatalogEntry {
    std::string id;  // "2|2:d_10"; the bidim is the algebra's
    GradedSpace space{0, 0};  // codifferential side
    std::string expr;
    std::vector<std::string> params;
    std::vector<std::vector<std::string>> symmetry;  // images of params under each non-identity element
    std::optional<std::string> flag;
    std::vector<CatalogRow> rows;

    bool is_family() const noexcept { return !params.empty(); }
};

/// An entry at a point, or a literal cochain on a space.
struct CatalogRef {
    std::optional<std::string> entry;
    CatalogPoint at;
    std::optional<std::string> space;
    std::optional<std::string> expr;

    std::string str() const;
};

struct StructuralClaim {
    CatalogRef target;
    std::optional<bool> solvable;
    std::optional<bool> nilpotent;
    std::optional<std::string> center;  // codifferential grading
    std::string source;
};

struct EquivalenceClaim {
    CatalogRef left;
    CatalogRef right;
    bool required = false;
    std::string source;
};

struct JumpClaim {
    std::string space;
    std::optional<std::string> family;  // in the parameter t; absent when no fixture exists
    CatalogRef target;
    std::vector<std::string> samples;
    std::optional<std::vector<std::vector<std::string>>> witness;
    bool required = false;
    std::string source;
    std::optional<std::string> flag;
};

struct Claims {
    std::vector<StructuralClaim> structural;
    std::vector<EquivalenceClaim> equivalence;
    std::vector<JumpClaim> jump;
};

struct Catalog {
    int version = 1;
    std::vector<CatalogEntry> entries;
    Claims claims;

    const CatalogEntry& find(const std::string& id) const {
        for (const auto& e : entries)
            if (e.id == id) return e;
        throw std::out_of_range("no catalog entry '" + id + "'");
    }
    const CatalogEntry* try_find(const std::string& id) const {
        for (const auto& e : entries)
            if (e.id == id) return &e;
        return nullptr;
    }
    std::size_t row_count() const {
        std::size_t n = 0;
        for (const auto& e : entries) n += e.rows.size();
        return n;
    }
};

inline std::string point_text(const CatalogPoint& p) {
    if (p.generic) return "generic";
    std::string s;
    for (const auto& [k, v] : p.values) s += (s.empty() ? "" : ",") + k + "=" + v;
    return s;
}

inline std::string CatalogRef::str() const {
    if (entry) {
        const std::string pt = point_text(at);
        return *entry + (pt.empty() ? "" : "@" + pt);
    }
    return space.value_or("?") + ":" + expr.value_or("?");
}

// ---------------------------------------------------------------- reading

namespace detail {

class JsonReader {
public:
    static const Json& field(const Json& j, const std::string& path, const char* key) {
        if (!j.is_object()) throw CatalogError(path, "expected an object");
        auto it = j.find(key);
        if (it == j.end()) throw CatalogError(path + "." + key, "missing field");
        return *it;
    }
    static const Json* optional_field(const Json& j, const char* key) {
        auto it = j.find(key);
        return it == j.end() ? nullptr : &*it;
    }
    static std::string string(const Json& j, const std::string& path) {
        if (!j.is_string()) throw CatalogError(path, "expected a string");
        return j.get<std::string>();
    }
    static bool boolean(const Json& j, const std::string& path) {
        if (!j.is_boolean()) throw CatalogError(path, "expected a boolean");
        return j.get<bool>();
    }
    static const Json& array(const Json& j, const std::string& path) {
        if (!j.is_array()) throw CatalogError(path, "expected an array");
        return j;
    }
    static std::vector<std::string> strings(const Json& j, const std::string& path) {
        std::vector<std::string> out;
        std::size_t k = 0;
        for (const auto& x : array(j, path)) out.push_back(string(x, path + "[" + std::to_string(k++) + "]"));
        return out;
    }
    /// Rejects keys outside `allowed` so typos do not pass silently.
    static void only(const Json& j, const std::string& path, std::initializer_list<const char*> allowed) {
        for (auto it = j.begin(); it != j.end(); ++it) {
            bool ok = false;
            for (const char* a : allowed) ok = ok || it.key() == a;
            if (!ok) throw CatalogError(path, "unknown field '" + it.key() + "'");
        }
    }
};

inline CatalogPoint read_point(const Json& j, const std::string& path) {
    if (j.is_string()) {
        if (j.get<std::string>() != "generic") throw CatalogError(path, "point must be \"generic\" or an object");
        return CatalogPoint::make_generic();
    }
    if (!j.is_object()) throw CatalogError(path, "point must be \"generic\" or an object");
    CatalogPoint p;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string sub = path + "." + it.key();
        const std::string v = JsonReader::string(it.value(), sub);
        try {
            parse_coefficient(v);
        } catch (const ParseError& e) {
            throw CatalogError(sub, e.what());
        }
        p.values.emplace(it.key(), v);
    }
    return p;
}

inline CohomologyRow read_expected(const Json& j, const std::string& path) {
    if (!j.is_object()) throw CatalogError(path, "expected an object with h0..h3");
    JsonReader::only(j, path, {"h0", "h1", "h2", "h3"});
    CohomologyRow r;
    for (int n = 0; n < 4; ++n) {
        const std::string key = "h" + std::to_string(n);
        const std::string sub = path + "." + key;
        const std::string text = JsonReader::string(JsonReader::field(j, path, key.c_str()), sub);
        try {
            r.h[static_cast<std::size_t>(n)] = Bidim::parse(text);
        } catch (const std::exception& e) {
            throw CatalogError(sub, e.what());
        }
    }
    return r;
}

inline CochainExpr read_expr(const std::string& text, const std::string& path) {
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw CatalogError(path, e.what());
    }
}

inline CatalogRef read_ref(const Json& j, const std::string& path) {
    if (!j.is_object()) throw CatalogError(path, "expected an object");
    JsonReader::only(j, path, {"entry", "at", "space", "expr"});
    CatalogRef r;
    if (auto* e = JsonReader::optional_field(j, "entry")) {
        r.entry = JsonReader::string(*e, path + ".entry");
        r.at = read_point(JsonReader::field(j, path, "at"), path + ".at");
        if (j.contains("space") || j.contains("expr"))
            throw CatalogError(path, "reference has both an entry and a literal");
    } else {
        r.space = JsonReader::string(JsonReader::field(j, path, "space"), path + ".space");
        r.expr = JsonReader::string(JsonReader::field(j, path, "expr"), path + ".expr");
        read_expr(*r.expr, path + ".expr");
    }
    return r;
}

template <class T>
std::optional<T> read_optional(const Json& j, const char* key, const std::string& path);

template <>
inline std::optional<std::string> read_optional(const Json& j, const char* key, const std::string& path) {
    if (auto* f = JsonReader::optional_field(j, key)) return JsonReader::string(*f, path + "." + key);
    return std::nullopt;
}

template <>
inline std::optional<bool> read_optional(const Json& j, const char* key, const std::string& path) {
    if (auto* f = JsonReader::optional_field(j, key)) return JsonReader::boolean(*f, path + "." + key);
    return std::nullopt;
}

inline CatalogEntry read_entry(const Json& j, const std::string& path) {
    using R = JsonReader;
    if (!j.is_object()) throw CatalogError(path, "expected an object");
    R::only(j, path, {"id", "space", "expr", "params", "symmetry", "flag", "rows"});
    CatalogEntry e;
    e.id = R::string(R::field(j, path, "id"), path + ".id");
    const std::string space = R::string(R::field(j, path, "space"), path + ".space");
    try {
        e.space = GradedSpace::parse(space);
    } catch (const std::exception& ex) {
        throw CatalogError(path + ".space", ex.what());
    }
    e.expr = R::string(R::field(j, path, "expr"), path + ".expr");
    const CochainExpr ex = read_expr(e.expr, path + ".expr");
    e.params = R::strings(R::field(j, path, "params"), path + ".params");
    for (const auto& name : ex.parameters())
        if (std::find(e.params.begin(), e.params.end(), name) == e.params.end())
            throw CatalogError(path + ".expr", "name '" + name + "' is not a declared parameter");
    if (auto* s = R::optional_field(j, "symmetry")) {
        std::size_t k = 0;
        for (const auto& perm : R::array(*s, path + ".symmetry")) {
            const std::string sub = path + ".symmetry[" + std::to_string(k++) + "]";
            auto images = R::strings(perm, sub);
            auto a = images, b = e.params;
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b) throw CatalogError(sub, "not a permutation of the parameters");
            e.symmetry.push_back(std::move(images));
        }
    }
    e.flag = read_optional<std::string>(j, "flag", path);
    std::size_t k = 0;
    for (const auto& rj : R::array(R::field(j, path, "rows"), path + ".rows")) {
        const std::string rp = path + ".rows[" + std::to_string(k++) + "]";
        R::only(rj, rp, {"label", "at", "expr", "expected", "source", "flag", "note"});
        CatalogRow row;
        row.label = R::string(R::field(rj, rp, "label"), rp + ".label");
        row.at = read_point(R::field(rj, rp, "at"), rp + ".at");
        row.expr = R::string(R::field(rj, rp, "expr"), rp + ".expr");
        read_expr(row.expr, rp + ".expr");
        row.expected = read_expected(R::field(rj, rp, "expected"), rp + ".expected");
        row.source = R::string(R::field(rj, rp, "source"), rp + ".source");
        row.flag = read_optional<std::string>(rj, "flag", rp);
        row.note = read_optional<std::string>(rj, "note", rp);
        if (row.at.generic && !e.is_family()) throw CatalogError(rp + ".at", "\"generic\" needs a parameterized entry");
        if (!row.at.generic) {
            std::set<std::string> keys;
            for (const auto& [name, v] : row.at.values) keys.insert(name);
            if (keys != std::set<std::string>(e.params.begin(), e.params.end()))
                throw CatalogError(rp + ".at", "point must assign exactly the entry parameters");
        }
        e.rows.push_back(std::move(row));
    }
    return e;
}

inline void check_ref(const Catalog& c, const CatalogRef& r, const std::string& path) {
    if (!r.entry) return;
    const CatalogEntry* e = c.try_find(*r.entry);
    if (!e) throw CatalogError(path + ".entry", "unknown entry '" + *r.entry + "'");
    if (r.at.generic) {
        if (!e->is_family()) throw CatalogError(path + ".at", "\"generic\" needs a parameterized entry");
        return;
    }
    for (const auto& name : e->params)
        if (!r.at.values.count(name)) throw CatalogError(path + ".at", "missing parameter '" + name + "'");
    if (r.at.values.size() != e->params.size()) throw CatalogError(path + ".at", "unknown parameter");
}

}  // namespace detail

inline Catalog parse_catalog(const Json& j) {
    using R = detail::JsonReader;
    R::only(j, "$", {"version", "entries", "claims"});
    Catalog c;
    const Json& v = R::field(j, "$", "version");
    if (!v.is_number_integer()) throw CatalogError("$.version", "expected an integer");
    c.version = v.get<int>();
    std::size_t k = 0;
    std::set<std::string> ids;
    for (const auto& ej : R::array(R::field(j, "$", "entries"), "$.entries")) {
        const std::string path = "entries[" + std::to_string(k++) + "]";
        CatalogEntry e = detail::read_entry(ej, path);
        if (!ids.insert(e.id).second) throw CatalogError(path + ".id", "duplicate id '" + e.id + "'");
        c.entries.push_back(std::move(e));
    }

    const Json& cj = R::field(j, "$", "claims");
    R::only(cj, "claims", {"structural", "equivalence", "jump"});
    k = 0;
    for (const auto& sj : R::array(R::field(cj, "claims", "structural"), "claims.structural")) {
        const std::string p = "claims.structural[" + std::to_string(k++) + "]";
        R::only(sj, p, {"target", "solvable", "nilpotent", "center", "source"});
        StructuralClaim s;
        s.target = detail::read_ref(R::field(sj, p, "target"), p + ".target");
        s.solvable = detail::read_optional<bool>(sj, "solvable", p);
        s.nilpotent = detail::read_optional<bool>(sj, "nilpotent", p);
        s.center = detail::read_optional<std::string>(sj, "center", p);
        s.source = R::string(R::field(sj, p, "source"), p + ".source");
        detail::check_ref(c, s.target, p + ".target");
        c.claims.structural.push_back(std::move(s));
    }
    k = 0;
    for (const auto& ej : R::array(R::field(cj, "claims", "equivalence"), "claims.equivalence")) {
        const std::string p = "claims.equivalence[" + std::to_string(k++) + "]";
        R::only(ej, p, {"left", "right", "required", "source"});
        EquivalenceClaim q;
        q.left = detail::read_ref(R::field(ej, p, "left"), p + ".left");
        q.right = detail::read_ref(R::field(ej, p, "right"), p + ".right");
        q.required = R::boolean(R::field(ej, p, "required"), p + ".required");
        q.source = R::string(R::field(ej, p, "source"), p + ".source");
        detail::check_ref(c, q.left, p + ".left");
        detail::check_ref(c, q.right, p + ".right");
        c.claims.equivalence.push_back(std::move(q));
    }
    k = 0;
    for (const auto& jj : R::array(R::field(cj, "claims", "jump"), "claims.jump")) {
        const std::string p = "claims.jump[" + std::to_string(k++) + "]";
        R::only(jj, p, {"space", "family", "target", "samples", "witness", "required", "source", "flag"});
        JumpClaim q;
        q.space = R::string(R::field(jj, p, "space"), p + ".space");
        q.family = detail::read_optional<std::string>(jj, "family", p);
        if (q.family) detail::read_expr(*q.family, p + ".family");
        q.target = detail::read_ref(R::field(jj, p, "target"), p + ".target");
        if (auto* s = R::optional_field(jj, "samples")) q.samples = R::strings(*s, p + ".samples");
        if (auto* w = R::optional_field(jj, "witness")) {
            std::vector<std::vector<std::string>> rows;
            std::size_t r = 0;
            for (const auto& row : R::array(*w, p + ".witness"))
                rows.push_back(R::strings(row, p + ".witness[" + std::to_string(r++) + "]"));
            q.witness = std::move(rows);
        }
        q.required = R::boolean(R::field(jj, p, "required"), p + ".required");
        q.source = R::string(R::field(jj, p, "source"), p + ".source");
        q.flag = detail::read_optional<std::string>(jj, "flag", p);
        if (q.family && q.samples.empty()) throw CatalogError(p + ".samples", "a family needs sample points");
        for (std::size_t s = 0; s < q.samples.size(); ++s) {
            try {
                if (parse_rational(q.samples[s]).is_zero())
                    throw CatalogError(p + ".samples[" + std::to_string(s) + "]", "sample t=0 is not allowed");
            } catch (const std::invalid_argument& e) {
                throw CatalogError(p + ".samples[" + std::to_string(s) + "]", e.what());
            }
        }
        detail::check_ref(c, q.target, p + ".target");
        c.claims.jump.push_back(std::move(q));
    }
    return c;
}

inline Catalog parse_catalog_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw CatalogError("$", e.what());
    }
    return parse_catalog(j);
}

inline Catalog load_catalog(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CatalogError(path, "cannot open catalog file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_catalog_text(ss.str());
}

// ---------------------------------------------------------------- writing

namespace detail {

inline Json write_point(const CatalogPoint& p) {
    if (p.generic) return "generic";
    Json j = Json::object();
    for (const auto& [k, v] : p.values) j[k] = v;
    return j;
}

inline Json write_ref(const CatalogRef& r) {
    Json j = Json::object();
    if (r.entry) {
        j["entry"] = *r.entry;
        j["at"] = write_point(r.at);
    } else {
        j["space"] = *r.space;
        j["expr"] = *r.expr;
    }
    return j;
}

}  // namespace detail

inline Json to_json(const Catalog& c) {
    Json j;
    j["version"] = c.version;
    j["entries"] = Json::array();
    for (const auto& e : c.entries) {
        Json ej;
        ej["id"] = e.id;
        ej["space"] = e.space.str();
        ej["expr"] = e.expr;
        ej["params"] = e.params;
        if (!e.symmetry.empty()) ej["symmetry"] = e.symmetry;
        if (e.flag) ej["flag"] = *e.flag;
        ej["rows"] = Json::array();
        for (const auto& r : e.rows) {
            Json rj;
            rj["label"] = r.label;
            rj["at"] = detail::write_point(r.at);
            rj["expr"] = r.expr;
            Json h;
            for (std::size_t n = 0; n < 4; ++n) h["h" + std::to_string(n)] = r.expected.h[n].str();
            rj["expected"] = h;
            rj["source"] = r.source;
            if (r.flag) rj["flag"] = *r.flag;
            if (r.note) rj["note"] = *r.note;
            ej["rows"].push_back(std::move(rj));
        }
        j["entries"].push_back(std::move(ej));
    }
    Json cl;
    cl["structural"] = Json::array();
    for (const auto& s : c.claims.structural) {
        Json sj;
        sj["target"] = detail::write_ref(s.target);
        if (s.solvable) sj["solvable"] = *s.solvable;
        if (s.nilpotent) sj["nilpotent"] = *s.nilpotent;
        if (s.center) sj["center"] = *s.center;
        sj["source"] = s.source;
        cl["structural"].push_back(std::move(sj));
    }
    cl["equivalence"] = Json::array();
    for (const auto& q : c.claims.equivalence) {
        Json qj;
        qj["left"] = detail::write_ref(q.left);
        qj["right"] = detail::write_ref(q.right);
        qj["required"] = q.required;
        qj["source"] = q.source;
        cl["equivalence"].push_back(std::move(qj));
    }
    cl["jump"] = Json::array();
    for (const auto& q : c.claims.jump) {
        Json qj;
        qj["space"] = q.space;
        if (q.family) qj["family"] = *q.family;
        qj["target"] = detail::write_ref(q.target);
        if (q.family || !q.samples.empty()) qj["samples"] = q.samples;
        if (q.witness) qj["witness"] = *q.witness;
        qj["required"] = q.required;
        qj["source"] = q.source;
        if (q.flag) qj["flag"] = *q.flag;
        cl["jump"].push_back(std::move(qj));
    }
    j["claims"] = std::move(cl);
    return j;
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string serialize(const Catalog& c) { return to_json(c).dump(2) + "\n"; }

// ---------------------------------------------------------------- instantiation

/// A row's parameter locus as the column span of a matrix (one row per entry
/// parameter). Families are projective, so a point spans a line.
struct Locus {
    std::vector<std::string> names;  // free names of a subfamily, sorted; empty for points
    Matrix basis;                    // params x max(1, names)
};

namespace detail {

inline bool in_span(const Matrix& a, const Vector& x) {
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
        aug(r, a.cols()) = x[r];
    }
    return rank(aug) == rank(a);
}

inline Vector column(const Matrix& a, std::size_t c) {
    Vector v(a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) v[r] = a(r, c);
    return v;
}

/// Rows of `a` permuted by a symmetry given as parameter images.
inline Matrix permute(const Matrix& a, const std::vector<std::string>& params, const std::vector<std::string>& images) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < params.size(); ++i) {
        const auto src = static_cast<std::size_t>(
            std::find(params.begin(), params.end(), images[i]) - params.begin());
        for (std::size_t c = 0; c < a.cols(); ++c) out(i, c) = a(src, c);
    }
    return out;
}

/// Distinct integers in scan order 0, 1, -1, 2, -2, ...
inline Rational scan_value(std::size_t k) {
    if (k == 0) return 0;
    const auto h = static_cast<long>((k + 1) / 2);
    return k % 2 ? Rational(h) : Rational(-h);
}

/// Primitive integer vectors of max-abs height h, first nonzero coordinate
/// positive, in lexicographic scan order.
inline std::vector<std::vector<Rational>> height_shell(std::size_t dim, long h) {
    std::vector<std::vector<Rational>> out;
    const std::size_t width = static_cast<std::size_t>(2 * h + 1);
    std::vector<std::size_t> idx(dim, 0);
    while (true) {
        std::vector<Rational> v(dim);
        long top = 0;
        Integer g = 0;
        bool first_positive = true, seen = false;
        for (std::size_t i = 0; i < dim; ++i) {
            v[i] = scan_value(idx[i]);
            const Integer n = numerator_of(v[i]);
            const long a = static_cast<long>(n < 0 ? Integer(-n) : n);
            top = std::max(top, a);
            g = boost::multiprecision::gcd(g, n < 0 ? Integer(-n) : n);
            if (!seen && !v[i].is_zero()) {
                seen = true;
                first_positive = v[i] > 0;
            }
        }
        if (top == h && first_positive && g == 1) out.push_back(std::move(v));
        std::size_t i = dim;
        while (i > 0 && ++idx[i - 1] == width) idx[--i] = 0;
        if (i == 0) break;
    }
    return out;
}

inline const std::vector<Rational>& reference_values() {
    static const std::vector<Rational> v = {1009, -2347, 3571, 4903, -6143, 7927};
    return v;
}

}  // namespace detail

/// Linear locus of a non-generic row of a family.
inline Locus row_locus(const CatalogEntry& e, const CatalogRow& row) {
    if (row.at.generic) throw std::invalid_argument("row_locus: generic row");
    Locus l;
    std::map<std::string, CoeffExpr> exprs;
    std::set<std::string> names;
    for (const auto& [k, v] : row.at.values) {
        exprs.emplace(k, parse_coefficient(v));
        exprs.at(k).collect_names(names);
    }
    l.names.assign(names.begin(), names.end());
    const std::size_t k = std::max<std::size_t>(1, l.names.size());
    l.basis = Matrix(e.params.size(), k);
    auto eval = [&](const std::vector<Rational>& x) {
        Bindings b;
        for (std::size_t i = 0; i < l.names.size(); ++i) b[l.names[i]] = x[i];
        Vector out(e.params.size());
        for (std::size_t i = 0; i < e.params.size(); ++i) out[i] = exprs.at(e.params[i]).evaluate(b);
        return out;
    };
    if (l.names.empty()) {
        const Vector p = eval({});
        for (std::size_t i = 0; i < p.size(); ++i) l.basis(i, 0) = p[i];
        return l;
    }
    for (std::size_t c = 0; c < l.names.size(); ++c) {
        std::vector<Rational> unit(l.names.size());
        unit[c] = 1;
        const Vector col = eval(unit);
        for (std::size_t i = 0; i < col.size(); ++i) l.basis(i, c) = col[i];
    }
    // the map must be linear and homogeneous in the free names
    std::vector<Rational> probe(l.names.size());
    for (std::size_t c = 0; c < probe.size(); ++c) probe[c] = Rational(2 * static_cast<long>(c) + 3);
    const Vector lhs = eval(probe);
    const Vector zero = eval(std::vector<Rational>(l.names.size()));
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        Rational rhs = 0;
        for (std::size_t c = 0; c < probe.size(); ++c) rhs += l.basis(i, c) * probe[c];
        if (lhs[i] != rhs || !zero[i].is_zero())
            throw std::invalid_argument("row " + row.label + ": subfamily map is not linear");
    }
    return l;
}

/// True if the row's locus (or one of its symmetry images) contains x.
inline bool locus_contains(const CatalogEntry& e, const Locus& l, const Vector& x) {
    if (detail::in_span(l.basis, x)) return true;
    for (const auto& s : e.symmetry)
        if (detail::in_span(detail::permute(l.basis, e.params, s), x)) return true;
    return false;
}

/// True if every point of `inner` lies in some symmetry image of `outer`.
inline bool locus_includes(const CatalogEntry& e, const Locus& outer, const Locus& inner) {
    auto inside = [&](const Matrix& m) {
        for (std::size_t c = 0; c < inner.basis.cols(); ++c)
            if (!detail::in_span(m, detail::column(inner.basis, c))) return false;
        return true;
    };
    if (inside(outer.basis)) return true;
    for (const auto& s : e.symmetry)
        if (inside(detail::permute(outer.basis, e.params, s))) return true;
    return false;
}

/// Where a row was evaluated. `local` binds the row's own names (subfamily
/// names, or the entry parameters for generic rows); `family` binds the
/// entry parameters.
struct RowSample {
    Bindings local;
    Bindings family;
    std::vector<std::string> skipped;  // scanned points whose cohomology was not that of the reference point
};

inline std::string bindings_text(const Bindings& b) {
    std::string s;
    for (const auto& [k, v] : b) s += (s.empty() ? "" : ",") + k + "=" + to_string(v);
    return s;
}

struct SampleOptions {
    long max_height = 8;
    bool reference_check = true;  // skip scanned points whose cohomology differs from a far-away point
};

/// Deterministic sample for a row: constants for points and singletons; for
/// generic and subfamily rows, the first primitive integer point in scan order
/// outside every locus not containing the row's own.
inline RowSample sample_row(const CatalogEntry& e, const CatalogRow& row, const SampleOptions& opt = {}) {
    RowSample out;
    if (!e.is_family()) return out;

    std::optional<Locus> own;
    std::vector<std::string> names = e.params;
    if (!row.at.generic) {
        own = row_locus(e, row);
        names = own->names;
        if (names.empty()) {
            for (std::size_t i = 0; i < e.params.size(); ++i) out.family[e.params[i]] = own->basis(i, 0);
            return out;
        }
    }

    std::vector<Locus> avoid;
    for (const auto& r : e.rows) {
        if (r.at.generic) continue;
        Locus l = row_locus(e, r);
        if (own && locus_includes(e, l, *own)) continue;
        avoid.push_back(std::move(l));
    }

    auto to_family = [&](const std::vector<Rational>& v) {
        Vector x(e.params.size());
        if (!own) {
            for (std::size_t i = 0; i < v.size(); ++i) x[i] = v[i];
        } else {
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::size_t c = 0; c < v.size(); ++c) x[i] += own->basis(i, c) * v[c];
        }
        return x;
    };
    auto cochain_at = [&](const Vector& x) {
        Bindings b;
        for (std::size_t i = 0; i < x.size(); ++i) b[e.params[i]] = x[i];
        return instantiate(e.expr, e.space, b);
    };

    std::optional<CohomologyRow> reference;
    if (opt.reference_check) {
        const auto& rv = detail::reference_values();
        if (names.size() > rv.size()) throw std::invalid_argument("sample_row: too many parameters");
        reference = cohomology_row(cochain_at(to_family({rv.begin(), rv.begin() + static_cast<long>(names.size())})));
    }

    for (long h = 1; h <= opt.max_height; ++h)
        for (const auto& v : detail::height_shell(names.size(), h)) {
            const Vector x = to_family(v);
            bool hit = false;
            for (const auto& l : avoid) hit = hit || locus_contains(e, l, x);
            if (hit) continue;
            Bindings local;
            for (std::size_t i = 0; i < names.size(); ++i) local[names[i]] = v[i];
            if (reference && cohomology_row(cochain_at(x)) != *reference) {
                out.skipped.push_back(bindings_text(local));
                continue;
            }
            out.local = std::move(local);
            for (std::size_t i = 0; i < x.size(); ++i) out.family[e.params[i]] = x[i];
            return out;
        }
    throw std::runtime_error("no admissible sample for " + e.id + " " + row.label);
}

/// The entry's cochain at family bindings.
inline Cochain instantiate_entry(const CatalogEntry& e, const Bindings& family) {
    return instantiate(e.expr, e.space, family);
}

/// The entry at a point: "generic" uses the generic sample; a point with
/// free names uses the matching subfamily sample.
inline Cochain instantiate_entry(const CatalogEntry& e, const CatalogPoint& at) {
    if (at.generic) {
        if (!e.is_family()) throw std::invalid_argument(e.id + " has no parameters");
        for (const auto& r : e.rows)
            if (r.at.generic) return instantiate_entry(e, sample_row(e, r).family);
        CatalogRow synthetic{e.id, CatalogPoint::make_generic(), e.expr, {}, "", {}, {}};
        return instantiate_entry(e, sample_row(e, synthetic).family);
    }
    CatalogRow synthetic{e.id, at, e.expr, {}, "", {}, {}};
    return instantiate_entry(e, sample_row(e, synthetic).family);
}

inline Cochain instantiate_ref(const Catalog& c, const CatalogRef& r) {
    if (r.entry) return instantiate_entry(c.find(*r.entry), r.at);
    return instantiate(*r.expr, GradedSpace::parse(*r.space));
}

/// The row's own printed expression at the sample (transcription cross-check).
inline Cochain instantiate_row_literal(const CatalogEntry& e, const CatalogRow& row, const RowSample& s) {
    return instantiate(row.expr, e.space, row.at.generic ? s.family : s.local);
}

/// Simple glob with '*' and '?' against entry ids.
inline bool glob_match(std::string_view pattern, std::string_view text) {
    std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string_view::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

}  // namespace superlie
