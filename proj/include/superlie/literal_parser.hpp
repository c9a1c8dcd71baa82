#pragma once

// Text form of cochains. `ps(i1,...,ik;j)` stands for the basis map sending the
// monomial v_i1...v_ik to v_j; coefficients are products of rationals,
// parameter names and parenthesized sums:
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := [product '*'] 'ps' '(' int (',' int)* ';' int ')'
//   product := atom ('*' atom)*
//   atom    := digits ['/' digits] | name | '(' sum ')'
//   sum     := ['+'|'-'] product (('+'|'-') product)*

#include <superlie/cochain.hpp>

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace superlie {

using Bindings = std::map<std::string, Rational>;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Coefficient expression tree. Number literals are non-negative; signs live
/// in sums and in term prefixes.
struct CoeffExpr {
    enum class Kind { number, name, sum, product };

    Kind kind = Kind::number;
    Rational number = 0;
    std::string name;
    std::vector<CoeffExpr> items;
    std::vector<bool> negated;  // per item, sums only

    static CoeffExpr constant(Rational r) {
        CoeffExpr e;
        e.number = std::move(r);
        return e;
    }
    static CoeffExpr variable(std::string n) {
        CoeffExpr e;
        e.kind = Kind::name;
        e.name = std::move(n);
        return e;
    }

    Rational evaluate(const Bindings& b) const {
        switch (kind) {
            case Kind::number:
                return number;
            case Kind::name: {
                auto it = b.find(name);
                if (it == b.end()) throw std::invalid_argument("unbound parameter '" + name + "'");
                return it->second;
            }
            case Kind::sum: {
                Rational acc = 0;
                for (std::size_t k = 0; k < items.size(); ++k) {
                    if (negated[k]) acc -= items[k].evaluate(b);
                    else acc += items[k].evaluate(b);
                }
                return acc;
            }
            case Kind::product: {
                Rational acc = 1;
                for (const auto& it : items) acc *= it.evaluate(b);
                return acc;
            }
        }
        return 0;
    }

    void collect_names(std::set<std::string>& out) const {
        if (kind == Kind::name) out.insert(name);
        for (const auto& it : items) it.collect_names(out);
    }

    std::string str() const {
        switch (kind) {
            case Kind::number:
                return to_string(number);
            case Kind::name:
                return name;
            case Kind::sum: {
                std::string s;
                for (std::size_t k = 0; k < items.size(); ++k) {
                    if (negated[k]) s += '-';
                    else if (k) s += '+';
                    s += items[k].str();
                }
                return s;
            }
            case Kind::product: {
                std::string s;
                for (std::size_t k = 0; k < items.size(); ++k) {
                    if (k) s += '*';
                    if (items[k].kind == Kind::sum) s += "(" + items[k].str() + ")";
                    else s += items[k].str();
                }
                return s;
            }
        }
        return {};
    }

    friend bool operator==(const CoeffExpr&, const CoeffExpr&) = default;
};

struct TermExpr {
    bool negative = false;
    std::optional<CoeffExpr> coeff;  // a product; absent means 1
    std::vector<int> inputs;
    int output = 0;

    friend bool operator==(const TermExpr&, const TermExpr&) = default;
};

struct CochainExpr {
    std::vector<TermExpr> terms;

    std::set<std::string> parameters() const {
        std::set<std::string> out;
        for (const auto& t : terms)
            if (t.coeff) t.coeff->collect_names(out);
        return out;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::string s;
        for (std::size_t k = 0; k < terms.size(); ++k) {
            const auto& t = terms[k];
            if (t.negative) s += '-';
            else if (k) s += '+';
            if (t.coeff) s += t.coeff->str() + "*";
            s += "ps(";
            for (std::size_t i = 0; i < t.inputs.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(t.inputs[i]);
            }
            s += ";" + std::to_string(t.output) + ")";
        }
        return s;
    }

    friend bool operator==(const CochainExpr&, const CochainExpr&) = default;
};

namespace detail {

class LiteralParser {
public:
    explicit LiteralParser(std::string_view text) : text_(text) {}

    CochainExpr parse_expression() {
        skip();
        if (at_end()) throw ParseError("empty expression", pos_);
        CochainExpr e;
        // a bare "0" is the zero cochain
        if (text_.substr(pos_) == "0" || trimmed() == "0") {
            pos_ = text_.size();
            return e;
        }
        bool negative = false;
        if (peek() == '+' || peek() == '-') negative = take() == '-';
        e.terms.push_back(parse_term(negative));
        while (true) {
            skip();
            if (at_end()) break;
            const char c = peek();
            if (c != '+' && c != '-') throw ParseError(std::string("unexpected '") + c + "'", pos_);
            take();
            e.terms.push_back(parse_term(c == '-'));
        }
        return e;
    }

    CoeffExpr parse_coefficient() {
        skip();
        if (at_end()) throw ParseError("empty coefficient", pos_);
        CoeffExpr s = parse_sum();
        skip();
        if (!at_end()) throw ParseError(std::string("unexpected '") + peek() + "'", pos_);
        return s;
    }

private:
    std::string_view trimmed() const {
        std::size_t a = 0, b = text_.size();
        while (a < b && std::isspace(static_cast<unsigned char>(text_[a]))) ++a;
        while (b > a && std::isspace(static_cast<unsigned char>(text_[b - 1]))) --b;
        return text_.substr(a, b - a);
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    char take() { return text_[pos_++]; }
    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    void expect(char c) {
        skip();
        if (peek() != c) {
            if (at_end()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
            throw ParseError(std::string("expected '") + c + "', found '" + peek() + "'", pos_);
        }
        take();
    }

    bool at_ps() {
        skip();
        if (text_.compare(pos_, 2, "ps") != 0) return false;
        std::size_t k = pos_ + 2;
        while (k < text_.size() && std::isspace(static_cast<unsigned char>(text_[k]))) ++k;
        return k < text_.size() && text_[k] == '(';
    }

    TermExpr parse_term(bool negative) {
        TermExpr t;
        t.negative = negative;
        if (!at_ps()) {
            CoeffExpr prod;
            prod.kind = CoeffExpr::Kind::product;
            prod.items.push_back(parse_atom());
            while (true) {
                expect('*');
                if (at_ps()) break;
                prod.items.push_back(parse_atom());
            }
            t.coeff = std::move(prod);
        }
        skip();
        pos_ += 2;  // "ps"
        expect('(');
        t.inputs.push_back(parse_int());
        while (true) {
            skip();
            if (peek() == ',') {
                take();
                t.inputs.push_back(parse_int());
            } else {
                break;
            }
        }
        expect(';');
        t.output = parse_int();
        expect(')');
        return t;
    }

    int parse_int() {
        skip();
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) {
            if (at_end()) throw ParseError("expected an index but input ended", pos_);
            throw ParseError(std::string("expected an index, found '") + peek() + "'", pos_);
        }
        return std::stoi(std::string(text_.substr(start, pos_ - start)));
    }

    CoeffExpr parse_atom() {
        skip();
        if (at_end()) throw ParseError("expected a coefficient but input ended", pos_);
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            if (peek() == '/') {
                ++pos_;
                const std::size_t den = pos_;
                while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
                if (den == pos_) throw ParseError("expected denominator digits", pos_);
            }
            try {
                return CoeffExpr::constant(parse_rational(std::string(text_.substr(start, pos_ - start))));
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), start);
            }
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
            return CoeffExpr::variable(std::string(text_.substr(start, pos_ - start)));
        }
        if (c == '(') {
            take();
            CoeffExpr inner = parse_sum();
            expect(')');
            return inner;
        }
        throw ParseError(std::string("unknown token '") + c + "'", pos_);
    }

    CoeffExpr parse_product() {
        CoeffExpr first = parse_atom();
        skip();
        if (peek() != '*') return first;
        CoeffExpr prod;
        prod.kind = CoeffExpr::Kind::product;
        prod.items.push_back(std::move(first));
        while (true) {
            skip();
            if (peek() != '*') break;
            take();
            prod.items.push_back(parse_atom());
        }
        return prod;
    }

    CoeffExpr parse_sum() {
        skip();
        CoeffExpr sum;
        sum.kind = CoeffExpr::Kind::sum;
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = take() == '-';
        sum.items.push_back(parse_product());
        sum.negated.push_back(neg);
        while (true) {
            skip();
            const char c = peek();
            if (c != '+' && c != '-') break;
            take();
            sum.items.push_back(parse_product());
            sum.negated.push_back(c == '-');
        }
        if (sum.items.size() == 1 && !sum.negated.front()) return std::move(sum.items.front());
        return sum;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline CochainExpr parse(std::string_view text) { return detail::LiteralParser(text).parse_expression(); }

inline CoeffExpr parse_coefficient(std::string_view text) {
    return detail::LiteralParser(text).parse_coefficient();
}

/// Evaluates coefficients at the bindings and builds the cochain. Repeated odd
/// inputs are rejected rather than dropped.
inline Cochain instantiate(const CochainExpr& expr, const GradedSpace& space, const Bindings& b) {
    Cochain out(space);
    for (const auto& t : expr.terms) {
        if (t.inputs.empty()) throw std::invalid_argument("term with empty input list");
        for (int i : t.inputs)
            if (!space.contains(i))
                throw std::invalid_argument("index " + std::to_string(i) + " outside " + space.str());
        if (!space.contains(t.output))
            throw std::invalid_argument("output index " + std::to_string(t.output) + " outside " + space.str());
        std::vector<int> sorted = t.inputs;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 1; k < sorted.size(); ++k)
            if (sorted[k] == sorted[k - 1] && is_odd(space.parity(sorted[k])))
                throw std::invalid_argument("odd index " + std::to_string(sorted[k]) +
                                            " repeated in a term on " + space.str());
        Rational c = t.coeff ? t.coeff->evaluate(b) : Rational(1);
        if (t.negative) c = -c;
        out.add_term(Monomial::unchecked(std::move(sorted)), t.output, c);
    }
    return out;
}

inline Cochain instantiate(std::string_view text, const GradedSpace& space, const Bindings& b = {}) {
    return instantiate(parse(text), space, b);
}

/// Canonical expression of a concrete cochain (terms in basis order).
inline CochainExpr to_expr(const Cochain& c) {
    CochainExpr e;
    for (const auto& [key, coeff] : c.terms()) {
        TermExpr t;
        t.negative = coeff < 0;
        const Rational mag = t.negative ? Rational(-coeff) : coeff;
        if (mag != 1) {
            CoeffExpr prod;
            prod.kind = CoeffExpr::Kind::product;
            prod.items.push_back(CoeffExpr::constant(mag));
            t.coeff = std::move(prod);
        }
        t.inputs = key.input.indices();
        t.output = key.output;
        e.terms.push_back(std::move(t));
    }
    return e;
}

inline std::string to_text(const Cochain& c) { return to_expr(c).str(); }

/// Parses "p=1,q=-2/3" into bindings.
inline Bindings parse_bindings(std::string_view text) {
    Bindings b;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t comma = text.find(',', start);
        if (comma == std::string_view::npos) comma = text.size();
        const std::string item(text.substr(start, comma - start));
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw std::invalid_argument("bad binding '" + item + "'");
        std::string name = item.substr(0, eq);
        name.erase(std::remove_if(name.begin(), name.end(), ::isspace), name.end());
        std::string value = item.substr(eq + 1);
        value.erase(std::remove_if(value.begin(), value.end(), ::isspace), value.end());
        b[name] = parse_coefficient(value).evaluate({});
        start = comma + 1;
    }
    return b;
}

}  // namespace superlie
