#include "algser/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace algser {

Polynomial::Polynomial(std::vector<std::string> ambient) : ambient_(std::move(ambient)) {}

Polynomial Polynomial::constant(std::vector<std::string> ambient, Int c) {
    Polynomial p(std::move(ambient));
    if (c != 0) p.terms_.emplace(MultiIndex(p.ambient_.size(), 0), std::move(c));
    return p;
}

Polynomial Polynomial::monomial(std::vector<std::string> ambient, MultiIndex v, Int c) {
    Polynomial p(std::move(ambient));
    if (v.size() != p.ambient_.size()) throw Error("monomial arity does not match ambient");
    if (c != 0) p.terms_.emplace(std::move(v), std::move(c));
    return p;
}

Polynomial Polynomial::symbol(std::vector<std::string> ambient, const std::string& name) {
    Polynomial p(std::move(ambient));
    MultiIndex v(p.ambient_.size(), 0);
    v[p.symbol_index(name)] = 1;
    p.terms_.emplace(std::move(v), Int(1));
    return p;
}

Polynomial Polynomial::from_terms(std::vector<std::string> ambient, TermMap terms) {
    Polynomial p(std::move(ambient));
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->first.size() != p.ambient_.size()) throw Error("term arity does not match ambient");
        it = (it->second == 0) ? terms.erase(it) : std::next(it);
    }
    p.terms_ = std::move(terms);
    return p;
}

size_t Polynomial::symbol_index(const std::string& name) const {
    auto it = std::find(ambient_.begin(), ambient_.end(), name);
    if (it == ambient_.end()) throw Error("symbol '" + name + "' not in ambient");
    return static_cast<size_t>(it - ambient_.begin());
}

Int Polynomial::coefficient(const MultiIndex& v) const {
    auto it = terms_.find(v);
    return it == terms_.end() ? Int(0) : it->second;
}

Int Polynomial::constant_term() const {
    return coefficient(MultiIndex(ambient_.size(), 0));
}

std::uint64_t Polynomial::degree() const {
    std::uint64_t d = 0;
    for (auto& [v, c] : terms_) d = std::max(d, total_degree(v));
    return d;
}

std::uint64_t Polynomial::degree_over(size_t from, size_t to) const {
    std::uint64_t d = 0;
    for (auto& [v, c] : terms_) {
        std::uint64_t s = 0;
        for (size_t i = from; i < to && i < v.size(); ++i) s += v[i];
        d = std::max(d, s);
    }
    return d;
}

std::optional<std::uint64_t> Polynomial::min_degree() const {
    if (terms_.empty()) return std::nullopt;
    std::uint64_t d = UINT64_MAX;
    for (auto& [v, c] : terms_) d = std::min(d, total_degree(v));
    return d;
}

std::optional<MultiIndex> Polynomial::min_graded_term() const {
    if (terms_.empty()) return std::nullopt;
    const MultiIndex* best = nullptr;
    for (auto& [v, c] : terms_)
        if (!best || graded_lex_less(v, *best)) best = &v;
    return *best;
}

void Polynomial::add_term(const MultiIndex& v, const Int& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(v, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

void Polynomial::require_same_ambient(const Polynomial& a, const Polynomial& b) {
    if (a.ambient_ != b.ambient_) throw Error("ambient mismatch between polynomial operands");
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial::require_same_ambient(a, b);
    Polynomial r = a;
    for (auto& [v, c] : b.terms_) r.add_term(v, c);
    return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial::require_same_ambient(a, b);
    Polynomial r = a;
    for (auto& [v, c] : b.terms_) r.add_term(v, -c);
    return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial::require_same_ambient(a, b);
    Polynomial r(a.ambient_);
    for (auto& [u, cu] : a.terms_)
        for (auto& [v, cv] : b.terms_)
            r.add_term(mi_add(u, v), cu * cv);
    return r;
}

Polynomial Polynomial::negated() const {
    Polynomial r(ambient_);
    for (auto& [v, c] : terms_) r.terms_.emplace(v, -c);
    return r;
}

Polynomial Polynomial::scaled(const Int& c) const {
    Polynomial r(ambient_);
    if (c == 0) return r;
    for (auto& [v, k] : terms_) r.terms_.emplace(v, k * c);
    return r;
}

Polynomial Polynomial::derivative(size_t symbol_index) const {
    if (symbol_index >= ambient_.size()) throw Error("derivative: symbol index out of range");
    Polynomial r(ambient_);
    for (auto& [v, c] : terms_) {
        if (v[symbol_index] == 0) continue;
        MultiIndex u = v;
        Int k = c * u[symbol_index];
        u[symbol_index] -= 1;
        r.add_term(u, k);
    }
    return r;
}

Polynomial Polynomial::reduced_mod(const Int& p) const {
    Polynomial r(ambient_);
    for (auto& [v, c] : terms_) {
        Int k = mod_nonneg(c, p);
        if (k != 0) r.terms_.emplace(v, std::move(k));
    }
    return r;
}

Polynomial Polynomial::truncated(std::uint64_t n) const {
    Polynomial r(ambient_);
    for (auto& [v, c] : terms_)
        if (total_degree(v) <= n) r.terms_.emplace(v, c);
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = Polynomial::constant(ambient_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1) r = r * base;
        if (e >>= 1) base = base * base;
    }
    return r;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial poly_sub(const Polynomial& a, const Polynomial& b) { return a - b; }
Polynomial poly_mul(const Polynomial& a, const Polynomial& b) { return a * b; }

// ---------------------------------------------------------------------------
// Text form

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Descending lex so the leading term comes first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [v, c] = *it;
        Int a = c;
        if (first) {
            if (a < 0) { out << "-"; a = -a; }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool has_monomial = total_degree(v) > 0;
        if (!has_monomial) {
            out << a.str();
        } else {
            bool printed = false;
            if (a != 1) { out << a.str(); printed = true; }
            for (size_t i = 0; i < v.size(); ++i) {
                if (v[i] == 0) continue;
                if (printed) out << "*";
                out << ambient_[i];
                if (v[i] > 1) out << "^" << v[i];
                printed = true;
            }
        }
    }
    return out.str();
}

namespace {

// Recursive-descent parser for polynomial expressions:
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := primary ['^' uint]
//   primary:= integer | symbol | '(' expr ')'
struct ExprParser {
    const std::string& s;
    size_t pos = 0;
    const std::vector<std::string>& ambient;

    ExprParser(const std::string& text, const std::vector<std::string>& amb)
        : s(text), ambient(amb) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    [[noreturn]] void fail(const std::string& what) {
        throw Error("parse error at offset " + std::to_string(pos) + ": " + what);
    }

    Polynomial expr() {
        skip_ws();
        bool neg = false;
        if (eat('-')) neg = true;
        else eat('+');
        Polynomial acc = term();
        if (neg) acc = acc.negated();
        while (true) {
            skip_ws();
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else break;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    Polynomial factor() {
        Polynomial base = primary();
        skip_ws();
        if (eat('^')) {
            skip_ws();
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == start) fail("expected exponent");
            unsigned long e = std::stoul(s.substr(start, pos - start));
            return base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Polynomial primary() {
        skip_ws();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            Polynomial inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return Polynomial::constant(ambient, Int(s.substr(start, pos - start)));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
                ++pos;
            return Polynomial::symbol(ambient, s.substr(start, pos - start));
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

Polynomial Polynomial::parse(const std::string& text, std::vector<std::string> ambient) {
    ExprParser p(text, ambient);
    Polynomial r = p.expr();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

} // namespace algser
