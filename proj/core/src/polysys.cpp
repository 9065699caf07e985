#include "algser/polysys.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace algser {

namespace {

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char ch : s)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
    return true;
}

std::vector<std::string> split_names(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

} // namespace

PolySystem::PolySystem(std::vector<std::string> indets, std::vector<std::string> unknowns,
                       std::vector<Polynomial> rhs)
    : indets_(std::move(indets)), unknowns_(std::move(unknowns)), rhs_(std::move(rhs)) {
    if (unknowns_.empty()) throw Error("system: no unknowns");
    if (rhs_.size() != unknowns_.size())
        throw Error("system: equation count does not match unknown count");
    ambient_ = indets_;
    ambient_.insert(ambient_.end(), unknowns_.begin(), unknowns_.end());
    std::set<std::string> seen;
    for (const auto& name : ambient_) {
        if (!valid_name(name)) throw Error("system: bad symbol name '" + name + "'");
        if (!seen.insert(name).second) throw Error("system: duplicate symbol '" + name + "'");
    }
    for (const auto& P : rhs_)
        if (P.ambient() != ambient_)
            throw Error("system: right-hand side ambient mismatch");
}

std::uint64_t PolySystem::degree() const {
    std::uint64_t d = 1;
    for (const auto& P : rhs_) d = std::max(d, P.degree());
    return d;
}

std::uint64_t PolySystem::unknown_degree() const {
    std::uint64_t d = 0;
    for (const auto& P : rhs_) d = std::max(d, P.degree_over(indets_.size(), ambient_.size()));
    return d;
}

size_t PolySystem::term_count() const {
    size_t n = 0;
    for (const auto& P : rhs_) n += P.term_count();
    return n;
}

std::string PolySystem::to_string() const {
    std::string out = "vars:";
    for (const auto& v : unknowns_) out += " " + v;
    out += "\nindets:";
    for (const auto& x : indets_) out += " " + x;
    out += "\n";
    for (size_t i = 0; i < unknowns_.size(); ++i)
        out += unknowns_[i] + " = " + rhs_[i].to_string() + "\n";
    return out;
}

PolySystem PolySystem::parse(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> content;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        size_t b = line.find_last_not_of(" \t\r");
        content.push_back(line.substr(a, b - a + 1));
    }
    if (content.size() < 2 || content[0].rfind("vars:", 0) != 0 ||
        content[1].rfind("indets:", 0) != 0)
        throw Error("system parse: expected 'vars:' then 'indets:' header lines");
    std::vector<std::string> unknowns = split_names(content[0].substr(5));
    std::vector<std::string> indets = split_names(content[1].substr(7));
    if (unknowns.empty()) throw Error("system parse: no unknowns");
    if (content.size() != 2 + unknowns.size())
        throw Error("system parse: expected one equation per unknown");

    std::vector<std::string> ambient = indets;
    ambient.insert(ambient.end(), unknowns.begin(), unknowns.end());
    std::vector<Polynomial> rhs(unknowns.size(), Polynomial(ambient));
    std::vector<bool> defined(unknowns.size(), false);
    for (size_t r = 2; r < content.size(); ++r) {
        size_t eq = content[r].find('=');
        if (eq == std::string::npos) throw Error("system parse: equation line lacks '='");
        std::string lhs = content[r].substr(0, eq);
        size_t b = lhs.find_last_not_of(" \t");
        lhs = b == std::string::npos ? "" : lhs.substr(0, b + 1);
        auto it = std::find(unknowns.begin(), unknowns.end(), lhs);
        if (it == unknowns.end())
            throw Error("system parse: left-hand side '" + lhs + "' is not an unknown");
        size_t i = static_cast<size_t>(it - unknowns.begin());
        if (defined[i]) throw Error("system parse: duplicate equation for '" + lhs + "'");
        defined[i] = true;
        rhs[i] = Polynomial::parse(content[r].substr(eq + 1), ambient);
    }
    return PolySystem(std::move(indets), std::move(unknowns), std::move(rhs));
}

std::string PropernessReport::to_string(const PolySystem& s) const {
    if (proper) return "proper";
    std::string out = "not proper:";
    for (const auto& v : violations) {
        out += "\n  equation " + s.unknowns()[v.equation] + ", unknown monomial ";
        std::string mono;
        for (size_t j = 0; j < v.unknown_monomial.size(); ++j)
            for (std::uint32_t e = 0; e < v.unknown_monomial[j]; ++e)
                mono += (mono.empty() ? "" : "*") + s.unknowns()[j];
        out += mono.empty() ? "1" : mono;
        out += " has a coefficient with nonzero constant term";
    }
    return out;
}

PropernessReport validate_proper(const PolySystem& s) {
    const size_t k = s.indet_count();
    const size_t l = s.unknown_count();
    PropernessReport rep;
    for (size_t i = 0; i < l; ++i) {
        // Coefficient in Z[X] of each low unknown-monomial, keyed by y-part.
        std::set<MultiIndex, LexLess> flagged;
        for (const auto& [v, c] : s.rhs()[i].terms()) {
            std::uint64_t ydeg = 0, xdeg = 0;
            for (size_t t = 0; t < k; ++t) xdeg += v[t];
            for (size_t t = k; t < v.size(); ++t) ydeg += v[t];
            if (ydeg <= 1 && xdeg == 0) {
                MultiIndex ypart(v.begin() + static_cast<long>(k), v.end());
                if (flagged.insert(ypart).second)
                    rep.violations.push_back({i, std::move(ypart)});
            }
        }
    }
    rep.proper = rep.violations.empty();
    return rep;
}

void require_proper(const PolySystem& s) {
    PropernessReport rep = validate_proper(s);
    if (!rep.proper) throw Error("system is " + rep.to_string(s));
}

std::vector<TruncatedSeries> eval_rhs_all(const PolySystem& s,
                                          const std::vector<TruncatedSeries>& values,
                                          std::uint64_t n, const Int* p) {
    const size_t k = s.indet_count();
    const size_t l = s.unknown_count();
    if (values.size() != l) throw Error("eval_rhs_all: wrong number of unknown values");
    for (const auto& v : values) {
        if (v.ambient() != s.indets()) throw Error("eval_rhs_all: value ambient mismatch");
        if (v.order_bound() < n) throw Error("eval_rhs_all: value precision below target");
    }

    // Split every equation into sum over unknown-monomials beta of
    // C_beta(x) * y^beta, so each group costs one truncated product.
    using Groups = std::map<MultiIndex, Polynomial::TermMap, LexLess>;
    std::vector<Groups> groups(l);
    std::vector<std::uint32_t> max_pow(l, 0);
    for (size_t i = 0; i < l; ++i) {
        for (const auto& [v, c] : s.rhs()[i].terms()) {
            MultiIndex ypart(v.begin() + static_cast<long>(k), v.end());
            MultiIndex xpart(v.begin(), v.begin() + static_cast<long>(k));
            for (size_t j = 0; j < l; ++j) max_pow[j] = std::max(max_pow[j], ypart[j]);
            groups[i][std::move(ypart)][std::move(xpart)] = c;
        }
    }

    // Power table y_j^e for every exponent that occurs.
    std::vector<std::vector<TruncatedSeries>> pow(l);
    for (size_t j = 0; j < l; ++j) {
        pow[j].reserve(max_pow[j] + 1);
        pow[j].push_back(TruncatedSeries(Polynomial::constant(s.indets(), 1), n));
        if (max_pow[j] >= 1) pow[j].push_back(values[j].truncated(n));
        for (std::uint32_t e = 2; e <= max_pow[j]; ++e)
            pow[j].push_back(series_trunc_mul(pow[j][e - 1], pow[j][1], n, p));
    }

    std::vector<TruncatedSeries> out;
    out.reserve(l);
    for (size_t i = 0; i < l; ++i) {
        TruncatedSeries acc = TruncatedSeries::zero(s.indets(), n);
        for (auto& [beta, terms] : groups[i]) {
            TruncatedSeries prod(Polynomial::from_terms(s.indets(), std::move(terms)), n);
            bool first = true;
            TruncatedSeries mono = pow[0].front();
            for (size_t j = 0; j < l; ++j) {
                if (beta[j] == 0) continue;
                mono = first ? pow[j][beta[j]] : series_trunc_mul(mono, pow[j][beta[j]], n, p);
                first = false;
            }
            if (!first) prod = series_trunc_mul(prod, mono, n, p);
            acc = series_add(acc, prod);
        }
        if (p) acc = acc.reduced_mod(*p);
        out.push_back(std::move(acc));
    }
    return out;
}

std::vector<TruncatedSeries> kleene_solve(const PolySystem& s, std::uint64_t n, const Int* p) {
    require_proper(s);
    std::vector<TruncatedSeries> y(s.unknown_count(), TruncatedSeries::zero(s.indets(), n));
    for (std::uint64_t round = 0; round <= n; ++round) y = eval_rhs_all(s, y, n, p);
    return y;
}

std::vector<std::vector<Polynomial>> derivative_matrix(const PolySystem& s) {
    const size_t k = s.indet_count();
    const size_t l = s.unknown_count();
    std::vector<std::vector<Polynomial>> out(l);
    for (size_t i = 0; i < l; ++i) {
        for (size_t j = 0; j < l; ++j) {
            Polynomial e = s.rhs()[i].derivative(k + j).negated();
            if (i == j) e = e + Polynomial::constant(s.ambient(), 1);
            out[i].push_back(std::move(e));
        }
    }
    return out;
}

} // namespace algser
