#include "algser/grammar.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace algser {

namespace {

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                  (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return !(s[0] >= '0' && s[0] <= '9');
}

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::vector<const Rule*>> rules_by_lhs(const Grammar& g) {
    std::vector<std::vector<const Rule*>> by(g.nonterminals().size());
    for (const Rule& r : g.rules()) by[static_cast<size_t>(r.lhs)].push_back(&r);
    return by;
}

} // namespace

Grammar::Grammar(std::vector<std::string> terminals, std::vector<std::string> nonterminals,
                 std::vector<Rule> rules, int start)
    : terminals_(std::move(terminals)), nonterminals_(std::move(nonterminals)), start_(start) {
    std::set<std::string> seen;
    for (const auto& t : terminals_) {
        if (!valid_name(t)) throw Error("grammar: invalid terminal name '" + t + "'");
        if (!seen.insert(t).second) throw Error("grammar: duplicate symbol name '" + t + "'");
    }
    for (const auto& n : nonterminals_) {
        if (!valid_name(n)) throw Error("grammar: invalid nonterminal name '" + n + "'");
        if (!seen.insert(n).second) throw Error("grammar: duplicate symbol name '" + n + "'");
    }
    if (nonterminals_.empty()) throw Error("grammar: no nonterminals");
    if (start_ < 0 || start_ >= static_cast<int>(nonterminals_.size()))
        throw Error("grammar: start symbol out of range");

    for (size_t idx = 0; idx < rules.size(); ++idx) {
        const Rule& r = rules[idx];
        std::string where = "grammar: rule #" + std::to_string(idx + 1);
        if (r.lhs < 0 || r.lhs >= static_cast<int>(nonterminals_.size()))
            throw Error(where + ": left-hand side out of range");
        where += " for " + nonterminals_[static_cast<size_t>(r.lhs)];
        if (r.weight < 1) throw Error(where + ": weight must be at least 1");
        if (r.rhs.empty()) throw Error(where + ": empty right-hand side");
        for (const Symbol& s : r.rhs) {
            int limit = s.terminal ? static_cast<int>(terminals_.size())
                                   : static_cast<int>(nonterminals_.size());
            if (s.index < 0 || s.index >= limit)
                throw Error(where + ": symbol index out of range");
        }
        if (r.rhs.size() == 1 && !r.rhs[0].terminal)
            throw Error(where + ": right-hand side is a single nonterminal");
    }

    rules_.reserve(rules.size());
    for (size_t lhs = 0; lhs < nonterminals_.size(); ++lhs)
        for (const Rule& r : rules)
            if (r.lhs == static_cast<int>(lhs)) rules_.push_back(r);
}

int Grammar::terminal_index(const std::string& name) const {
    auto it = std::find(terminals_.begin(), terminals_.end(), name);
    return it == terminals_.end() ? -1 : static_cast<int>(it - terminals_.begin());
}

int Grammar::nonterminal_index(const std::string& name) const {
    auto it = std::find(nonterminals_.begin(), nonterminals_.end(), name);
    return it == nonterminals_.end() ? -1 : static_cast<int>(it - nonterminals_.begin());
}

std::string Grammar::symbol_name(const Symbol& s) const {
    const auto& pool = s.terminal ? terminals_ : nonterminals_;
    if (s.index < 0 || s.index >= static_cast<int>(pool.size()))
        throw Error("grammar: symbol index out of range");
    return pool[static_cast<size_t>(s.index)];
}

std::string Grammar::to_string() const {
    std::ostringstream out;
    out << "terminals:";
    for (const auto& t : terminals_) out << ' ' << t;
    out << "\nnonterminals:";
    for (const auto& n : nonterminals_) out << ' ' << n;
    out << "\nstart: " << nonterminals_[static_cast<size_t>(start_)] << '\n';
    for (size_t lhs = 0; lhs < nonterminals_.size(); ++lhs) {
        bool first = true;
        for (const Rule& r : rules_) {
            if (r.lhs != static_cast<int>(lhs)) continue;
            if (first) out << nonterminals_[lhs] << " ->";
            else out << " |";
            first = false;
            for (const Symbol& s : r.rhs) out << ' ' << symbol_name(s);
            if (r.weight != 1) out << " [weight=" << r.weight << "]";
        }
        if (!first) out << '\n';
    }
    return out.str();
}

Grammar Grammar::parse(const std::string& text) {
    std::vector<std::string> terminals, nonterminals;
    bool saw_terminals = false, saw_nonterminals = false;
    std::string start_name;
    struct PendingRule {
        std::string lhs;
        std::vector<std::string> rhs;
        Int weight;
    };
    std::vector<PendingRule> pending;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string where = "grammar parse: line " + std::to_string(lineno);
        size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::string line = strip(raw);
        if (line.empty()) continue;

        auto header = [&](const char* key) -> std::optional<std::string> {
            std::string prefix = std::string(key) + ":";
            if (line.rfind(prefix, 0) != 0) return std::nullopt;
            return strip(line.substr(prefix.size()));
        };
        if (auto rest = header("terminals")) {
            if (saw_terminals) throw Error(where + ": repeated terminals line");
            saw_terminals = true;
            terminals = split_ws(*rest);
            continue;
        }
        if (auto rest = header("nonterminals")) {
            if (saw_nonterminals) throw Error(where + ": repeated nonterminals line");
            saw_nonterminals = true;
            nonterminals = split_ws(*rest);
            continue;
        }
        if (auto rest = header("start")) {
            if (!start_name.empty()) throw Error(where + ": repeated start line");
            start_name = *rest;
            if (start_name.empty()) throw Error(where + ": missing start symbol");
            continue;
        }

        size_t arrow = line.find("->");
        if (arrow == std::string::npos)
            throw Error(where + ": expected 'name -> ...' or a header line");
        std::string lhs = strip(line.substr(0, arrow));
        std::string rhs_text = line.substr(arrow + 2);
        if (lhs.empty()) throw Error(where + ": missing left-hand side");

        std::string alt;
        std::istringstream alts(rhs_text);
        std::vector<std::string> parts;
        while (std::getline(alts, alt, '|')) parts.push_back(alt);
        if (parts.empty()) throw Error(where + ": missing right-hand side");
        for (std::string& part : parts) {
            Int weight = 1;
            std::string body = strip(part);
            size_t open = body.rfind("[weight=");
            if (open != std::string::npos) {
                if (body.back() != ']') throw Error(where + ": malformed weight suffix");
                std::string digits = body.substr(open + 8, body.size() - open - 9);
                if (digits.empty() ||
                    digits.find_first_not_of("0123456789") != std::string::npos)
                    throw Error(where + ": malformed weight suffix");
                weight = Int(digits);
                body = strip(body.substr(0, open));
            }
            std::vector<std::string> symbols = split_ws(body);
            if (symbols.empty()) throw Error(where + ": empty alternative");
            pending.push_back({lhs, std::move(symbols), weight});
        }
    }

    if (!saw_terminals) throw Error("grammar parse: missing terminals line");
    if (!saw_nonterminals) throw Error("grammar parse: missing nonterminals line");
    if (nonterminals.empty()) throw Error("grammar parse: no nonterminals");

    auto index_of = [](const std::vector<std::string>& pool, const std::string& name) {
        auto it = std::find(pool.begin(), pool.end(), name);
        return it == pool.end() ? -1 : static_cast<int>(it - pool.begin());
    };

    int start = 0;
    if (!start_name.empty()) {
        start = index_of(nonterminals, start_name);
        if (start < 0)
            throw Error("grammar parse: start symbol '" + start_name +
                        "' is not a nonterminal");
    }

    std::vector<Rule> rules;
    for (const PendingRule& p : pending) {
        Rule r;
        r.lhs = index_of(nonterminals, p.lhs);
        if (r.lhs < 0)
            throw Error("grammar parse: rule for unknown nonterminal '" + p.lhs + "'");
        r.weight = p.weight;
        for (const std::string& name : p.rhs) {
            int t = index_of(terminals, name);
            if (t >= 0) {
                r.rhs.push_back({true, t});
                continue;
            }
            int n = index_of(nonterminals, name);
            if (n < 0)
                throw Error("grammar parse: unknown symbol '" + name + "' in a rule for " +
                            p.lhs);
            r.rhs.push_back({false, n});
        }
        rules.push_back(std::move(r));
    }
    return Grammar(std::move(terminals), std::move(nonterminals), std::move(rules), start);
}

std::vector<int> parse_word(const Grammar& g, const std::string& text) {
    std::string body = strip(text);
    std::vector<int> word;
    if (body.empty()) return word;
    if (body.find_first_of(" \t") != std::string::npos) {
        for (const std::string& name : split_ws(body)) {
            int t = g.terminal_index(name);
            if (t < 0) throw Error("word: unknown terminal '" + name + "'");
            word.push_back(t);
        }
        return word;
    }
    bool single_chars = true;
    for (const auto& t : g.terminals()) single_chars = single_chars && t.size() == 1;
    if (!single_chars) {
        int t = g.terminal_index(body);
        if (t < 0)
            throw Error("word: cannot split '" + body +
                        "'; separate multi-character terminals with spaces");
        return {t};
    }
    for (char c : body) {
        int t = g.terminal_index(std::string(1, c));
        if (t < 0) throw Error("word: unknown terminal '" + std::string(1, c) + "'");
        word.push_back(t);
    }
    return word;
}

std::string word_to_string(const Grammar& g, const std::vector<int>& word) {
    bool single_chars = true;
    for (const auto& t : g.terminals()) single_chars = single_chars && t.size() == 1;
    std::string out;
    for (size_t i = 0; i < word.size(); ++i) {
        if (word[i] < 0 || word[i] >= static_cast<int>(g.terminals().size()))
            throw Error("word: terminal index out of range");
        if (i && !single_chars) out += ' ';
        out += g.terminals()[static_cast<size_t>(word[i])];
    }
    return out;
}

namespace {

struct DerivationCounter {
    const Grammar& g;
    const std::vector<int>& word;
    std::vector<std::vector<const Rule*>> by_lhs;
    std::map<std::pair<std::vector<Symbol>, size_t>, Int> memo;

    DerivationCounter(const Grammar& gr, const std::vector<int>& w)
        : g(gr), word(w), by_lhs(rules_by_lhs(gr)) {}

    Int count(const std::vector<Symbol>& form, size_t pos) {
        if (form.size() > word.size() - pos) return 0;
        if (form.empty()) return pos == word.size() ? Int(1) : Int(0);
        auto key = std::make_pair(form, pos);
        auto hit = memo.find(key);
        if (hit != memo.end()) return hit->second;

        Int total = 0;
        const Symbol& head = form.front();
        if (head.terminal) {
            if (pos < word.size() && word[pos] == head.index) {
                std::vector<Symbol> rest(form.begin() + 1, form.end());
                total = count(rest, pos + 1);
            }
        } else {
            for (const Rule* r : by_lhs[static_cast<size_t>(head.index)]) {
                std::vector<Symbol> next;
                next.reserve(r->rhs.size() + form.size() - 1);
                next.insert(next.end(), r->rhs.begin(), r->rhs.end());
                next.insert(next.end(), form.begin() + 1, form.end());
                total += r->weight * count(next, pos);
            }
        }
        memo.emplace(std::move(key), total);
        return total;
    }
};

} // namespace

Int count_derivations(const Grammar& g, int nonterminal, const std::vector<int>& word) {
    if (nonterminal < 0 || nonterminal >= static_cast<int>(g.nonterminals().size()))
        throw Error("count_derivations: nonterminal out of range");
    for (int t : word)
        if (t < 0 || t >= static_cast<int>(g.terminals().size()))
            throw Error("count_derivations: terminal index out of range");
    DerivationCounter dc(g, word);
    return dc.count({Symbol{false, nonterminal}}, 0);
}

namespace {

struct CensusCounter {
    const Grammar& g;
    std::vector<std::vector<const Rule*>> by_lhs;
    std::map<std::pair<int, MultiIndex>, Int> memo;

    explicit CensusCounter(const Grammar& gr) : g(gr), by_lhs(rules_by_lhs(gr)) {}

    Int of(int nt, const MultiIndex& v) {
        if (total_degree(v) == 0) return 0;
        auto key = std::make_pair(nt, v);
        auto hit = memo.find(key);
        if (hit != memo.end()) return hit->second;
        Int total = 0;
        for (const Rule* r : by_lhs[static_cast<size_t>(nt)])
            total += r->weight * splits(r->rhs, 0, v);
        memo.emplace(std::move(key), total);
        return total;
    }

    // Ways to split v across rhs[i..]; every remaining symbol must take at
    // least one letter, so nonterminal subproblems are strictly smaller.
    Int splits(const std::vector<Symbol>& rhs, size_t i, MultiIndex v) {
        size_t left = rhs.size() - i;
        if (left == 0) return total_degree(v) == 0 ? Int(1) : Int(0);
        if (total_degree(v) < left) return 0;
        const Symbol& s = rhs[i];
        if (s.terminal) {
            if (v[static_cast<size_t>(s.index)] == 0) return 0;
            v[static_cast<size_t>(s.index)] -= 1;
            return splits(rhs, i + 1, std::move(v));
        }
        Int total = 0;
        MultiIndex part(v.size(), 0);
        enumerate_parts(rhs, i, v, part, 0, total);
        return total;
    }

    void enumerate_parts(const std::vector<Symbol>& rhs, size_t i, const MultiIndex& v,
                         MultiIndex& part, size_t dim, Int& total) {
        if (dim == v.size()) {
            std::uint64_t taken = total_degree(part);
            if (taken == 0) return;
            if (total_degree(v) - taken < rhs.size() - i - 1) return;
            Int inner = of(rhs[i].index, part);
            if (inner == 0) return;
            MultiIndex rest(v.size());
            for (size_t d = 0; d < v.size(); ++d) rest[d] = v[d] - part[d];
            total += inner * splits(rhs, i + 1, std::move(rest));
            return;
        }
        for (std::uint32_t e = 0; e <= v[dim]; ++e) {
            part[dim] = e;
            enumerate_parts(rhs, i, v, part, dim + 1, total);
        }
        part[dim] = 0;
    }
};

} // namespace

Int census_count(const Grammar& g, int nonterminal, const MultiIndex& v) {
    if (nonterminal < 0 || nonterminal >= static_cast<int>(g.nonterminals().size()))
        throw Error("census_count: nonterminal out of range");
    if (v.size() != g.terminals().size())
        throw Error("census_count: vector arity does not match the terminal count");
    CensusCounter cc(g);
    return cc.of(nonterminal, v);
}

PolySystem census_system(const Grammar& g) {
    size_t k = g.terminals().size(), l = g.nonterminals().size();
    std::vector<Polynomial::TermMap> rhs(l);
    for (const Rule& r : g.rules()) {
        MultiIndex exps(k + l, 0);
        for (const Symbol& s : r.rhs) {
            size_t at = s.terminal ? static_cast<size_t>(s.index)
                                   : k + static_cast<size_t>(s.index);
            exps[at] += 1;
        }
        rhs[static_cast<size_t>(r.lhs)][exps] += r.weight;
    }

    std::vector<std::string> ambient = g.terminals();
    ambient.insert(ambient.end(), g.nonterminals().begin(), g.nonterminals().end());
    std::vector<Polynomial> eqs;
    eqs.reserve(l);
    for (size_t i = 0; i < l; ++i)
        eqs.push_back(Polynomial::from_terms(ambient, std::move(rhs[i])));
    return PolySystem(g.terminals(), g.nonterminals(), std::move(eqs));
}

void validate_dfa(const DFA& a) {
    if (a.states <= 0) throw Error("dfa: needs at least one state");
    if (a.start < 0 || a.start >= a.states) throw Error("dfa: start state out of range");
    if (static_cast<int>(a.accepting.size()) != a.states)
        throw Error("dfa: accepting flags do not match the state count");
    if (static_cast<int>(a.delta.size()) != a.states)
        throw Error("dfa: transition table does not match the state count");
    std::set<std::string> seen;
    for (const auto& s : a.alphabet)
        if (!seen.insert(s).second) throw Error("dfa: duplicate alphabet symbol '" + s + "'");
    for (const auto& row : a.delta) {
        if (row.size() != a.alphabet.size())
            throw Error("dfa: transition row does not match the alphabet");
        for (int q : row)
            if (q < 0 || q >= a.states) throw Error("dfa: transition target out of range");
    }
}

DFA letter_shape_dfa(const std::vector<std::string>& alphabet,
                     const std::vector<std::string>& order) {
    std::set<std::string> seen;
    std::vector<int> block_of(alphabet.size(), -1);
    for (size_t j = 0; j < order.size(); ++j) {
        if (!seen.insert(order[j]).second)
            throw Error("letter shape: repeated symbol '" + order[j] + "'");
        auto it = std::find(alphabet.begin(), alphabet.end(), order[j]);
        if (it == alphabet.end())
            throw Error("letter shape: symbol '" + order[j] + "' is not in the alphabet");
        block_of[static_cast<size_t>(it - alphabet.begin())] = static_cast<int>(j);
    }
    int k = static_cast<int>(order.size());
    DFA a;
    a.alphabet = alphabet;
    a.states = k + 1; // state i = inside block i; state k is the sink
    a.start = 0;
    a.accepting.assign(static_cast<size_t>(a.states), true);
    a.accepting[static_cast<size_t>(k)] = false;
    a.delta.assign(static_cast<size_t>(a.states), std::vector<int>(alphabet.size(), k));
    for (int block = 0; block < k; ++block)
        for (size_t t = 0; t < alphabet.size(); ++t)
            if (block_of[t] >= block) a.delta[static_cast<size_t>(block)][t] = block_of[t];
    validate_dfa(a);
    return a;
}

DFA complement_dfa(const DFA& a) {
    validate_dfa(a);
    DFA b = a;
    for (size_t i = 0; i < b.accepting.size(); ++i) b.accepting[i] = !b.accepting[i];
    return b;
}

namespace {

std::string fresh_name(std::set<std::string>& used, std::string base) {
    while (used.count(base)) base += "_";
    used.insert(base);
    return base;
}

} // namespace

Grammar dfa_product(const Grammar& g, const DFA& a) {
    validate_dfa(a);
    if (a.alphabet.size() != g.terminals().size())
        throw Error("dfa product: automaton alphabet does not match the grammar");
    std::vector<size_t> letter(g.terminals().size());
    for (size_t t = 0; t < g.terminals().size(); ++t) {
        auto it = std::find(a.alphabet.begin(), a.alphabet.end(), g.terminals()[t]);
        if (it == a.alphabet.end())
            throw Error("dfa product: automaton lacks terminal '" + g.terminals()[t] + "'");
        letter[t] = static_cast<size_t>(it - a.alphabet.begin());
    }

    size_t l = g.nonterminals().size();
    size_t m = static_cast<size_t>(a.states);
    std::set<std::string> used(g.terminals().begin(), g.terminals().end());

    // Nonterminal 0 is the aggregate start; triple (N, p, q) sits at
    // 1 + (N*m + p)*m + q.
    std::vector<std::string> names;
    names.reserve(1 + l * m * m);
    names.push_back(fresh_name(
        used, g.nonterminals()[static_cast<size_t>(g.start())] + "_any"));
    for (size_t n = 0; n < l; ++n)
        for (size_t p = 0; p < m; ++p)
            for (size_t q = 0; q < m; ++q)
                names.push_back(fresh_name(used, g.nonterminals()[n] + "_" +
                                                     std::to_string(p) + "_" +
                                                     std::to_string(q)));
    auto triple = [&](size_t n, size_t p, size_t q) {
        return static_cast<int>(1 + (n * m + p) * m + q);
    };

    std::vector<Rule> rules;
    for (const Rule& r : g.rules()) {
        size_t holes = 0;
        for (const Symbol& s : r.rhs)
            if (!s.terminal) ++holes;
        for (size_t p = 0; p < m; ++p) {
            std::vector<size_t> choice(holes, 0);
            while (true) {
                Rule nr;
                nr.weight = r.weight;
                size_t state = p, hole = 0;
                for (const Symbol& s : r.rhs) {
                    if (s.terminal) {
                        nr.rhs.push_back(s);
                        state = static_cast<size_t>(
                            a.delta[state][letter[static_cast<size_t>(s.index)]]);
                    } else {
                        size_t q = choice[hole++];
                        nr.rhs.push_back(
                            {false, triple(static_cast<size_t>(s.index), state, q)});
                        state = q;
                    }
                }
                nr.lhs = triple(static_cast<size_t>(r.lhs), p, state);
                rules.push_back(std::move(nr));

                size_t d = holes;
                while (d > 0 && choice[d - 1] + 1 == m) choice[--d] = 0;
                if (d == 0) break;
                ++choice[d - 1];
            }
        }
    }

    for (size_t qf = 0; qf < m; ++qf) {
        if (!a.accepting[qf]) continue;
        int src = triple(static_cast<size_t>(g.start()), static_cast<size_t>(a.start), qf);
        size_t have = rules.size();
        for (size_t i = 0; i < have; ++i) {
            if (rules[i].lhs != src) continue;
            Rule copy = rules[i];
            copy.lhs = 0;
            rules.push_back(std::move(copy));
        }
    }

    Grammar product(g.terminals(), std::move(names), std::move(rules), 0);
    return prune_useless(product);
}

Grammar prune_useless(const Grammar& g) {
    size_t l = g.nonterminals().size();
    std::vector<bool> productive(l, false);
    for (bool changed = true; changed;) {
        changed = false;
        for (const Rule& r : g.rules()) {
            if (productive[static_cast<size_t>(r.lhs)]) continue;
            bool all = true;
            for (const Symbol& s : r.rhs)
                all = all && (s.terminal || productive[static_cast<size_t>(s.index)]);
            if (all) {
                productive[static_cast<size_t>(r.lhs)] = true;
                changed = true;
            }
        }
    }

    std::vector<bool> reachable(l, false);
    reachable[static_cast<size_t>(g.start())] = true;
    for (bool changed = true; changed;) {
        changed = false;
        for (const Rule& r : g.rules()) {
            if (!reachable[static_cast<size_t>(r.lhs)]) continue;
            for (const Symbol& s : r.rhs) {
                if (s.terminal || reachable[static_cast<size_t>(s.index)]) continue;
                reachable[static_cast<size_t>(s.index)] = true;
                changed = true;
            }
        }
    }

    std::vector<int> remap(l, -1);
    std::vector<std::string> names;
    for (size_t i = 0; i < l; ++i) {
        bool keep = (productive[i] && reachable[i]) || static_cast<int>(i) == g.start();
        if (!keep) continue;
        remap[i] = static_cast<int>(names.size());
        names.push_back(g.nonterminals()[i]);
    }

    std::vector<Rule> rules;
    for (const Rule& r : g.rules()) {
        if (remap[static_cast<size_t>(r.lhs)] < 0) continue;
        bool ok = true;
        Rule nr;
        nr.lhs = remap[static_cast<size_t>(r.lhs)];
        nr.weight = r.weight;
        for (const Symbol& s : r.rhs) {
            if (s.terminal) {
                nr.rhs.push_back(s);
            } else if (remap[static_cast<size_t>(s.index)] >= 0 &&
                       productive[static_cast<size_t>(s.index)] &&
                       reachable[static_cast<size_t>(s.index)]) {
                nr.rhs.push_back({false, remap[static_cast<size_t>(s.index)]});
            } else {
                ok = false;
                break;
            }
        }
        if (ok) rules.push_back(std::move(nr));
    }
    return Grammar(g.terminals(), std::move(names), std::move(rules),
                   remap[static_cast<size_t>(g.start())]);
}

namespace {

void enumerate_words(MultiIndex& left, std::vector<int>& prefix,
                     std::vector<std::vector<int>>& out) {
    if (total_degree(left) == 0) {
        out.push_back(prefix);
        return;
    }
    for (size_t t = 0; t < left.size(); ++t) {
        if (left[t] == 0) continue;
        left[t] -= 1;
        prefix.push_back(static_cast<int>(t));
        enumerate_words(left, prefix, out);
        prefix.pop_back();
        left[t] += 1;
    }
}

} // namespace

std::vector<std::vector<int>> words_with_parikh(const MultiIndex& v) {
    MultiIndex left = v;
    std::vector<int> prefix;
    std::vector<std::vector<int>> out;
    enumerate_words(left, prefix, out);
    return out;
}

} // namespace algser
