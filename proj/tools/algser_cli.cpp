#include "algser/bounded.hpp"
#include "algser/primes.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw algser::Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string int_str(const algser::Int& v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        size_t a = tok.find_first_not_of(" \t");
        size_t b = tok.find_last_not_of(" \t");
        parts.push_back(a == std::string::npos ? "" : tok.substr(a, b - a + 1));
    }
    return parts;
}

algser::MultiIndex parse_exponents(const std::string& text, const char* flag) {
    algser::MultiIndex v;
    for (const std::string& tok : split_csv(text)) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw algser::Error(std::string(flag) + ": expected comma-separated exponents");
        unsigned long e = std::stoul(tok);
        if (e > 0xffffffffUL)
            throw algser::Error(std::string(flag) + ": exponent out of range");
        v.push_back(static_cast<std::uint32_t>(e));
    }
    if (v.empty()) throw algser::Error(std::string(flag) + ": empty exponent list");
    return v;
}

struct Output {
    bool as_json = true;
    void emit(const json& rec) const {
        if (as_json) {
            std::cout << rec.dump() << "\n";
            return;
        }
        std::ostringstream line;
        line << rec.value("problem", "result");
        for (const auto& [key, val] : rec.items()) {
            if (key == "problem") continue;
            line << ' ' << key << '=';
            if (val.is_string()) line << val.get<std::string>();
            else line << val.dump();
        }
        std::cout << line.str() << "\n";
    }
};

algser::BoundConfig resolve_bounds(const std::string& bound, unsigned formula_c,
                                   bool formula_given) {
    if (!bound.empty()) {
        if (bound.find_first_not_of("0123456789") != std::string::npos)
            throw algser::Error("--bound: expected a decimal degree");
        return algser::BoundConfig::explicit_bound(algser::Int(bound));
    }
    if (formula_given) return algser::BoundConfig::formula(formula_c);
    if (const char* env = std::getenv("ALGSER_BOUND")) {
        std::string s = env;
        if (!s.empty()) {
            if (s.rfind("formula", 0) == 0) {
                unsigned c = 1;
                size_t colon = s.find(':');
                if (colon != std::string::npos) {
                    std::string digits = s.substr(colon + 1);
                    if (digits.empty() ||
                        digits.find_first_not_of("0123456789") != std::string::npos)
                        throw algser::Error("ALGSER_BOUND: malformed formula constant");
                    c = static_cast<unsigned>(std::stoul(digits));
                }
                return algser::BoundConfig::formula(c);
            }
            if (s.find_first_not_of("0123456789") != std::string::npos)
                throw algser::Error(
                    "ALGSER_BOUND: expected a decimal degree or formula[:c]");
            return algser::BoundConfig::explicit_bound(algser::Int(s));
        }
    }
    return algser::BoundConfig::formula(1);
}

int nonterminal_or_throw(const algser::Grammar& g, const std::string& name) {
    int n = g.nonterminal_index(name);
    if (n < 0) throw algser::Error("unknown nonterminal '" + name + "'");
    return n;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact computation with algebraic power series and weighted grammars"};
    app.require_subcommand(1);

    std::string format = "json";
    std::uint64_t seed = 20240829ull;
    app.add_option("--format", format, "output format for result records")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--seed", seed,
                   "seed for the Monte-Carlo components; the decision subcommands "
                   "are exact and do not consume it");

    auto* coeff = app.add_subcommand("coeff", "residue of one solution coefficient");
    std::string co_system, co_v, co_engine = "hensel";
    std::uint64_t co_p = 0;
    coeff->add_option("--system", co_system, "proper system file")->required();
    coeff->add_option("--v", co_v, "target exponents, comma separated")->required();
    coeff->add_option("--p", co_p, "modulus, at least 2")->required();
    coeff->add_option("--engine", co_engine, "hensel or kleene")
        ->check(CLI::IsMember({"hensel", "kleene"}));

    auto* zero = app.add_subcommand("zero", "is the first solution component zero");
    std::string z_system, z_bound;
    unsigned z_formula_c = 1;
    zero->add_option("--system", z_system, "proper system file")->required();
    zero->add_option("--bound", z_bound, "explicit truncation degree");
    auto* z_fc = zero->add_option("--formula-c", z_formula_c,
                                  "use the heuristic bound d^(c*l^2) with this c");

    auto* finite = app.add_subcommand("finite", "is the first solution component a polynomial");
    std::string f_system, f_bound, f_expect;
    unsigned f_formula_c = 1;
    finite->add_option("--system", f_system, "proper system file")->required();
    finite->add_option("--bound", f_bound, "explicit truncation degree");
    auto* f_fc = finite->add_option("--formula-c", f_formula_c,
                                    "use the heuristic bound d^(c*l^2) with this c");
    finite->add_option("--expect", f_expect, "exit 0 only on this verdict")
        ->check(CLI::IsMember({"finite", "infinite"}));

    auto* equiv = app.add_subcommand("equiv", "multiplicity equivalence of two nonterminals");
    std::string e_grammar, e_n1, e_n2, e_order, e_bounded, e_bound;
    unsigned e_formula_c = 1;
    equiv->add_option("--grammar", e_grammar, "grammar file")->required();
    equiv->add_option("--n1", e_n1, "first nonterminal")->required();
    equiv->add_option("--n2", e_n2, "second nonterminal")->required();
    equiv->add_option("--order", e_order,
                      "letter order for the letter-bounded decision, comma separated");
    equiv->add_option("--bounded", e_bounded,
                      "restriction words w1,w2,...: decide over w1* w2* ...");
    equiv->add_option("--bound", e_bound, "explicit truncation degree");
    auto* e_fc = equiv->add_option("--formula-c", e_formula_c,
                                   "use the heuristic bound d^(c*l^2) with this c");

    auto* compile = app.add_subcommand(
        "compile", "emit the stage-n truncation circuit in the text format");
    std::string cp_system, cp_component, cp_out;
    int cp_stage = 0;
    compile->add_option("--system", cp_system, "proper system file")->required();
    compile->add_option("--stage", cp_stage, "iteration stage, at least 0")->required();
    compile->add_option("--component", cp_component,
                        "solution component, name or index; first unknown by default");
    compile->add_option("--out", cp_out,
                        "output file; without it the circuit text goes to stdout");

    auto* oracle = app.add_subcommand("oracle", "reference derivation counting");
    std::string o_grammar, o_n, o_word, o_parikh;
    bool o_word_set = false;
    oracle->add_option("--grammar", o_grammar, "grammar file")->required();
    oracle->add_option("--n", o_n, "nonterminal")->required();
    auto* o_w = oracle->add_option("--word", o_word, "word to count derivations of");
    oracle->add_option("--parikh", o_parikh,
                       "letter counts, comma separated: count all words with them");

    auto* check = app.add_subcommand("check", "validate a system or grammar file");
    std::string ck_system, ck_grammar;
    check->add_option("--system", ck_system, "system file to validate");
    check->add_option("--grammar", ck_grammar, "grammar file to validate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    o_word_set = o_w->count() > 0;

    Output out{format == "json"};
    try {
        if (*coeff) {
            algser::PolySystem s = algser::PolySystem::parse(slurp(co_system));
            algser::require_proper(s);
            algser::CoeffQuery q{parse_exponents(co_v, "--v"), co_p};
            algser::Engine engine = co_engine == "kleene" ? algser::Engine::kleene
                                                          : algser::Engine::hensel;
            algser::CoeffResult r = algser::coeff_alg(s, q, engine);
            out.emit({{"problem", "coeff"},
                      {"system", co_system},
                      {"v", q.target},
                      {"p", co_p},
                      {"residue", r.residue.convert_to<std::uint64_t>()},
                      {"engine", co_engine},
                      {"stage", r.stage},
                      {"prime", r.modulus_is_prime}});
            return 0;
        }
        if (*zero) {
            algser::PolySystem s = algser::PolySystem::parse(slurp(z_system));
            algser::require_proper(s);
            algser::ZeroResult r =
                algser::eq_alg(s, resolve_bounds(z_bound, z_formula_c, z_fc->count() > 0));
            json rec{{"problem", "zero"},        {"system", z_system},
                     {"zero", r.zero},           {"bound", int_str(r.bound)},
                     {"conditional", r.conditional}, {"note", r.note}};
            if (r.witness) rec["witness"] = *r.witness;
            out.emit(rec);
            return r.zero ? 0 : 1;
        }
        if (*finite) {
            algser::PolySystem s = algser::PolySystem::parse(slurp(f_system));
            algser::require_proper(s);
            algser::FiniteResult r =
                algser::fin_alg(s, resolve_bounds(f_bound, f_formula_c, f_fc->count() > 0));
            json rec{{"problem", "finite"},
                     {"system", f_system},
                     {"finite", r.finite},
                     {"measured_degree", r.measured_degree},
                     {"bound", int_str(r.bound)},
                     {"window_top", int_str(r.window_top)},
                     {"conditional", r.conditional},
                     {"note", r.note}};
            if (r.witness) rec["witness"] = *r.witness;
            out.emit(rec);
            if (!f_expect.empty())
                return f_expect == (r.finite ? "finite" : "infinite") ? 0 : 1;
            return r.finite ? 0 : 1;
        }
        if (*equiv) {
            algser::Grammar g = algser::Grammar::parse(slurp(e_grammar));
            int n1 = nonterminal_or_throw(g, e_n1);
            int n2 = nonterminal_or_throw(g, e_n2);
            algser::BoundConfig bounds =
                resolve_bounds(e_bound, e_formula_c, e_fc->count() > 0);
            algser::EquivalenceVerdict v = [&] {
                if (!e_bounded.empty()) {
                    std::vector<std::vector<int>> words;
                    for (const std::string& w : split_csv(e_bounded))
                        words.push_back(algser::parse_word(g, w));
                    return algser::multiplicity_equiv_bounded(g, n1, n2, words, bounds);
                }
                if (!e_order.empty())
                    return algser::multiplicity_equiv_letter_bounded(
                        g, n1, n2, split_csv(e_order), bounds);
                return algser::census_equiv(g, n1, n2, bounds);
            }();
            json rec{{"problem", "equiv"},
                     {"grammar", e_grammar},
                     {"n1", e_n1},
                     {"n2", e_n2},
                     {"equivalent", v.equivalent},
                     {"conditional", v.conditional},
                     {"bound", int_str(v.bound)},
                     {"stages", v.stages},
                     {"note", v.note}};
            if (v.witness_counts) rec["witness_counts"] = *v.witness_counts;
            if (v.witness_word) rec["witness_word"] = *v.witness_word;
            out.emit(rec);
            return v.equivalent ? 0 : 1;
        }
        if (*compile) {
            algser::PolySystem s = algser::PolySystem::parse(slurp(cp_system));
            algser::require_proper(s);
            if (cp_stage < 0) throw algser::Error("--stage: must be at least 0");
            int component = 0;
            if (!cp_component.empty()) {
                if (cp_component.find_first_not_of("0123456789") == std::string::npos) {
                    component = std::stoi(cp_component);
                } else {
                    auto it = std::find(s.unknowns().begin(), s.unknowns().end(),
                                        cp_component);
                    if (it == s.unknowns().end())
                        throw algser::Error("--component: unknown '" + cp_component + "'");
                    component = static_cast<int>(it - s.unknowns().begin());
                }
            }
            algser::Circuit c = algser::polynomial_approximant(s, cp_stage, component);
            std::string text = c.to_string();
            if (cp_out.empty()) {
                std::cout << text;
                std::cerr << "gates: " << c.size() << "\n";
                return 0;
            }
            std::ofstream f(cp_out);
            if (!f) throw algser::Error("cannot write '" + cp_out + "'");
            f << text;
            out.emit({{"problem", "compile"},
                      {"system", cp_system},
                      {"stage", cp_stage},
                      {"component", s.unknowns()[static_cast<size_t>(component)]},
                      {"gates", c.size()},
                      {"out", cp_out}});
            return 0;
        }
        if (*oracle) {
            algser::Grammar g = algser::Grammar::parse(slurp(o_grammar));
            int n = nonterminal_or_throw(g, o_n);
            if (o_word_set == !o_parikh.empty())
                throw algser::Error("oracle: give exactly one of --word and --parikh");
            if (o_word_set) {
                algser::Int count =
                    algser::count_derivations(g, n, algser::parse_word(g, o_word));
                out.emit({{"problem", "oracle"},
                          {"grammar", o_grammar},
                          {"n", o_n},
                          {"word", o_word},
                          {"count", int_str(count)}});
            } else {
                algser::MultiIndex v = parse_exponents(o_parikh, "--parikh");
                algser::Int count = algser::census_count(g, n, v);
                out.emit({{"problem", "oracle"},
                          {"grammar", o_grammar},
                          {"n", o_n},
                          {"parikh", v},
                          {"count", int_str(count)}});
            }
            return 0;
        }
        if (*check) {
            if (ck_system.empty() == ck_grammar.empty())
                throw algser::Error("check: give exactly one of --system and --grammar");
            if (!ck_system.empty()) {
                algser::PolySystem s = algser::PolySystem::parse(slurp(ck_system));
                algser::PropernessReport rep = algser::validate_proper(s);
                json rec = {{"problem", "check"},
                            {"kind", "system"},
                            {"file", ck_system},
                            {"proper", rep.proper},
                            {"unknowns", s.unknowns().size()},
                            {"indeterminates", s.indets().size()}};
                if (!rep.proper) rec["violations"] = rep.to_string(s);
                out.emit(rec);
                return rep.proper ? 0 : 1;
            }
            std::string text = slurp(ck_grammar);
            try {
                algser::Grammar g = algser::Grammar::parse(text);
                out.emit({{"problem", "check"},
                          {"kind", "grammar"},
                          {"file", ck_grammar},
                          {"proper", true},
                          {"terminals", g.terminals().size()},
                          {"nonterminals", g.nonterminals().size()},
                          {"rules", g.rules().size()},
                          {"start", g.nonterminals()[static_cast<size_t>(g.start())]}});
                return 0;
            } catch (const algser::Error& err) {
                std::string msg = err.what();
                if (msg.rfind("grammar parse:", 0) == 0) throw;
                out.emit({{"problem", "check"},
                          {"kind", "grammar"},
                          {"file", ck_grammar},
                          {"proper", false},
                          {"violations", msg}});
                return 1;
            }
        }
        throw algser::Error("no subcommand selected");
    } catch (const algser::Error& e) {
        std::cerr << (out.as_json ? json{{"error", e.what()}}.dump() : std::string(e.what()))
                  << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << (out.as_json ? json{{"error", e.what()}}.dump() : std::string(e.what()))
                  << "\n";
        return 2;
    }
}
