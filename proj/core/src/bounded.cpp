#include "algser/bounded.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace algser {

namespace {

std::string to_str(const Int& v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

void check_nt(const Grammar& g, int n, const char* who) {
    if (n < 0 || n >= static_cast<int>(g.nonterminals().size()))
        throw Error(std::string(who) + ": nonterminal out of range");
}

// Number of distinct words with these letter counts.
Int word_class_size(const MultiIndex& v) {
    Int n = 1;
    Int total = 0;
    for (auto e : v)
        for (std::uint32_t i = 1; i <= e; ++i) {
            total += 1;
            n = n * total / Int(i);
        }
    return n;
}

} // namespace

PolySystem census_difference_system(const Grammar& g, int n1, int n2) {
    check_nt(g, n1, "census difference");
    check_nt(g, n2, "census difference");
    size_t k = g.terminals().size(), l = g.nonterminals().size();

    std::set<std::string> taken(g.terminals().begin(), g.terminals().end());
    taken.insert(g.nonterminals().begin(), g.nonterminals().end());
    std::string diff = "y0";
    while (taken.count(diff)) diff += "_";

    std::vector<std::string> unknowns{diff};
    unknowns.insert(unknowns.end(), g.nonterminals().begin(), g.nonterminals().end());
    std::vector<std::string> ambient = g.terminals();
    ambient.insert(ambient.end(), unknowns.begin(), unknowns.end());

    std::vector<Polynomial::TermMap> rhs(l + 1);
    for (const Rule& r : g.rules()) {
        MultiIndex exps(k + 1 + l, 0);
        for (const Symbol& s : r.rhs) {
            size_t at = s.terminal ? static_cast<size_t>(s.index)
                                   : k + 1 + static_cast<size_t>(s.index);
            exps[at] += 1;
        }
        rhs[1 + static_cast<size_t>(r.lhs)][exps] += r.weight;
        if (r.lhs == n1) rhs[0][exps] += r.weight;
        if (r.lhs == n2) rhs[0][exps] -= r.weight;
    }

    std::vector<Polynomial> eqs;
    eqs.reserve(l + 1);
    for (auto& m : rhs) eqs.push_back(Polynomial::from_terms(ambient, std::move(m)));
    return PolySystem(g.terminals(), std::move(unknowns), std::move(eqs));
}

EquivalenceVerdict census_equiv(const Grammar& g, int n1, int n2,
                                const BoundConfig& bounds) {
    check_nt(g, n1, "census equivalence");
    check_nt(g, n2, "census equivalence");

    EquivalenceVerdict v;
    v.stages.push_back("census difference system");
    PolySystem s = census_difference_system(g, n1, n2);
    ZeroResult z = eq_alg(s, bounds);
    v.stages.push_back("zeroness to degree " + to_str(z.bound));
    v.bound = z.bound;

    if (z.zero) {
        v.equivalent = true;
        v.conditional = z.conditional;
        v.note = "census series agree through the bound; " + z.note;
        return v;
    }

    v.equivalent = false;
    v.conditional = false;
    const MultiIndex& w = *z.witness;
    v.witness_counts = w;

    Int c1 = census_count(g, n1, w);
    Int c2 = census_count(g, n2, w);
    if (c1 == c2)
        throw Error("census equivalence: witness failed the census confirmation");
    v.stages.push_back("witness confirmation against the census oracle");
    v.note = "census counts at the witness differ: " + to_str(c1) + " vs " + to_str(c2);

    if (word_class_size(w) <= 100000) {
        for (const auto& word : words_with_parikh(w)) {
            if (count_derivations(g, n1, word) == count_derivations(g, n2, word)) continue;
            v.witness_word = word_to_string(g, word);
            v.stages.push_back("witness word located by derivation counting");
            break;
        }
        if (!v.witness_word)
            throw Error("census equivalence: no single word realizes the census difference");
    } else {
        v.note += "; word enumeration skipped at this witness size";
    }
    return v;
}

bool check_letter_bounded(const Grammar& g, int nonterminal,
                          const std::vector<std::string>& order) {
    check_nt(g, nonterminal, "letter-bounded check");
    DFA shape = letter_shape_dfa(g.terminals(), order);
    DFA outside = complement_dfa(shape);
    Grammar from_n(g.terminals(), g.nonterminals(), g.rules(), nonterminal);
    Grammar product = dfa_product(from_n, outside);
    for (const Rule& r : product.rules())
        if (r.lhs == product.start()) return false;
    return true;
}

OrderSearch find_letter_bounded_order(const Grammar& g, int nonterminal) {
    check_nt(g, nonterminal, "letter-bounded search");
    Grammar trimmed = prune_useless(
        Grammar(g.terminals(), g.nonterminals(), g.rules(), nonterminal));
    std::set<int> used;
    for (const Rule& r : trimmed.rules())
        for (const Symbol& s : r.rhs)
            if (s.terminal) used.insert(s.index);

    std::vector<std::string> perm;
    for (int t : used) perm.push_back(trimmed.terminals()[static_cast<size_t>(t)]);

    OrderSearch out;
    if (perm.size() > 8) {
        out.status = OrderSearch::Status::undetermined;
        return out;
    }
    std::sort(perm.begin(), perm.end());
    do {
        if (check_letter_bounded(g, nonterminal, perm)) {
            out.status = OrderSearch::Status::found;
            out.order = perm;
            return out;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.status = OrderSearch::Status::none;
    return out;
}

EquivalenceVerdict multiplicity_equiv_letter_bounded(const Grammar& g, int n1, int n2,
                                                     const std::vector<std::string>& order,
                                                     const BoundConfig& bounds) {
    check_nt(g, n1, "letter-bounded equivalence");
    check_nt(g, n2, "letter-bounded equivalence");
    bool ok1 = check_letter_bounded(g, n1, order);
    bool ok2 = check_letter_bounded(g, n2, order);

    EquivalenceVerdict v = census_equiv(g, n1, n2, bounds);
    v.stages.insert(v.stages.begin(), "letter shape check");

    if (ok1 && ok2) {
        if (v.equivalent)
            v.note = "letter-bounded, so census agreement is word-by-word agreement; " +
                     v.note;
        return v;
    }

    const std::string& bad =
        g.nonterminals()[static_cast<size_t>(!ok1 ? n1 : n2)];
    if (v.equivalent)
        throw Error("letter-bounded equivalence: language of '" + bad +
                    "' escapes the given letter order, so census agreement cannot "
                    "certify multiplicity equivalence");
    v.note += "; language of '" + bad +
              "' escapes the given letter order, the inequivalence stands regardless";
    return v;
}

EquivalenceVerdict multiplicity_equiv_bounded(const Grammar& g, int n1, int n2,
                                              const std::vector<std::vector<int>>& words,
                                              const BoundConfig& bounds) {
    check_nt(g, n1, "bounded equivalence");
    check_nt(g, n2, "bounded equivalence");
    if (words.empty()) throw Error("bounded equivalence: no restriction words");
    for (const auto& w : words) {
        if (w.empty()) throw Error("bounded equivalence: empty restriction word");
        for (int t : w)
            if (t < 0 || t >= static_cast<int>(g.terminals().size()))
                throw Error("bounded equivalence: restriction word symbol out of range");
    }

    std::vector<std::string> source;
    for (size_t i = 0; i < words.size(); ++i) source.push_back("a" + std::to_string(i + 1));
    Homomorphism h{source, words};

    auto guard = [](const std::string& name, auto&& fn) -> decltype(fn()) {
        try {
            return fn();
        } catch (const Error& e) {
            throw Error("bounded equivalence, stage " + name + ": " + e.what());
        }
    };

    DFA shape = letter_shape_dfa(source, source);
    auto pipeline = [&](int n, const std::string& side) -> Grammar {
        PDA a = guard("cfg_to_pda " + side, [&] { return cfg_to_pda(g, n); });
        PDA b = guard("pda_inverse_hom " + side, [&] { return pda_inverse_hom(a, h); });
        CfgFromPda c = guard("pda_to_cfg " + side, [&] { return pda_to_cfg(b); });
        return guard("dfa_product " + side, [&] { return dfa_product(c.grammar, shape); });
    };
    Grammar side1 = pipeline(n1, "(first nonterminal)");
    Grammar side2 = pipeline(n2, "(second nonterminal)");

    std::vector<std::string> nts = side1.nonterminals();
    std::set<std::string> taken(source.begin(), source.end());
    taken.insert(nts.begin(), nts.end());
    int offset = static_cast<int>(nts.size());
    for (const std::string& name : side2.nonterminals()) {
        std::string fresh = name + "_b";
        while (taken.count(fresh)) fresh += "_";
        taken.insert(fresh);
        nts.push_back(fresh);
    }
    std::vector<Rule> rules = side1.rules();
    for (Rule r : side2.rules()) {
        r.lhs += offset;
        for (Symbol& s : r.rhs)
            if (!s.terminal) s.index += offset;
        rules.push_back(std::move(r));
    }
    Grammar merged(source, std::move(nts), std::move(rules), side1.start());
    int m1 = side1.start();
    int m2 = offset + side2.start();

    EquivalenceVerdict v = guard("letter-bounded comparison", [&] {
        return multiplicity_equiv_letter_bounded(merged, m1, m2, source, bounds);
    });
    v.stages.insert(v.stages.begin(),
                    {"cfg_to_pda", "pda_inverse_hom", "pda_to_cfg", "dfa_product"});

    if (!v.equivalent && v.witness_counts) {
        const MultiIndex& counts = *v.witness_counts;
        std::vector<int> original;
        for (size_t i = 0; i < words.size(); ++i)
            for (std::uint32_t rep = 0; rep < counts[i]; ++rep)
                original.insert(original.end(), words[i].begin(), words[i].end());
        Int c1 = count_derivations(g, n1, original);
        Int c2 = count_derivations(g, n2, original);
        if (c1 == c2)
            throw Error(
                "bounded equivalence: witness failed count confirmation on the original "
                "grammar");
        v.witness_word = word_to_string(g, original);
        v.stages.push_back("witness confirmation on the original grammar");
        v.note = "derivation counts on the original grammar differ at the witness: " +
                 to_str(c1) + " vs " + to_str(c2);
    } else if (v.equivalent) {
        v.note = "restricted to the given word shape; " + v.note;
    }
    return v;
}

} // namespace algser
