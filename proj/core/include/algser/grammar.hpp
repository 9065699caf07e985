#pragma once

#include "algser/polysys.hpp"

namespace algser {

struct Symbol {
    bool terminal = false;
    int index = -1;

    bool operator==(const Symbol&) const = default;
    auto operator<=>(const Symbol&) const = default;
};

struct Rule {
    int lhs = -1;
    std::vector<Symbol> rhs; // nonempty, never a single nonterminal
    Int weight = 1;

    bool operator==(const Rule&) const = default;
};

// Weighted context-free grammar, proper by construction: every right-hand
// side is nonempty and not a bare nonterminal, so no derivation can loop
// without producing letters. Rules are stored grouped by left-hand side in
// declaration order, which makes serialization canonical.
class Grammar {
public:
    Grammar(std::vector<std::string> terminals, std::vector<std::string> nonterminals,
            std::vector<Rule> rules, int start = 0);

    const std::vector<std::string>& terminals() const { return terminals_; }
    const std::vector<std::string>& nonterminals() const { return nonterminals_; }
    const std::vector<Rule>& rules() const { return rules_; }
    int start() const { return start_; }

    int terminal_index(const std::string& name) const;    // -1 when absent
    int nonterminal_index(const std::string& name) const; // -1 when absent
    std::string symbol_name(const Symbol& s) const;

    // Text form, round-trips exactly:
    //   terminals: a b
    //   nonterminals: S
    //   start: S
    //   S -> a b | a S b | a S b S [weight=2]
    std::string to_string() const;
    static Grammar parse(const std::string& text);

    bool operator==(const Grammar&) const = default;

private:
    std::vector<std::string> terminals_;
    std::vector<std::string> nonterminals_;
    std::vector<Rule> rules_;
    int start_ = 0;
};

// A word as terminal indices. Accepts space-separated symbol names, or one
// symbol per character when every terminal name is a single character.
std::vector<int> parse_word(const Grammar& g, const std::string& text);
std::string word_to_string(const Grammar& g, const std::vector<int>& word);

// Number of weighted leftmost derivations of `word` from the nonterminal.
// Memoized on (sentential suffix, word position); properness plus the
// reservation prune (a sentential form longer than the remaining word can
// never finish) bound the recursion.
Int count_derivations(const Grammar& g, int nonterminal, const std::vector<int>& word);

// Sum of count_derivations over every word with letter counts v. Dynamic
// programming on (nonterminal, vector); subproblems shrink because every
// symbol of a right-hand side must account for at least one letter.
Int census_count(const Grammar& g, int nonterminal, const MultiIndex& v);

// The census generating functions as a proper equation system: one unknown
// per nonterminal, one indeterminate per terminal (declaration order), and
// each rule contributes weight * x^(terminal counts) * y^(nonterminal
// counts) to its left-hand side's equation.
PolySystem census_system(const Grammar& g);

// Complete deterministic automaton over named symbols.
struct DFA {
    std::vector<std::string> alphabet;
    int states = 0;
    int start = 0;
    std::vector<bool> accepting;
    std::vector<std::vector<int>> delta; // [state][symbol]
};
void validate_dfa(const DFA& a);

// Accepts sigma_1* sigma_2* ... sigma_k* over the full alphabet, for an
// order listing distinct alphabet symbols; one state per block plus a
// rejecting sink. Letters outside the order go straight to the sink.
DFA letter_shape_dfa(const std::vector<std::string>& alphabet,
                     const std::vector<std::string>& order);
DFA complement_dfa(const DFA& a);

// Triple-construction product: derivations of w from the result's start
// count exactly those of g's start when the automaton accepts w, and are
// absent otherwise. The fresh start nonterminal aggregates the accepting
// end states by rule copies, never by unit rules.
Grammar dfa_product(const Grammar& g, const DFA& a);

// Drops nonterminals that are unproductive or unreachable from the start
// (the start itself always stays). Multiplicities are untouched.
Grammar prune_useless(const Grammar& g);

// Every distinct word with letter counts v, in lexicographic order of
// terminal indices. Sized k^|v| in the worst case; meant for small v.
std::vector<std::vector<int>> words_with_parikh(const MultiIndex& v);

} // namespace algser
