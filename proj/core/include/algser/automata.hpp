#pragma once

#include "algser/grammar.hpp"

namespace algser {

// One pushdown move: pop `stack_top` at `location`, optionally consume one
// input symbol (input < 0 means none), move to `next_location` and push
// `push`, whose first entry ends up on top of the stack.
struct PdaRule {
    int location = -1;
    int stack_top = -1;
    int input = -1;
    Int weight = 1;
    int next_location = -1;
    std::vector<int> push;
};

// Weighted pushdown automaton accepting by empty stack in an accepting
// location with the input consumed. Every rule pops exactly one symbol.
//
// Counting runs is only well defined when silent moves cannot cycle, which
// the constructors below guarantee and record as provenance together with a
// per-word step budget; hand-built automata are rejected by the counting
// and translation routines.
struct PDA {
    std::vector<std::string> input_alphabet;
    std::vector<std::string> stack_alphabet;
    std::vector<std::string> locations;
    int initial_location = 0;
    int bottom_symbol = 0;
    std::vector<bool> accepting;
    std::vector<PdaRule> rules;

    bool pipeline_provenance = false;
    std::uint64_t step_linear = 0;
    std::uint64_t step_const = 0;
};
void validate_pda(const PDA& p);

// Letter-to-word substitution; every image is nonempty.
struct Homomorphism {
    std::vector<std::string> source_alphabet;
    std::vector<std::vector<int>> images;
};

// Top-down expansion automaton: one location, the stack holds the pending
// sentential suffix, expansions are silent and consumes match letters.
// Accepting runs on w correspond one-to-one to leftmost derivations of w,
// with matching weight products.
PDA cfg_to_pda(const Grammar& g, int nonterminal);

// Total weight of accepting runs on the word. Requires constructor
// provenance; the recorded step budget prunes the search and bounds it.
Int count_runs(const PDA& p, const std::vector<int>& word);

// Buffer construction: states remember the unconsumed tail of the current
// letter's image. Reading letter a consumes the first letter of h(a) through
// the original automaton and banks the rest, which then drives it silently.
// Fusing the load with the first letter makes runs on w correspond
// one-to-one to runs on h(w), so count(result, w) = count(p, h(w)).
PDA pda_inverse_hom(const PDA& p, const Homomorphism& h);

// Triple construction back to a grammar: nonterminals stand for "pop this
// symbol while moving between these locations". Long pushes are binarized
// first; the silent and single-nonterminal rules the translation introduces
// are eliminated with multiplicities preserved, so derivation counts of the
// result equal accepting-run counts of the automaton on every nonempty
// word. Diverging silent multiplicities are reported as errors.
struct CfgFromPda {
    Grammar grammar;
    int start = 0;
};
CfgFromPda pda_to_cfg(const PDA& p);

} // namespace algser
