#pragma once

#include "algser/automata.hpp"
#include "algser/decide.hpp"

namespace algser {

// Outcome of an equivalence query. An `equivalent` verdict holds for all
// words the query ranges over but is conditional on the truncation bound;
// an inequivalent verdict is unconditional and carries a witness. The
// counts vector is over the alphabet the final census comparison ran on,
// and the word, when present, is spelled over the original grammar.
struct EquivalenceVerdict {
    bool equivalent = false;
    bool conditional = false;
    Int bound = 0;
    std::optional<MultiIndex> witness_counts;
    std::optional<std::string> witness_word;
    std::vector<std::string> stages;
    std::string note;
};

// The census-difference system: a fresh first unknown is defined as the
// n1-equations minus the n2-equations, followed by the untouched census
// system, so its first solution component is f_{n1} - f_{n2}.
PolySystem census_difference_system(const Grammar& g, int n1, int n2);

// Compares the census series of two nonterminals by running the zeroness
// decision on the census-difference system. Agreement is conditional on
// the bound; disagreement is unconditional, confirmed against the census
// oracle, and mapped to a witness word when the enumeration is small.
EquivalenceVerdict census_equiv(const Grammar& g, int n1, int n2,
                                const BoundConfig& bounds);

// True exactly when every word of L(N) lies in order[0]* order[1]* ...;
// decided outright via the complement automaton product and emptiness.
bool check_letter_bounded(const Grammar& g, int nonterminal,
                          const std::vector<std::string>& order);

struct OrderSearch {
    enum class Status { found, none, undetermined };
    Status status = Status::none;
    std::vector<std::string> order;
};

// Searches for an order of the letters used from the nonterminal that
// makes the language letter-bounded. Exhaustive and exact for up to 8
// letters; larger alphabets report undetermined rather than guess.
OrderSearch find_letter_bounded_order(const Grammar& g, int nonterminal);

// Full multiplicity equivalence for languages inside the given letter
// shape, where census agreement is equivalent to word-by-word agreement.
// A census difference stays sound even when a language escapes the shape,
// so inequivalence is still reported then; only an equivalence claim that
// would lean on the broken shape assumption is refused with a diagnosis.
EquivalenceVerdict multiplicity_equiv_letter_bounded(const Grammar& g, int n1, int n2,
                                                     const std::vector<std::string>& order,
                                                     const BoundConfig& bounds);

// Multiplicity equivalence restricted to words[0]* words[1]* ...: both
// nonterminals are reshaped through the pushdown pipeline (grammar to
// automaton, inverse substitution, back to a grammar, automaton product)
// into letter-bounded grammars over fresh letters a1..ak, then compared.
// The witness, when present, is re-verified on the original grammar.
EquivalenceVerdict multiplicity_equiv_bounded(const Grammar& g, int n1, int n2,
                                              const std::vector<std::vector<int>>& words,
                                              const BoundConfig& bounds);

} // namespace algser
