#pragma once

#include "algser/circuit.hpp"
#include "algser/polysys.hpp"

namespace algser {

// Stage-n Newton iterate a_{n,i} = g_{n,i} / (1 - h_{n,i}) held as circuits.
// All gates live in one shared arena and all components share one
// denominator, so a step appends gates instead of copying per component.
// Iterates are never expanded to series here; callers evaluate on demand.
class RationalApproximant {
public:
    int stage() const { return stage_; }
    size_t component_count() const { return num_.size(); }

    const Circuit& arena() const { return arena_; }
    int numerator_gate(size_t i) const;
    // The shared denominator 1 - h as a gate, constant term 1.
    int denominator_gate() const { return den_; }
    // h itself; identical for every component at this stage.
    int denominator_tail_gate() const { return tail_; }

    // Standalone circuit views (copies of the arena with outputs set).
    Circuit numerator(size_t i) const { return arena_.with_output(numerator_gate(i)); }
    Circuit denominator_tail(size_t i) const;

    friend RationalApproximant hensel_seed(const PolySystem& s);
    friend RationalApproximant hensel_step(const PolySystem& s, const RationalApproximant& cur);

private:
    Circuit arena_;
    std::vector<int> num_;
    int den_ = -1;
    int tail_ = -1;
    int stage_ = 0;
};

// Stage 0: a_0 = 0, denominator 1.
RationalApproximant hensel_seed(const PolySystem& s);

// One Newton update a' = a - Df(a)^{-1} f(a) for f_i = y_i - P_i, carried
// out on numerator/denominator circuits: with every Jacobian entry and
// every f_i brought over the common power Q^E (E = max unknown degree),
// the new iterate is a'_i = (G_i det(N) - Q S_i) / (Q det(N)) where
// N = Q^E Df(G/Q), S = Adj(N) F, F_i = Q^E f_i(G/Q). The determinant's
// constant term is checked to be 1; anything else means a non-proper
// system slipped past validation.
RationalApproximant hensel_step(const PolySystem& s, const RationalApproximant& cur);

// The stage requested, reached from the seed.
RationalApproximant hensel_iterate(const PolySystem& s, int stage);

// Truncation circuits E_n: component i computes g_{n,i} * sum_{j<2^n} h_{n,i}^j,
// which agrees with the solution on every monomial of total degree < 2^n.
struct ApproximantCircuits {
    Circuit arena;
    std::vector<int> outputs;
    int stage = 0;
};
ApproximantCircuits polynomial_approximants(const PolySystem& s, int stage);
Circuit polynomial_approximant(const PolySystem& s, int stage, size_t component);

} // namespace algser
