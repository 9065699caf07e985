#pragma once

#include "algser/circuit.hpp"

#include <optional>

namespace algser {

// Gates computing sum_{j=0}^{m} base^j, appended in place; m >= 0. Uses the
// upper-triangular power trick: [[x,1],[0,1]]^j is determined by the pair
// (x^j, S_{j-1}), squaring costs 3 gates, multiplying by the base costs 2.
int append_geometric_sum(Circuit& c, int base, const Int& m);

// Standalone form. Beyond the base circuit the gate count is at most
// 5*ceil(log2(m+1)) + 4 (m = 0 collapses to a single const gate).
Circuit geometric_sum_circuit(const Circuit& base, const Int& m);

// Division-free determinant of a square matrix of gates (Berkowitz), and
// the characteristic coefficients (1, c_{l-1}, ..., c_0) it goes through.
int append_determinant(Circuit& c, const std::vector<std::vector<int>>& m);
std::vector<int> append_char_coefficients(Circuit& c, const std::vector<std::vector<int>>& m);

// Adjugate from the characteristic coefficients by the Cayley-Hamilton
// Horner walk; entry (i,j) is the (j,i) cofactor, and M*Adj(M) = det(M)*I
// holds as a gate-level identity.
std::vector<std::vector<int>> append_adjugate(Circuit& c, const std::vector<std::vector<int>>& m);

// Determinant and adjugate off one characteristic-coefficient pass.
struct DetAdjugate {
    int det = -1;
    std::vector<std::vector<int>> adjugate;
};
DetAdjugate append_det_adjugate(Circuit& c, const std::vector<std::vector<int>>& m);

// Standalone wrappers; entry circuits are merged into one arena with inputs
// unified by variable name.
Circuit determinant_circuit(const std::vector<std::vector<Circuit>>& m);
std::vector<std::vector<Circuit>> adjugate_circuits(const std::vector<std::vector<Circuit>>& m);

// Equivalent circuit in which every input-to-output path has the same
// length and levels strictly alternate: odd levels hold Mul gates, even
// levels hold Add/Sub. Values are padded across levels with *1 and +0
// identity gates, so the worst case adds O(size * depth) gates. The output
// lands on a Mul level (or stays at level 0 for gate-free circuits).
struct BalancedCircuit {
    Circuit circuit;
    std::vector<int> level; // per gate of `circuit`
    int output_level = 0;
};
BalancedCircuit balance_alternate_info(const Circuit& c);
Circuit balance_alternate(const Circuit& c);

// f = (x1*...*xk)^{Dp} * c(1/x1, ..., 1/xk) with denominators cleared.
// Every gate is rewritten into a (numerator gate, monomial exponent) pair;
// Dp must dominate the per-variable degree of c (2^{size(c)} always does,
// and exponents that large stay affordable because monomial powers are
// built by repeated squaring).
Circuit degree_reversal_circuit(const Circuit& c, const Int& Dp);

// Per-variable upper bounds on the degree of the output polynomial, by
// structural propagation: inputs count 1, constants 0, products add,
// sums take the componentwise max. Never smaller than the true degree.
std::vector<Int> degree_bounds(const Circuit& c);

// Monte-Carlo total-degree probe: substitute x_i -> r_i * t for random
// residues r_i and expand in t mod `prime` up to max_degree. A reported
// nonzero degree is certain; an all-zero report misses actual content with
// probability at most max_degree/prime per zero test (Schwartz-Zippel).
struct DegreeProbe {
    std::uint64_t threshold = 0;
    std::uint64_t max_degree = 0;
    std::optional<std::uint64_t> first_nonzero_above_threshold;
};
DegreeProbe probe_degree_above(const Circuit& c, std::uint64_t threshold,
                               std::uint64_t max_degree, std::uint64_t seed,
                               std::uint64_t prime);

} // namespace algser
