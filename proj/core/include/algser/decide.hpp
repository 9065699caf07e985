#pragma once

#include "algser/gadgets.hpp"
#include "algser/hensel.hpp"
#include "algser/polysys.hpp"

#include <optional>

namespace algser {

// Degree/order bound used by the zero and finiteness tests. Explicit mode
// takes the caller's word for D; formula mode computes D = d^{c*l^2} and is
// labeled heuristic because the exponent constant is not pinned down by
// theory available here.
class BoundConfig {
public:
    static BoundConfig explicit_bound(Int D);
    static BoundConfig formula(unsigned c = 1);

    bool heuristic() const { return !explicit_.has_value(); }
    // D for the given system.
    Int resolve(const PolySystem& s) const;
    // D^2 + D, the top of the finiteness scan window.
    Int tail_window_top(const PolySystem& s) const;

private:
    std::optional<Int> explicit_;
    unsigned c_ = 1;
};

// Largest total degree any test is willing to truncate to.
inline constexpr std::uint64_t kMaxTruncationDegree = 1u << 20;

struct CoeffQuery {
    MultiIndex target;      // over the system indeterminates
    std::uint64_t modulus;  // >= 2; intended prime, composites only warned about
};

enum class Engine { hensel, kleene };

struct CoeffResult {
    Int residue;
    Engine engine = Engine::hensel;
    int stage = 0;           // hensel stage used, 0 for the kleene engine
    bool modulus_is_prime = true;
};

// Residue of the coefficient of X^target in the first solution component.
// The hensel engine builds the stage-ceil(log2(|v|+1)) truncation circuit
// and expands it mod p; the kleene engine iterates the system directly.
CoeffResult coeff_alg(const PolySystem& s, const CoeffQuery& q, Engine engine);

struct ZeroResult {
    bool zero = true;
    std::optional<MultiIndex> witness; // least nonzero monomial, graded-lex
    Int bound;                         // D actually used
    bool conditional = true;           // zero verdicts hold only if D dominates the order
    std::string note;
};

// Is the first solution component identically zero? Exact through degree D:
// a nonzero answer is unconditional, a zero answer is conditional on D
// dominating the true order bound of a nonzero solution.
ZeroResult eq_alg(const PolySystem& s, const BoundConfig& bounds);

struct FiniteResult {
    bool finite = true;
    std::optional<MultiIndex> witness;  // monomial found in the scan window
    std::uint64_t measured_degree = 0;  // degree of the <=D prefix when finite
    Int bound;                          // D
    Int window_top;                     // D^2 + D
    bool conditional = true;
    std::string note;
};

// Does the first solution component have finite support? Decided by scanning
// total degrees in [D+1, D^2+D]: empty window means finite. Conditional on D
// both ways.
FiniteResult fin_alg(const PolySystem& s, const BoundConfig& bounds);

struct ReductionCircuit {
    Circuit circuit;       // f = (x1...xk)^{D'} * approx(1/x1, ..., 1/xk)
    Int dprime;            // the clearing exponent D'
    Int threshold;         // k*D' - D; deg(f) >= threshold iff nonzero, given D
    Int max_total_degree;  // k*D', ceiling for degree probes
};

// The zero test restated as a degree question: with approx the truncation
// circuit guaranteed through D, the solution is nonzero iff the reversal
// polynomial reaches total degree k*D' - D. dprime_override pins D' (it must
// dominate the circuit's per-variable degree); the default is the structural
// degree bound of the truncation circuit.
ReductionCircuit eq_alg_reduction_circuit(const PolySystem& s, const BoundConfig& bounds,
                                          const Int* dprime_override = nullptr);

struct SlpReduction {
    PolySystem system;
    Int alpha;             // coeff of X^v in the circuit = coeff of aux^alpha * X^v in A_1
    std::string aux_name;  // the fresh indeterminate (last in the system's list)
};

// Coefficient extraction for a circuit, restated over a proper system: after
// balancing, every multiplication gate becomes an unknown, the additions
// feeding it fold into its equation, and every level-0 value m turns into
// m * aux. The first component of the solution is aux^alpha times the
// circuit's polynomial, with alpha = 2^((L+1)/2) for output level L (1 for
// gate-free circuits).
SlpReduction slp_to_system(const Circuit& c);

} // namespace algser
