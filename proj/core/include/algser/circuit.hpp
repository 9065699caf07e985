#pragma once

#include "algser/series.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace algser {

enum class GateKind { Input, Const, Add, Sub, Mul };

struct Gate {
    GateKind kind;
    int a = -1;      // left operand (Add/Sub/Mul)
    int b = -1;      // right operand
    int var = -1;    // index into vars() (Input)
    Int value;       // Const payload

    bool operator==(const Gate&) const = default;
};

// Straight-line program over + - * with integer constants. Gates are
// append-only and may only reference earlier gates, so the vector order is
// already a topological order. A circuit denotes the polynomial computed at
// its designated output gate.
class Circuit {
public:
    int input(const std::string& name);
    int constant(Int v);
    int add(int a, int b) { return binary(GateKind::Add, a, b); }
    int sub(int a, int b) { return binary(GateKind::Sub, a, b); }
    int mul(int a, int b) { return binary(GateKind::Mul, a, b); }
    void set_output(int g);

    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<Gate>& gates() const { return gates_; }
    int output() const { return output_; }
    size_t size() const { return gates_.size(); }

    // Appends a copy of src's gates, unifying inputs by variable name.
    // Returns the arena index of src's output gate.
    int absorb(const Circuit& src);
    // The same circuit with a different designated output.
    Circuit with_output(int g) const;

    bool operator==(const Circuit&) const = default;

    // Canonical text form:
    //   g0 = input x
    //   g1 = const 5
    //   g2 = mul g0 g1
    //   output g2
    std::string to_string() const;
    static Circuit parse(const std::string& text);

private:
    std::vector<std::string> vars_;
    std::vector<Gate> gates_;
    int output_ = -1;

    int binary(GateKind k, int a, int b);
    void check_operand(int g) const;
};

// Evaluation engines. All of them walk the gate list once, so cost is
// (number of gates) x (cost of one ring operation at the value type).

// Residues mod p with p < 2^63; the assignment must cover every input var.
std::uint64_t eval_mod_p(const Circuit& c, const std::map<std::string, std::uint64_t>& assign,
                         std::uint64_t p);

// Truncated-series semantics at total degree n; optional mod-p reduction
// per gate keeps coefficients small. This is the coefficient engine for
// straight-line programs.
TruncatedSeries eval_series(const Circuit& c, const std::map<std::string, TruncatedSeries>& assign,
                            std::uint64_t n, const Int* p = nullptr);

// Same walk, several read-out gates at once (arenas shared across outputs).
std::vector<TruncatedSeries> eval_series_at(const Circuit& c,
                                            const std::map<std::string, TruncatedSeries>& assign,
                                            std::uint64_t n, const std::vector<int>& outs,
                                            const Int* p = nullptr);

// Exact polynomial semantics; fine for small circuits, exponential blowup
// is the caller's problem.
Polynomial eval_poly(const Circuit& c, const std::map<std::string, Polynomial>& assign);

// x_i |-> x_i as a truncated series over the circuit's own variables.
std::map<std::string, TruncatedSeries> identity_series_assignment(const Circuit& c,
                                                                  std::uint64_t n);

} // namespace algser
