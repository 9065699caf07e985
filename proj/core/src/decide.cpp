#include "algser/decide.hpp"

#include "algser/primes.hpp"

#include <algorithm>

namespace algser {

namespace {

// Smallest stage n with 2^n >= D + 1, so the stage-n truncation circuit is
// trustworthy through total degree D.
int stage_for(const Int& D) {
    if (D < 0) throw Error("bound must be nonnegative");
    if (D == 0) return 0;
    return static_cast<int>(ceil_log2(D + 1));
}

std::uint64_t checked_truncation(const Int& D, const char* what) {
    if (D > kMaxTruncationDegree)
        throw Error(std::string(what) + ": bound " + D.str() + " exceeds the feasible truncation degree " +
                    std::to_string(kMaxTruncationDegree));
    return D.convert_to<std::uint64_t>();
}

TruncatedSeries first_component_truncation(const PolySystem& s, int stage, std::uint64_t degree,
                                           const Int* p = nullptr) {
    ApproximantCircuits ac = polynomial_approximants(s, stage);
    auto assign = identity_series_assignment(ac.arena, degree);
    return eval_series_at(ac.arena, assign, degree, {ac.outputs[0]}, p)[0];
}

} // namespace

BoundConfig BoundConfig::explicit_bound(Int D) {
    if (D < 1) throw Error("bound config: explicit D must be >= 1");
    BoundConfig b;
    b.explicit_ = std::move(D);
    return b;
}

BoundConfig BoundConfig::formula(unsigned c) {
    if (c < 1) throw Error("bound config: formula constant must be >= 1");
    BoundConfig b;
    b.c_ = c;
    return b;
}

Int BoundConfig::resolve(const PolySystem& s) const {
    if (explicit_) return *explicit_;
    const Int d(s.degree());
    const unsigned long l = s.unknown_count();
    return int_pow(d, static_cast<unsigned long>(c_) * l * l);
}

Int BoundConfig::tail_window_top(const PolySystem& s) const {
    Int D = resolve(s);
    return D * D + D;
}

CoeffResult coeff_alg(const PolySystem& s, const CoeffQuery& q, Engine engine) {
    require_proper(s);
    if (q.target.size() != s.indet_count())
        throw Error("coefficient query: index arity does not match the indeterminates");
    if (q.modulus < 2) throw Error("coefficient query: modulus below 2");

    CoeffResult r;
    r.engine = engine;
    r.modulus_is_prime = is_prime_u64(q.modulus);
    const std::uint64_t deg = checked_truncation(Int(total_degree(q.target)), "coefficient query");
    const Int p(q.modulus);

    if (engine == Engine::kleene) {
        r.residue = kleene_solve(s, deg, &p)[0].coefficient(q.target);
        r.stage = 0;
    } else {
        r.stage = stage_for(Int(deg));
        r.residue = first_component_truncation(s, r.stage, deg, &p).coefficient(q.target);
    }
    return r;
}

ZeroResult eq_alg(const PolySystem& s, const BoundConfig& bounds) {
    require_proper(s);
    ZeroResult r;
    r.bound = bounds.resolve(s);
    const std::uint64_t D = checked_truncation(r.bound, "zero test");
    TruncatedSeries val = first_component_truncation(s, stage_for(r.bound), D);

    if (auto w = val.body().min_graded_term()) {
        r.zero = false;
        r.witness = *w;
        r.conditional = false;
        r.note = "nonzero: witness coefficient verified exactly";
    } else {
        r.zero = true;
        r.conditional = true;
        r.note = std::string("zero through total degree ") + r.bound.str() +
                 "; valid if that dominates the order bound" +
                 (bounds.heuristic() ? " (heuristic bound formula)" : "");
    }
    return r;
}

FiniteResult fin_alg(const PolySystem& s, const BoundConfig& bounds) {
    require_proper(s);
    FiniteResult r;
    r.bound = bounds.resolve(s);
    r.window_top = bounds.tail_window_top(s);
    const std::uint64_t D = checked_truncation(r.bound, "finiteness test");
    const std::uint64_t top = checked_truncation(r.window_top, "finiteness test");
    TruncatedSeries val = first_component_truncation(s, stage_for(r.window_top), top);

    TruncatedSeries window = val.tail(D);
    if (auto w = window.body().min_graded_term()) {
        r.finite = false;
        r.witness = *w;
        r.note = std::string("support reaches into (") + r.bound.str() + ", " + r.window_top.str() +
                 "]; infinite if the bound dominates the order and degree bounds";
    } else {
        r.finite = true;
        r.measured_degree = val.body().truncated(D).degree();
        r.note = std::string("no support in (") + r.bound.str() + ", " + r.window_top.str() +
                 "]; finite if the bound dominates the order and degree bounds";
    }
    if (bounds.heuristic()) r.note += " (heuristic bound formula)";
    return r;
}

ReductionCircuit eq_alg_reduction_circuit(const PolySystem& s, const BoundConfig& bounds,
                                          const Int* dprime_override) {
    require_proper(s);
    ReductionCircuit r;
    Int D = bounds.resolve(s);
    checked_truncation(D, "zero-test reduction");

    Circuit approx = polynomial_approximant(s, stage_for(D), 0);
    Int dp = 1;
    for (const Int& b : degree_bounds(approx)) dp = std::max(dp, b);
    if (dprime_override) {
        if (*dprime_override < 1) throw Error("zero-test reduction: D' must be >= 1");
        dp = *dprime_override;
    }
    r.circuit = degree_reversal_circuit(approx, dp);
    r.dprime = dp;
    const Int k(static_cast<unsigned long>(s.indet_count()));
    r.threshold = k * dp - D;
    r.max_total_degree = k * dp;
    return r;
}

namespace {

struct Level0Term {
    MultiIndex index;
    Int coeff;
};

} // namespace

SlpReduction slp_to_system(const Circuit& src) {
    if (src.output() < 0) throw Error("slp reduction: circuit has no output");
    BalancedCircuit bal = balance_alternate_info(src);
    const Circuit& c = bal.circuit;
    const auto& gates = c.gates();

    std::string aux = "xt";
    while (std::find(c.vars().begin(), c.vars().end(), aux) != c.vars().end()) aux += "_";
    std::string prefix = "w";
    auto clashes = [&](const std::string& pre) {
        for (const auto& v : c.vars()) {
            if (v.size() <= pre.size() || v.rfind(pre, 0) != 0) continue;
            if (std::all_of(v.begin() + static_cast<long>(pre.size()), v.end(),
                            [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
                return true;
        }
        return false;
    };
    while (clashes(prefix)) prefix += "_";

    std::vector<std::string> indets = c.vars();
    indets.push_back(aux);
    const size_t k = c.vars().size();

    // Only gates feeding the output matter.
    std::vector<bool> live(c.size(), false);
    {
        std::vector<int> stack = {c.output()};
        while (!stack.empty()) {
            int g = stack.back();
            stack.pop_back();
            if (live[static_cast<size_t>(g)]) continue;
            live[static_cast<size_t>(g)] = true;
            if (gates[static_cast<size_t>(g)].kind != GateKind::Input &&
                gates[static_cast<size_t>(g)].kind != GateKind::Const) {
                stack.push_back(gates[static_cast<size_t>(g)].a);
                stack.push_back(gates[static_cast<size_t>(g)].b);
            }
        }
    }

    auto level0_term = [&](int g) -> Level0Term {
        const Gate& gate = gates[static_cast<size_t>(g)];
        Level0Term t;
        t.index.assign(k + 1, 0);
        t.index[k] = 1; // one aux factor per level-0 value
        if (gate.kind == GateKind::Input) {
            t.index[static_cast<size_t>(gate.var)] += 1;
            t.coeff = 1;
        } else if (gate.kind == GateKind::Const) {
            t.coeff = gate.value;
        } else {
            throw Error("slp reduction: level-0 operand is not an input or constant");
        }
        return t;
    };

    // Gate-free circuits: one unknown equal to the substituted value.
    if (gates[static_cast<size_t>(c.output())].kind == GateKind::Input ||
        gates[static_cast<size_t>(c.output())].kind == GateKind::Const) {
        Level0Term t = level0_term(c.output());
        std::vector<std::string> unknowns = {prefix + "0"};
        std::vector<std::string> ambient = indets;
        ambient.push_back(unknowns[0]);
        MultiIndex mi = t.index;
        mi.push_back(0);
        Polynomial rhs = Polynomial::monomial(ambient, mi, t.coeff);
        SlpReduction out{PolySystem(indets, unknowns, {rhs}), Int(1), aux};
        return out;
    }

    // One unknown per live multiplication gate, the output's first.
    std::vector<int> mul_gates;
    for (size_t g = 0; g < gates.size(); ++g)
        if (live[g] && gates[g].kind == GateKind::Mul && static_cast<int>(g) != c.output())
            mul_gates.push_back(static_cast<int>(g));
    mul_gates.insert(mul_gates.begin(), c.output());
    if (gates[static_cast<size_t>(c.output())].kind != GateKind::Mul)
        throw Error("slp reduction: balanced output gate is not a multiplication");

    std::vector<int> var_of(c.size(), -1);
    std::vector<std::string> unknowns(mul_gates.size());
    for (size_t i = 0; i < mul_gates.size(); ++i) {
        var_of[static_cast<size_t>(mul_gates[i])] = static_cast<int>(i);
        unknowns[i] = prefix + std::to_string(i);
    }
    std::vector<std::string> ambient = indets;
    ambient.insert(ambient.end(), unknowns.begin(), unknowns.end());
    const size_t arity = ambient.size();

    // A level-(L-1) addition layer folds into the multiplication above it:
    // each operand is a signed combination of unknowns one level further down.
    auto expand_even = [&](int g) -> std::vector<std::pair<int, int>> {
        const Gate& gate = gates[static_cast<size_t>(g)];
        if (gate.kind != GateKind::Add && gate.kind != GateKind::Sub)
            throw Error("slp reduction: expected an addition layer between multiplications");
        auto var_term = [&](int h) {
            if (gates[static_cast<size_t>(h)].kind != GateKind::Mul || var_of[static_cast<size_t>(h)] < 0)
                throw Error("slp reduction: addition operand is not a multiplication unknown");
            return var_of[static_cast<size_t>(h)];
        };
        std::vector<std::pair<int, int>> out;
        out.emplace_back(1, var_term(gate.a));
        out.emplace_back(gate.kind == GateKind::Sub ? -1 : 1, var_term(gate.b));
        return out;
    };

    std::vector<Polynomial> rhs(mul_gates.size(), Polynomial(ambient));
    for (size_t i = 0; i < mul_gates.size(); ++i) {
        int g = mul_gates[i];
        const Gate& gate = gates[static_cast<size_t>(g)];
        Polynomial::TermMap terms;
        if (bal.level[static_cast<size_t>(g)] == 1) {
            Level0Term a = level0_term(gate.a);
            Level0Term b = level0_term(gate.b);
            MultiIndex mi(arity, 0);
            for (size_t t = 0; t <= k; ++t)
                mi[t] = a.index[t] + b.index[t];
            Int cf = a.coeff * b.coeff;
            if (cf != 0) terms[mi] += cf;
        } else {
            auto ta = expand_even(gate.a);
            auto tb = expand_even(gate.b);
            for (const auto& [sa, u] : ta)
                for (const auto& [sb, v] : tb) {
                    MultiIndex mi(arity, 0);
                    mi[k + 1 + static_cast<size_t>(u)] += 1;
                    mi[k + 1 + static_cast<size_t>(v)] += 1;
                    terms[mi] += Int(sa * sb);
                }
        }
        rhs[i] = Polynomial::from_terms(ambient, std::move(terms));
    }

    int L = bal.level[static_cast<size_t>(c.output())];
    SlpReduction out{PolySystem(indets, unknowns, std::move(rhs)), Int(1) << ((L + 1) / 2), aux};
    return out;
}

} // namespace algser
