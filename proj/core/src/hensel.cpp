#include "algser/hensel.hpp"

#include "algser/gadgets.hpp"

#include <map>

namespace algser {

namespace {

// Constant terms of the named gates: the plain gate walk with every input
// set to zero. Exact, and cheap because hensel arenas keep these values in
// {0, 1} and small products thereof.
std::vector<Int> constant_terms(const Circuit& c, const std::vector<int>& outs) {
    std::vector<Int> val(c.size());
    const auto& gates = c.gates();
    for (size_t i = 0; i < gates.size(); ++i) {
        switch (gates[i].kind) {
        case GateKind::Input: val[i] = 0; break;
        case GateKind::Const: val[i] = gates[i].value; break;
        case GateKind::Add: val[i] = val[gates[i].a] + val[gates[i].b]; break;
        case GateKind::Sub: val[i] = val[gates[i].a] - val[gates[i].b]; break;
        case GateKind::Mul: val[i] = val[gates[i].a] * val[gates[i].b]; break;
        }
    }
    std::vector<Int> out;
    out.reserve(outs.size());
    for (int g : outs) out.push_back(val[g]);
    return out;
}

// Builds Q^E * W(x, G/Q) for polynomials W of unknown-degree <= E: the term
// c x^alpha y^beta turns into c x^alpha G^beta Q^{E-|beta|}.
struct HomogenizedEval {
    Circuit& c;
    const PolySystem& s;
    std::uint64_t E;
    std::vector<int> xg;
    std::vector<int> Gg;
    int qg;
    std::map<std::pair<int, std::uint32_t>, int> powers;
    int zero_g = -1;

    int zero() { return zero_g >= 0 ? zero_g : zero_g = c.constant(0); }

    int power(int base, std::uint32_t e) {
        if (e == 1) return base;
        auto key = std::make_pair(base, e);
        auto it = powers.find(key);
        if (it != powers.end()) return it->second;
        int g = c.mul(power(base, e - 1), base);
        powers.emplace(key, g);
        return g;
    }

    int append(const Polynomial& W) {
        const size_t k = s.indet_count();
        const size_t l = s.unknown_count();
        int acc = -1;
        for (const auto& [v, coeff] : W.terms()) {
            std::uint64_t ydeg = 0;
            for (size_t j = 0; j < l; ++j) ydeg += v[k + j];
            if (ydeg > E) throw Error("hensel step: unknown degree above homogenization bound");
            int g = -1;
            auto factor = [&](int f) { g = g < 0 ? f : c.mul(g, f); };
            if (coeff != 1) factor(c.constant(coeff));
            for (size_t t = 0; t < k; ++t)
                if (v[t] > 0) factor(power(xg[t], v[t]));
            for (size_t j = 0; j < l; ++j)
                if (v[k + j] > 0) factor(power(Gg[j], v[k + j]));
            std::uint64_t qexp = E - ydeg;
            if (qexp > 0) factor(power(qg, static_cast<std::uint32_t>(qexp)));
            if (g < 0) g = c.constant(1);
            acc = acc < 0 ? g : c.add(acc, g);
        }
        return acc < 0 ? zero() : acc;
    }
};

} // namespace

int RationalApproximant::numerator_gate(size_t i) const {
    if (i >= num_.size()) throw Error("approximant: component index out of range");
    return num_[i];
}

Circuit RationalApproximant::denominator_tail(size_t i) const {
    if (i >= num_.size()) throw Error("approximant: component index out of range");
    return arena_.with_output(tail_);
}

RationalApproximant hensel_seed(const PolySystem& s) {
    require_proper(s);
    RationalApproximant a;
    for (const auto& x : s.indets()) a.arena_.input(x);
    int zero = a.arena_.constant(0);
    a.num_.assign(s.unknown_count(), zero);
    int one = a.arena_.constant(1);
    a.den_ = one;
    a.tail_ = a.arena_.sub(one, one);
    a.stage_ = 0;
    a.arena_.set_output(a.den_);
    return a;
}

RationalApproximant hensel_step(const PolySystem& s, const RationalApproximant& cur) {
    const size_t k = s.indet_count();
    const size_t l = s.unknown_count();
    if (cur.component_count() != l) throw Error("hensel step: approximant/system mismatch");

    RationalApproximant next = cur;
    Circuit& c = next.arena_;
    const std::uint64_t E = std::max<std::uint64_t>(1, s.unknown_degree());

    HomogenizedEval hom{c, s, E, {}, cur.num_, cur.den_, {}, -1};
    hom.xg.assign(k, -1);
    // The seed laid the indeterminate inputs down first; reuse them.
    const auto& gates = c.gates();
    for (size_t g = 0; g < gates.size(); ++g) {
        if (gates[g].kind != GateKind::Input) continue;
        const std::string& name = c.vars()[gates[g].var];
        for (size_t t = 0; t < k; ++t)
            if (hom.xg[t] < 0 && name == s.indets()[t]) hom.xg[t] = static_cast<int>(g);
    }
    for (size_t t = 0; t < k; ++t)
        if (hom.xg[t] < 0) hom.xg[t] = c.input(s.indets()[t]);

    // F_i = Q^E f_i(G/Q) = G_i Q^{E-1} - Q^E P_i(G/Q).
    std::vector<int> F(l);
    for (size_t i = 0; i < l; ++i) {
        int lead = E == 1 ? cur.num_[i]
                          : c.mul(cur.num_[i], hom.power(cur.den_, static_cast<std::uint32_t>(E - 1)));
        F[i] = c.sub(lead, hom.append(s.rhs()[i]));
    }

    // N_ij = Q^E Df_ij(G/Q).
    std::vector<std::vector<Polynomial>> Df = derivative_matrix(s);
    std::vector<std::vector<int>> N(l, std::vector<int>(l, -1));
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) N[i][j] = hom.append(Df[i][j]);

    DetAdjugate da = append_det_adjugate(c, N);
    if (constant_terms(c, {da.det})[0] != 1)
        throw Error("hensel step: Jacobian denominator fails the unit check");

    // a'_i = (G_i det(N) - Q S_i) / (Q det(N)) with S = Adj(N) F.
    for (size_t i = 0; i < l; ++i) {
        int S = -1;
        for (size_t j = 0; j < l; ++j) {
            int term = c.mul(da.adjugate[i][j], F[j]);
            S = S < 0 ? term : c.add(S, term);
        }
        next.num_[i] = c.sub(c.mul(cur.num_[i], da.det), c.mul(cur.den_, S));
    }
    next.den_ = c.mul(cur.den_, da.det);
    int one = c.constant(1);
    next.tail_ = c.sub(one, next.den_);
    next.stage_ = cur.stage_ + 1;
    c.set_output(next.den_);
    return next;
}

RationalApproximant hensel_iterate(const PolySystem& s, int stage) {
    if (stage < 0) throw Error("hensel: negative stage");
    RationalApproximant a = hensel_seed(s);
    for (int n = 0; n < stage; ++n) a = hensel_step(s, a);
    return a;
}

ApproximantCircuits polynomial_approximants(const PolySystem& s, int stage) {
    RationalApproximant a = hensel_iterate(s, stage);
    ApproximantCircuits out;
    out.stage = stage;
    out.arena = a.arena();
    Int m = (Int(1) << stage) - 1;
    int gsum = append_geometric_sum(out.arena, a.denominator_tail_gate(), m);
    for (size_t i = 0; i < a.component_count(); ++i)
        out.outputs.push_back(out.arena.mul(a.numerator_gate(i), gsum));
    out.arena.set_output(out.outputs.front());
    return out;
}

Circuit polynomial_approximant(const PolySystem& s, int stage, size_t component) {
    ApproximantCircuits all = polynomial_approximants(s, stage);
    if (component >= all.outputs.size()) throw Error("approximant: component index out of range");
    return all.arena.with_output(all.outputs[component]);
}

} // namespace algser
