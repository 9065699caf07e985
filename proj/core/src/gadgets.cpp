#include "algser/gadgets.hpp"

#include <algorithm>
#include <random>

namespace algser {

namespace {

void check_square(const Circuit& c, const std::vector<std::vector<int>>& m) {
    const size_t l = m.size();
    if (l == 0) throw Error("matrix gadget: empty matrix");
    for (const auto& row : m) {
        if (row.size() != l) throw Error("matrix gadget: matrix is not square");
        for (int g : row) {
            if (g < 0 || g >= static_cast<int>(c.size()))
                throw Error("matrix gadget: entry gate out of range");
        }
    }
}

// Shared scratch for gadget builders that need literal 0 and 1 gates.
struct ConstCache {
    Circuit& c;
    int zero_ = -1;
    int one_ = -1;
    explicit ConstCache(Circuit& c) : c(c) {}
    int zero() { return zero_ >= 0 ? zero_ : zero_ = c.constant(0); }
    int one() { return one_ >= 0 ? one_ : one_ = c.constant(1); }
    int neg(int g) { return c.sub(zero(), g); }
};

int dot_product(Circuit& c, const std::vector<int>& u, const std::vector<int>& v) {
    int acc = -1;
    for (size_t t = 0; t < u.size(); ++t) {
        int prod = c.mul(u[t], v[t]);
        acc = acc < 0 ? prod : c.add(acc, prod);
    }
    return acc;
}

std::vector<int> mat_vec(Circuit& c, const std::vector<std::vector<int>>& m,
                         const std::vector<int>& v, size_t dim) {
    std::vector<int> out(dim);
    for (size_t i = 0; i < dim; ++i) {
        std::vector<int> row(m[i].begin(), m[i].begin() + static_cast<long>(dim));
        out[i] = dot_product(c, row, v);
    }
    return out;
}

std::vector<std::vector<int>> mat_mul(Circuit& c, const std::vector<std::vector<int>>& a,
                                      const std::vector<std::vector<int>>& b) {
    const size_t l = a.size();
    std::vector<std::vector<int>> out(l, std::vector<int>(l, -1));
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) {
            int acc = -1;
            for (size_t t = 0; t < l; ++t) {
                int prod = c.mul(a[i][t], b[t][j]);
                acc = acc < 0 ? prod : c.add(acc, prod);
            }
            out[i][j] = acc;
        }
    return out;
}

} // namespace

int append_geometric_sum(Circuit& c, int base, const Int& m) {
    if (m < 0) throw Error("geometric sum: negative exponent");
    if (base < 0 || base >= static_cast<int>(c.size()))
        throw Error("geometric sum: base gate out of range");
    if (m == 0) return c.constant(1);

    std::vector<bool> bits;
    for (Int v = m; v > 0; v >>= 1) bits.push_back((v & 1) != 0);
    std::reverse(bits.begin(), bits.end());

    // (A, B) tracks the top row of [[x,1],[0,1]]^j: A = x^j, B = S_{j-1}.
    int A = base;
    int B = c.constant(1);
    for (size_t i = 1; i < bits.size(); ++i) {
        int A2 = c.mul(A, A);
        B = c.add(c.mul(A, B), B);
        A = A2;
        if (bits[i]) {
            B = c.add(A, B);
            A = c.mul(A, base);
        }
    }
    return c.add(A, B);
}

Circuit geometric_sum_circuit(const Circuit& base, const Int& m) {
    if (base.output() < 0) throw Error("geometric sum: base circuit has no output");
    Circuit c;
    int b = c.absorb(base);
    c.set_output(append_geometric_sum(c, b, m));
    return c;
}

std::vector<int> append_char_coefficients(Circuit& c, const std::vector<std::vector<int>>& m) {
    check_square(c, m);
    const size_t l = m.size();
    ConstCache k(c);

    // Berkowitz: p_r is the characteristic vector of the leading r x r block,
    // advanced by the Toeplitz matrix built from -a_rr and -R M^j S.
    std::vector<int> p = {k.one(), k.neg(m[0][0])};
    for (size_t r = 2; r <= l; ++r) {
        std::vector<int> R(m[r - 1].begin(), m[r - 1].begin() + static_cast<long>(r - 1));
        std::vector<int> S(r - 1);
        for (size_t i = 0; i < r - 1; ++i) S[i] = m[i][r - 1];

        std::vector<int> q(r + 1, -1);
        q[0] = k.one();
        q[1] = k.neg(m[r - 1][r - 1]);
        std::vector<int> v = S;
        for (size_t j = 2; j <= r; ++j) {
            q[j] = k.neg(dot_product(c, R, v));
            if (j < r) v = mat_vec(c, m, v, r - 1);
        }

        std::vector<int> next(r + 1, -1);
        for (size_t i = 0; i <= r; ++i) {
            int acc = -1;
            size_t lo = i > r ? i - r : 0;
            size_t hi = std::min(i, r - 1);
            for (size_t jj = lo; jj <= hi; ++jj) {
                int term = (i == jj) ? p[jj] : c.mul(q[i - jj], p[jj]);
                acc = acc < 0 ? term : c.add(acc, term);
            }
            next[i] = acc;
        }
        p = std::move(next);
    }
    return p;
}

int append_determinant(Circuit& c, const std::vector<std::vector<int>>& m) {
    std::vector<int> p = append_char_coefficients(c, m);
    const size_t l = m.size();
    // chi(0) = p[l] = (-1)^l det.
    if (l % 2 == 0) return p[l];
    ConstCache k(c);
    return k.neg(p[l]);
}

DetAdjugate append_det_adjugate(Circuit& c, const std::vector<std::vector<int>>& m) {
    check_square(c, m);
    const size_t l = m.size();
    ConstCache k(c);
    std::vector<int> p = append_char_coefficients(c, m);

    DetAdjugate out;
    out.det = l % 2 == 0 ? p[l] : k.neg(p[l]);
    if (l == 1) {
        out.adjugate = {{k.one()}};
        return out;
    }

    // Horner walk over Adj = (-1)^{l+1} (N^{l-1} + c_{l-1} N^{l-2} + ... + c_1 I),
    // where c_{l-idx} sits at p[idx].
    std::vector<std::vector<int>> B(l, std::vector<int>(l, -1));
    for (size_t i = 0; i < l; ++i)
        for (size_t j = 0; j < l; ++j) B[i][j] = i == j ? k.one() : k.zero();
    for (size_t idx = 1; idx <= l - 1; ++idx) {
        B = mat_mul(c, m, B);
        for (size_t i = 0; i < l; ++i) B[i][i] = c.add(B[i][i], p[idx]);
    }
    if (l % 2 == 0) {
        for (auto& row : B)
            for (int& e : row) e = k.neg(e);
    }
    out.adjugate = std::move(B);
    return out;
}

std::vector<std::vector<int>> append_adjugate(Circuit& c, const std::vector<std::vector<int>>& m) {
    return append_det_adjugate(c, m).adjugate;
}

Circuit determinant_circuit(const std::vector<std::vector<Circuit>>& m) {
    if (m.empty()) throw Error("determinant: empty matrix");
    Circuit c;
    std::vector<std::vector<int>> idx(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (const Circuit& e : m[i]) idx[i].push_back(c.absorb(e));
    c.set_output(append_determinant(c, idx));
    return c;
}

std::vector<std::vector<Circuit>> adjugate_circuits(const std::vector<std::vector<Circuit>>& m) {
    if (m.empty()) throw Error("adjugate: empty matrix");
    Circuit c;
    std::vector<std::vector<int>> idx(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (const Circuit& e : m[i]) idx[i].push_back(c.absorb(e));
    std::vector<std::vector<int>> adj = append_adjugate(c, idx);
    std::vector<std::vector<Circuit>> out(m.size());
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < m.size(); ++j) {
            c.set_output(adj[i][j]);
            out[i].push_back(c);
        }
    return out;
}

namespace {

// Identity ladders for the leveling pass: one_at[e] and zero_at[e] hold 1
// and 0 as gates sitting exactly at level e, respecting the level parity
// (odd levels multiply, even levels add).
struct LevelLadder {
    Circuit& c;
    std::vector<int> one_at, zero_at;
    explicit LevelLadder(Circuit& c) : c(c) {}

    void ensure(int level) {
        if (one_at.empty()) {
            one_at.push_back(c.constant(1));
            zero_at.push_back(c.constant(0));
        }
        while (static_cast<int>(one_at.size()) <= level) {
            int e = static_cast<int>(one_at.size());
            int po = one_at[e - 1], pz = zero_at[e - 1];
            if (e % 2 == 1) {
                one_at.push_back(c.mul(po, po));
                zero_at.push_back(c.mul(pz, po));
            } else {
                one_at.push_back(c.add(po, pz));
                zero_at.push_back(c.add(pz, pz));
            }
        }
    }

    // Raises a value from level `from` to level `to` with *1 / +0 steps.
    int pad(int g, int from, int to) {
        if (to == from) return g;
        ensure(to - 1);
        for (int e = from + 1; e <= to; ++e)
            g = (e % 2 == 1) ? c.mul(g, one_at[e - 1]) : c.add(g, zero_at[e - 1]);
        return g;
    }
};

} // namespace

BalancedCircuit balance_alternate_info(const Circuit& src) {
    if (src.output() < 0) throw Error("balance: circuit has no output");
    BalancedCircuit out;
    Circuit& c = out.circuit;
    LevelLadder ladder(c);

    std::vector<int> idx(src.size(), -1);
    std::vector<int> lev(src.size(), 0);
    auto land = [&](GateKind kind, int a, int b, int la, int lb) {
        int top = std::max(la, lb);
        bool want_odd = kind == GateKind::Mul;
        // Operands are lifted to the closest shared level whose successor
        // has the right parity for this gate.
        int operand_level = want_odd ? (top % 2 == 0 ? top : top + 1)
                                     : (top % 2 == 1 ? top : top + 1);
        a = ladder.pad(a, la, operand_level);
        b = ladder.pad(b, lb, operand_level);
        int g = want_odd ? c.mul(a, b)
                         : (kind == GateKind::Add ? c.add(a, b) : c.sub(a, b));
        return std::pair<int, int>(g, operand_level + 1);
    };

    const auto& gates = src.gates();
    for (size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        switch (g.kind) {
        case GateKind::Input:
            idx[i] = c.input(src.vars()[g.var]);
            lev[i] = 0;
            break;
        case GateKind::Const:
            idx[i] = c.constant(g.value);
            lev[i] = 0;
            break;
        default: {
            auto [ng, nl] = land(g.kind, idx[g.a], idx[g.b], lev[g.a], lev[g.b]);
            idx[i] = ng;
            lev[i] = nl;
            break;
        }
        }
    }

    int og = idx[src.output()];
    int ol = lev[src.output()];
    if (ol > 0 && ol % 2 == 0) {
        // Cap even-level outputs with a *1 so the top gate multiplies.
        ladder.ensure(ol);
        og = c.mul(og, ladder.one_at[ol]);
        ol += 1;
    }
    c.set_output(og);

    out.level.assign(c.size(), 0);
    // Ladder and pad gates got levels implicitly; recompute per gate so the
    // vector covers everything in the final arena.
    const auto& ng = c.gates();
    for (size_t i = 0; i < ng.size(); ++i) {
        if (ng[i].kind == GateKind::Input || ng[i].kind == GateKind::Const)
            out.level[i] = 0;
        else
            out.level[i] = std::max(out.level[ng[i].a], out.level[ng[i].b]) + 1;
    }
    out.output_level = out.level[c.output()];
    return out;
}

Circuit balance_alternate(const Circuit& c) { return balance_alternate_info(c).circuit; }

namespace {

// x^e for one input gate by square-and-multiply; e >= 1.
int append_power(Circuit& c, int base, const Int& e) {
    std::vector<bool> bits;
    for (Int v = e; v > 0; v >>= 1) bits.push_back((v & 1) != 0);
    std::reverse(bits.begin(), bits.end());
    int g = base;
    for (size_t i = 1; i < bits.size(); ++i) {
        g = c.mul(g, g);
        if (bits[i]) g = c.mul(g, base);
    }
    return g;
}

// prod_t x_t^{e_t}; returns -1 for the empty monomial.
int append_monomial(Circuit& c, const std::vector<int>& inputs, const std::vector<Int>& e) {
    int g = -1;
    for (size_t t = 0; t < inputs.size(); ++t) {
        if (e[t] == 0) continue;
        int pw = append_power(c, inputs[t], e[t]);
        g = g < 0 ? pw : c.mul(g, pw);
    }
    return g;
}

} // namespace

Circuit degree_reversal_circuit(const Circuit& src, const Int& Dp) {
    if (src.output() < 0) throw Error("degree reversal: circuit has no output");
    if (Dp < 0) throw Error("degree reversal: negative degree bound");
    const size_t k = src.vars().size();

    Circuit c;
    std::vector<int> inputs(k);
    for (size_t t = 0; t < k; ++t) inputs[t] = c.input(src.vars()[t]);

    // Per gate: the substituted value as numerator / monomial denominator,
    // with the denominator tracked symbolically as an exponent vector.
    std::vector<int> num(src.size(), -1);
    std::vector<std::vector<Int>> den(src.size());
    const auto& gates = src.gates();
    for (size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        switch (g.kind) {
        case GateKind::Input: {
            num[i] = c.constant(1);
            den[i].assign(k, 0);
            den[i][g.var] = 1;
            break;
        }
        case GateKind::Const:
            num[i] = c.constant(g.value);
            den[i].assign(k, 0);
            break;
        case GateKind::Mul: {
            num[i] = c.mul(num[g.a], num[g.b]);
            den[i].resize(k);
            for (size_t t = 0; t < k; ++t) den[i][t] = den[g.a][t] + den[g.b][t];
            break;
        }
        default: {
            std::vector<Int> m(k), da(k), db(k);
            bool lift_a = false, lift_b = false;
            for (size_t t = 0; t < k; ++t) {
                m[t] = std::max(den[g.a][t], den[g.b][t]);
                da[t] = m[t] - den[g.a][t];
                db[t] = m[t] - den[g.b][t];
                lift_a = lift_a || da[t] != 0;
                lift_b = lift_b || db[t] != 0;
            }
            int na = num[g.a], nb = num[g.b];
            if (lift_a) na = c.mul(na, append_monomial(c, inputs, da));
            if (lift_b) nb = c.mul(nb, append_monomial(c, inputs, db));
            num[i] = g.kind == GateKind::Add ? c.add(na, nb) : c.sub(na, nb);
            den[i] = std::move(m);
            break;
        }
        }
    }

    int o = src.output();
    std::vector<Int> shift(k);
    bool any = false;
    for (size_t t = 0; t < k; ++t) {
        shift[t] = Dp - den[o][t];
        if (shift[t] < 0)
            throw Error("degree reversal: bound smaller than a cleared denominator exponent");
        any = any || shift[t] != 0;
    }
    int g = num[o];
    if (any) g = c.mul(g, append_monomial(c, inputs, shift));
    c.set_output(g);
    return c;
}

std::vector<Int> degree_bounds(const Circuit& c) {
    if (c.output() < 0) throw Error("degree bounds: circuit has no output");
    const size_t k = c.vars().size();
    std::vector<std::vector<Int>> deg(c.size(), std::vector<Int>(k, 0));
    const auto& gates = c.gates();
    for (size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        switch (g.kind) {
        case GateKind::Input: deg[i][g.var] = 1; break;
        case GateKind::Const: break;
        case GateKind::Mul:
            for (size_t t = 0; t < k; ++t) deg[i][t] = deg[g.a][t] + deg[g.b][t];
            break;
        default:
            for (size_t t = 0; t < k; ++t) deg[i][t] = std::max(deg[g.a][t], deg[g.b][t]);
            break;
        }
    }
    return deg[static_cast<size_t>(c.output())];
}

DegreeProbe probe_degree_above(const Circuit& c, std::uint64_t threshold,
                               std::uint64_t max_degree, std::uint64_t seed,
                               std::uint64_t prime) {
    if (prime < 2 || prime >= (std::uint64_t{1} << 62))
        throw Error("degree probe: modulus out of range");
    if (max_degree > (std::uint64_t{1} << 31))
        throw Error("degree probe: expansion degree out of range");
    DegreeProbe out;
    out.threshold = threshold;
    out.max_degree = max_degree;
    if (c.vars().empty() || max_degree <= threshold) return out;

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(1, prime - 1);
    const std::vector<std::string> ambient = {"t"};
    std::map<std::string, TruncatedSeries> assign;
    for (const auto& v : c.vars()) {
        Polynomial body = Polynomial::monomial(ambient, {1}, Int(dist(rng)));
        assign.emplace(v, TruncatedSeries(body, max_degree));
    }
    Int p(prime);
    TruncatedSeries val = eval_series(c, assign, max_degree, &p);
    for (std::uint64_t d = threshold + 1; d <= max_degree; ++d) {
        if (val.coefficient({static_cast<std::uint32_t>(d)}) != 0) {
            out.first_nonzero_above_threshold = d;
            break;
        }
    }
    return out;
}

} // namespace algser
