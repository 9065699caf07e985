#include "algser/circuit.hpp"

#include <algorithm>
#include <sstream>

namespace algser {

int Circuit::input(const std::string& name) {
    int vi = -1;
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) {
        vars_.push_back(name);
        vi = static_cast<int>(vars_.size()) - 1;
    } else {
        vi = static_cast<int>(it - vars_.begin());
    }
    Gate g{GateKind::Input};
    g.var = vi;
    gates_.push_back(std::move(g));
    return static_cast<int>(gates_.size()) - 1;
}

int Circuit::constant(Int v) {
    Gate g{GateKind::Const};
    g.value = std::move(v);
    gates_.push_back(std::move(g));
    return static_cast<int>(gates_.size()) - 1;
}

void Circuit::check_operand(int g) const {
    if (g < 0 || g >= static_cast<int>(gates_.size()))
        throw Error("gate operand " + std::to_string(g) + " out of range");
}

int Circuit::binary(GateKind k, int a, int b) {
    check_operand(a);
    check_operand(b);
    Gate g{k};
    g.a = a;
    g.b = b;
    gates_.push_back(std::move(g));
    return static_cast<int>(gates_.size()) - 1;
}

void Circuit::set_output(int g) {
    check_operand(g);
    output_ = g;
}

int Circuit::absorb(const Circuit& src) {
    if (src.output_ < 0) throw Error("absorb: source circuit has no output");
    std::vector<int> remap(src.gates_.size(), -1);
    for (size_t i = 0; i < src.gates_.size(); ++i) {
        const Gate& g = src.gates_[i];
        switch (g.kind) {
        case GateKind::Input: remap[i] = input(src.vars_[g.var]); break;
        case GateKind::Const: remap[i] = constant(g.value); break;
        case GateKind::Add: remap[i] = add(remap[g.a], remap[g.b]); break;
        case GateKind::Sub: remap[i] = sub(remap[g.a], remap[g.b]); break;
        case GateKind::Mul: remap[i] = mul(remap[g.a], remap[g.b]); break;
        }
    }
    return remap[src.output_];
}

Circuit Circuit::with_output(int g) const {
    Circuit c = *this;
    c.set_output(g);
    return c;
}

std::string Circuit::to_string() const {
    if (output_ < 0) throw Error("circuit has no output gate");
    std::ostringstream out;
    for (size_t i = 0; i < gates_.size(); ++i) {
        const Gate& g = gates_[i];
        out << "g" << i << " = ";
        switch (g.kind) {
        case GateKind::Input: out << "input " << vars_[g.var]; break;
        case GateKind::Const: out << "const " << g.value.str(); break;
        case GateKind::Add: out << "add g" << g.a << " g" << g.b; break;
        case GateKind::Sub: out << "sub g" << g.a << " g" << g.b; break;
        case GateKind::Mul: out << "mul g" << g.a << " g" << g.b; break;
        }
        out << "\n";
    }
    out << "output g" << output_ << "\n";
    return out.str();
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) toks.push_back(t);
    return toks;
}

int parse_gate_ref(const std::string& tok, size_t limit, int lineno) {
    if (tok.size() < 2 || tok[0] != 'g')
        throw Error("line " + std::to_string(lineno) + ": expected gate reference, got '" + tok + "'");
    size_t idx = 0;
    try {
        idx = std::stoul(tok.substr(1));
    } catch (...) {
        throw Error("line " + std::to_string(lineno) + ": bad gate reference '" + tok + "'");
    }
    if (idx >= limit)
        throw Error("line " + std::to_string(lineno) + ": gate g" + std::to_string(idx) +
                    " referenced before definition");
    return static_cast<int>(idx);
}

} // namespace

Circuit Circuit::parse(const std::string& text) {
    Circuit c;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool have_output = false;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "output") {
            if (toks.size() != 2)
                throw Error("line " + std::to_string(lineno) + ": malformed output line");
            c.set_output(parse_gate_ref(toks[1], c.gates_.size(), lineno));
            have_output = true;
            continue;
        }
        if (have_output)
            throw Error("line " + std::to_string(lineno) + ": gate after output line");
        if (toks.size() < 3 || toks[1] != "=")
            throw Error("line " + std::to_string(lineno) + ": malformed gate line");
        size_t expect = c.gates_.size();
        if (toks[0] != "g" + std::to_string(expect))
            throw Error("line " + std::to_string(lineno) + ": expected gate g" +
                        std::to_string(expect) + ", got '" + toks[0] + "'");
        const std::string& op = toks[2];
        if (op == "input") {
            if (toks.size() != 4)
                throw Error("line " + std::to_string(lineno) + ": malformed input gate");
            c.input(toks[3]);
        } else if (op == "const") {
            if (toks.size() != 4)
                throw Error("line " + std::to_string(lineno) + ": malformed const gate");
            try {
                c.constant(Int(toks[3]));
            } catch (...) {
                throw Error("line " + std::to_string(lineno) + ": bad integer '" + toks[3] + "'");
            }
        } else if (op == "add" || op == "sub" || op == "mul") {
            if (toks.size() != 5)
                throw Error("line " + std::to_string(lineno) + ": malformed " + op + " gate");
            int a = parse_gate_ref(toks[3], c.gates_.size(), lineno);
            int b = parse_gate_ref(toks[4], c.gates_.size(), lineno);
            if (op == "add") c.add(a, b);
            else if (op == "sub") c.sub(a, b);
            else c.mul(a, b);
        } else {
            throw Error("line " + std::to_string(lineno) + ": unknown gate kind '" + op + "'");
        }
    }
    if (!have_output) throw Error("circuit text has no output line");
    return c;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

} // namespace

std::uint64_t eval_mod_p(const Circuit& c, const std::map<std::string, std::uint64_t>& assign,
                         std::uint64_t p) {
    if (p < 2) throw Error("modulus must be >= 2");
    if (p >> 63) throw Error("modulus must be below 2^63");
    if (c.output() < 0) throw Error("circuit has no output gate");
    std::vector<std::uint64_t> val(c.gates().size());
    for (size_t i = 0; i < c.gates().size(); ++i) {
        const Gate& g = c.gates()[i];
        switch (g.kind) {
        case GateKind::Input: {
            auto it = assign.find(c.vars()[g.var]);
            if (it == assign.end()) throw Error("no assignment for variable " + c.vars()[g.var]);
            val[i] = it->second % p;
            break;
        }
        case GateKind::Const: val[i] = mod_u64(g.value, p); break;
        case GateKind::Add: val[i] = (val[g.a] + val[g.b]) % p; break;
        case GateKind::Sub: val[i] = (val[g.a] + p - val[g.b]) % p; break;
        case GateKind::Mul: val[i] = mulmod(val[g.a], val[g.b], p); break;
        }
    }
    return val[c.output()];
}

std::vector<TruncatedSeries> eval_series_at(const Circuit& c,
                                            const std::map<std::string, TruncatedSeries>& assign,
                                            std::uint64_t n, const std::vector<int>& outs,
                                            const Int* p) {
    std::vector<std::string> ambient;
    if (!assign.empty()) ambient = assign.begin()->second.ambient();
    std::vector<TruncatedSeries> val(c.gates().size());
    for (size_t i = 0; i < c.gates().size(); ++i) {
        const Gate& g = c.gates()[i];
        switch (g.kind) {
        case GateKind::Input: {
            auto it = assign.find(c.vars()[g.var]);
            if (it == assign.end()) throw Error("no assignment for variable " + c.vars()[g.var]);
            if (it->second.order_bound() < n)
                throw Error("assignment precision below requested order");
            val[i] = it->second.truncated(n);
            if (p) val[i] = val[i].reduced_mod(*p);
            break;
        }
        case GateKind::Const: {
            Int v = p ? mod_nonneg(g.value, *p) : g.value;
            val[i] = TruncatedSeries(Polynomial::constant(ambient, v), n);
            break;
        }
        case GateKind::Add:
            val[i] = series_add(val[g.a], val[g.b]);
            if (p) val[i] = val[i].reduced_mod(*p);
            break;
        case GateKind::Sub:
            val[i] = series_sub(val[g.a], val[g.b]);
            if (p) val[i] = val[i].reduced_mod(*p);
            break;
        case GateKind::Mul:
            val[i] = series_trunc_mul(val[g.a], val[g.b], n, p);
            break;
        }
    }
    std::vector<TruncatedSeries> r;
    r.reserve(outs.size());
    for (int o : outs) {
        if (o < 0 || o >= static_cast<int>(val.size())) throw Error("read-out gate out of range");
        r.push_back(val[o]);
    }
    return r;
}

TruncatedSeries eval_series(const Circuit& c, const std::map<std::string, TruncatedSeries>& assign,
                            std::uint64_t n, const Int* p) {
    if (c.output() < 0) throw Error("circuit has no output gate");
    return eval_series_at(c, assign, n, {c.output()}, p)[0];
}

Polynomial eval_poly(const Circuit& c, const std::map<std::string, Polynomial>& assign) {
    if (c.output() < 0) throw Error("circuit has no output gate");
    std::vector<std::string> ambient;
    if (!assign.empty()) ambient = assign.begin()->second.ambient();
    std::vector<Polynomial> val(c.gates().size());
    for (size_t i = 0; i < c.gates().size(); ++i) {
        const Gate& g = c.gates()[i];
        switch (g.kind) {
        case GateKind::Input: {
            auto it = assign.find(c.vars()[g.var]);
            if (it == assign.end()) throw Error("no assignment for variable " + c.vars()[g.var]);
            val[i] = it->second;
            break;
        }
        case GateKind::Const: val[i] = Polynomial::constant(ambient, g.value); break;
        case GateKind::Add: val[i] = val[g.a] + val[g.b]; break;
        case GateKind::Sub: val[i] = val[g.a] - val[g.b]; break;
        case GateKind::Mul: val[i] = val[g.a] * val[g.b]; break;
        }
    }
    return val[c.output()];
}

std::map<std::string, TruncatedSeries> identity_series_assignment(const Circuit& c,
                                                                  std::uint64_t n) {
    std::map<std::string, TruncatedSeries> a;
    for (auto& v : c.vars())
        a.emplace(v, TruncatedSeries(Polynomial::symbol(c.vars(), v), n));
    return a;
}

} // namespace algser
