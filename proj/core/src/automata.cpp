#include "algser/automata.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace algser {

void validate_pda(const PDA& p) {
    int locs = static_cast<int>(p.locations.size());
    int syms = static_cast<int>(p.stack_alphabet.size());
    if (locs == 0) throw Error("pda: needs at least one location");
    if (syms == 0) throw Error("pda: needs at least one stack symbol");
    if (p.initial_location < 0 || p.initial_location >= locs)
        throw Error("pda: initial location out of range");
    if (p.bottom_symbol < 0 || p.bottom_symbol >= syms)
        throw Error("pda: bottom symbol out of range");
    if (static_cast<int>(p.accepting.size()) != locs)
        throw Error("pda: accepting flags do not match the locations");
    for (const PdaRule& r : p.rules) {
        if (r.location < 0 || r.location >= locs || r.next_location < 0 ||
            r.next_location >= locs)
            throw Error("pda: rule location out of range");
        if (r.stack_top < 0 || r.stack_top >= syms)
            throw Error("pda: rule stack symbol out of range");
        if (r.input < -1 || r.input >= static_cast<int>(p.input_alphabet.size()))
            throw Error("pda: rule input symbol out of range");
        for (int s : r.push)
            if (s < 0 || s >= syms) throw Error("pda: pushed symbol out of range");
        if (r.weight < 1) throw Error("pda: rule weight must be at least 1");
    }
}

PDA cfg_to_pda(const Grammar& g, int nonterminal) {
    if (nonterminal < 0 || nonterminal >= static_cast<int>(g.nonterminals().size()))
        throw Error("cfg_to_pda: nonterminal out of range");
    size_t k = g.terminals().size();

    PDA p;
    p.input_alphabet = g.terminals();
    p.stack_alphabet = g.terminals();
    p.stack_alphabet.insert(p.stack_alphabet.end(), g.nonterminals().begin(),
                            g.nonterminals().end());
    p.locations = {"run"};
    p.initial_location = 0;
    p.bottom_symbol = static_cast<int>(k) + nonterminal;
    p.accepting = {true};

    for (const Rule& r : g.rules()) {
        PdaRule pr;
        pr.location = 0;
        pr.stack_top = static_cast<int>(k) + r.lhs;
        pr.input = -1;
        pr.weight = r.weight;
        pr.next_location = 0;
        for (const Symbol& s : r.rhs)
            pr.push.push_back(s.terminal ? s.index : static_cast<int>(k) + s.index);
        p.rules.push_back(std::move(pr));
    }
    for (size_t t = 0; t < k; ++t) {
        PdaRule pr;
        pr.location = 0;
        pr.stack_top = static_cast<int>(t);
        pr.input = static_cast<int>(t);
        pr.next_location = 0;
        p.rules.push_back(std::move(pr));
    }

    // A proper derivation of w applies at most 2|w|-1 rules and consumes
    // |w| letters, so 3|w|+1 steps cover every accepting run.
    p.pipeline_provenance = true;
    p.step_linear = 3;
    p.step_const = 1;
    validate_pda(p);
    return p;
}

namespace {

struct RunCounter {
    const PDA& p;
    const std::vector<int>& word;
    std::uint64_t budget;
    std::map<std::pair<int, int>, std::vector<const PdaRule*>> moves;
    Int total = 0;

    RunCounter(const PDA& pda, const std::vector<int>& w) : p(pda), word(w) {
        budget = p.step_linear * w.size() + p.step_const;
        for (const PdaRule& r : p.rules) moves[{r.location, r.stack_top}].push_back(&r);
    }

    void run(int loc, std::vector<int>& stack, size_t pos, std::uint64_t steps,
             const Int& weight) {
        if (stack.empty()) {
            if (pos == word.size() && p.accepting[static_cast<size_t>(loc)])
                total += weight;
            return;
        }
        if (steps == budget) return;
        int top = stack.back();
        auto it = moves.find({loc, top});
        if (it == moves.end()) return;
        for (const PdaRule* r : it->second) {
            size_t npos = pos;
            if (r->input >= 0) {
                if (pos == word.size() || word[pos] != r->input) continue;
                npos = pos + 1;
            }
            stack.pop_back();
            for (auto s = r->push.rbegin(); s != r->push.rend(); ++s) stack.push_back(*s);
            run(r->next_location, stack, npos, steps + 1, weight * r->weight);
            stack.resize(stack.size() - r->push.size());
            stack.push_back(top);
        }
    }
};

} // namespace

Int count_runs(const PDA& p, const std::vector<int>& word) {
    validate_pda(p);
    if (!p.pipeline_provenance)
        throw Error("pda counting: automaton lacks construction provenance");
    for (int t : word)
        if (t < 0 || t >= static_cast<int>(p.input_alphabet.size()))
            throw Error("pda counting: input symbol out of range");
    RunCounter rc(p, word);
    std::vector<int> stack{p.bottom_symbol};
    rc.run(p.initial_location, stack, 0, 0, Int(1));
    return rc.total;
}

PDA pda_inverse_hom(const PDA& p, const Homomorphism& h) {
    validate_pda(p);
    if (!p.pipeline_provenance)
        throw Error("pda inverse image: automaton lacks construction provenance");
    if (h.source_alphabet.empty()) throw Error("pda inverse image: empty source alphabet");
    if (h.images.size() != h.source_alphabet.size())
        throw Error("pda inverse image: images do not match the source alphabet");
    {
        std::set<std::string> seen;
        for (const auto& s : h.source_alphabet)
            if (!seen.insert(s).second)
                throw Error("pda inverse image: duplicate source symbol '" + s + "'");
    }
    std::uint64_t maxlen = 1;
    for (const auto& w : h.images) {
        if (w.empty()) throw Error("pda inverse image: empty image word");
        for (int t : w)
            if (t < 0 || t >= static_cast<int>(p.input_alphabet.size()))
                throw Error("pda inverse image: image symbol out of range");
        maxlen = std::max<std::uint64_t>(maxlen, w.size());
    }

    // Buffer 0 is empty; the others are the proper suffixes of the images.
    // Full images never appear: loading is fused with the first letter, so
    // a run has exactly one state per position of the simulated run.
    std::vector<std::vector<int>> buffers;
    std::map<std::vector<int>, int> buffer_id;
    auto intern = [&](const std::vector<int>& b) {
        auto it = buffer_id.find(b);
        if (it != buffer_id.end()) return it->second;
        int id = static_cast<int>(buffers.size());
        buffers.push_back(b);
        buffer_id.emplace(b, id);
        return id;
    };
    intern({});
    for (const auto& w : h.images)
        for (size_t j = 1; j < w.size(); ++j)
            intern(std::vector<int>(w.begin() + static_cast<long>(j), w.end()));

    size_t nb = buffers.size();
    auto state = [&](int q, int b) {
        return static_cast<int>(static_cast<size_t>(q) * nb + static_cast<size_t>(b));
    };

    PDA out;
    out.input_alphabet = h.source_alphabet;
    out.stack_alphabet = p.stack_alphabet;
    out.locations.reserve(p.locations.size() * nb);
    for (const auto& loc : p.locations)
        for (const auto& buf : buffers) {
            std::string name = loc + "|";
            for (int t : buf) name += p.input_alphabet[static_cast<size_t>(t)];
            out.locations.push_back(std::move(name));
        }
    out.initial_location = state(p.initial_location, 0);
    out.bottom_symbol = p.bottom_symbol;
    out.accepting.assign(out.locations.size(), false);
    for (size_t q = 0; q < p.locations.size(); ++q)
        out.accepting[static_cast<size_t>(state(static_cast<int>(q), 0))] = p.accepting[q];

    // Reading source letter a consumes the first letter of its image through
    // a matching rule of the original automaton and banks the rest. A
    // separate load step would let silent moves at image boundaries fire on
    // either side of it, counting one simulated run many times over.
    for (size_t i = 0; i < h.source_alphabet.size(); ++i) {
        const std::vector<int>& image = h.images[i];
        int rest = buffer_id.at(std::vector<int>(image.begin() + 1, image.end()));
        for (const PdaRule& r : p.rules) {
            if (r.input != image[0]) continue;
            PdaRule nr = r;
            nr.location = state(r.location, 0);
            nr.input = static_cast<int>(i);
            nr.next_location = state(r.next_location, rest);
            out.rules.push_back(std::move(nr));
        }
    }
    for (const PdaRule& r : p.rules) {
        for (size_t b = 0; b < nb; ++b) {
            int nbuf;
            if (r.input >= 0) {
                if (buffers[b].empty() || buffers[b][0] != r.input) continue;
                nbuf = buffer_id.at(
                    std::vector<int>(buffers[b].begin() + 1, buffers[b].end()));
            } else {
                nbuf = static_cast<int>(b);
            }
            PdaRule nr = r;
            nr.location = state(r.location, static_cast<int>(b));
            nr.input = -1;
            nr.next_location = state(r.next_location, nbuf);
            out.rules.push_back(std::move(nr));
        }
    }

    // Runs on w and simulated runs on h(w) have the same number of steps.
    out.pipeline_provenance = true;
    out.step_linear = p.step_linear * maxlen;
    out.step_const = p.step_const;
    validate_pda(out);
    return out;
}

namespace {

struct EpsRule {
    int lhs = -1;
    std::vector<Symbol> rhs; // terminal -> input symbol, nonterminal -> triple id
    Int weight = 1;
};

std::string fresh_against(std::set<std::string>& used, std::string base) {
    while (used.count(base)) base += "_";
    used.insert(base);
    return base;
}

} // namespace

CfgFromPda pda_to_cfg(const PDA& p) {
    validate_pda(p);
    if (!p.pipeline_provenance)
        throw Error("pda translation: automaton lacks construction provenance");

    // Binarize long pushes through composite stack symbols, one forced
    // silent expansion per composite, shared by content.
    std::vector<PdaRule> rules = p.rules;
    size_t base_syms = p.stack_alphabet.size();
    std::map<std::vector<int>, int> composite;
    std::vector<PdaRule> expansions;
    int nloc = static_cast<int>(p.locations.size());
    std::function<int(const std::vector<int>&)> intern_tail =
        [&](const std::vector<int>& tail) -> int {
        auto it = composite.find(tail);
        if (it != composite.end()) return it->second;
        int id = static_cast<int>(base_syms + composite.size());
        composite.emplace(tail, id);
        int second = tail.size() == 2
                         ? tail[1]
                         : intern_tail(std::vector<int>(tail.begin() + 1, tail.end()));
        for (int q = 0; q < nloc; ++q) {
            PdaRule e;
            e.location = q;
            e.stack_top = id;
            e.input = -1;
            e.next_location = q;
            e.push = {tail[0], second};
            expansions.push_back(std::move(e));
        }
        return id;
    };
    for (PdaRule& r : rules) {
        if (r.push.size() <= 2) continue;
        int c = intern_tail(std::vector<int>(r.push.begin() + 1, r.push.end()));
        r.push = {r.push[0], c};
    }
    rules.insert(rules.end(), expansions.begin(), expansions.end());
    int nsym = static_cast<int>(base_syms + composite.size());

    // Triple (q, s, q2): pop s while moving from q to q2.
    auto triple = [&](int q, int s, int q2) {
        return (q * nsym + s) * nloc + q2;
    };
    int start_id = nloc * nsym * nloc;
    int total_ids = start_id + 1;

    std::vector<EpsRule> eps;
    for (const PdaRule& r : rules) {
        std::vector<Symbol> prefix;
        if (r.input >= 0) prefix.push_back({true, r.input});
        if (r.push.empty()) {
            eps.push_back({triple(r.location, r.stack_top, r.next_location), prefix,
                           r.weight});
        } else if (r.push.size() == 1) {
            for (int q2 = 0; q2 < nloc; ++q2) {
                EpsRule e{triple(r.location, r.stack_top, q2), prefix, r.weight};
                e.rhs.push_back({false, triple(r.next_location, r.push[0], q2)});
                eps.push_back(std::move(e));
            }
        } else {
            for (int mid = 0; mid < nloc; ++mid)
                for (int q2 = 0; q2 < nloc; ++q2) {
                    EpsRule e{triple(r.location, r.stack_top, q2), prefix, r.weight};
                    e.rhs.push_back({false, triple(r.next_location, r.push[0], mid)});
                    e.rhs.push_back({false, triple(mid, r.push[1], q2)});
                    eps.push_back(std::move(e));
                }
        }
    }
    {
        size_t have = eps.size();
        for (int qf = 0; qf < nloc; ++qf) {
            if (!p.accepting[static_cast<size_t>(qf)]) continue;
            int src = triple(p.initial_location, p.bottom_symbol, qf);
            for (size_t i = 0; i < have; ++i) {
                if (eps[i].lhs != src) continue;
                EpsRule copy = eps[i];
                copy.lhs = start_id;
                eps.push_back(std::move(copy));
            }
        }
    }

    std::vector<std::vector<const EpsRule*>> by_lhs(static_cast<size_t>(total_ids));
    for (const EpsRule& e : eps) by_lhs[static_cast<size_t>(e.lhs)].push_back(&e);

    // Symbols reachable from the start; only these matter and only they are
    // checked for diverging silent multiplicities.
    std::vector<bool> reachable(static_cast<size_t>(total_ids), false);
    {
        std::vector<int> todo{start_id};
        reachable[static_cast<size_t>(start_id)] = true;
        while (!todo.empty()) {
            int a = todo.back();
            todo.pop_back();
            for (const EpsRule* e : by_lhs[static_cast<size_t>(a)])
                for (const Symbol& s : e->rhs)
                    if (!s.terminal && !reachable[static_cast<size_t>(s.index)]) {
                        reachable[static_cast<size_t>(s.index)] = true;
                        todo.push_back(s.index);
                    }
        }
    }

    // Silent-derivation counts, with cycle detection: a cycle of nullable
    // dependencies pumps to infinitely many silent derivations.
    std::vector<bool> nullable(static_cast<size_t>(total_ids), false);
    for (bool changed = true; changed;) {
        changed = false;
        for (const EpsRule& e : eps) {
            if (nullable[static_cast<size_t>(e.lhs)]) continue;
            bool all = true;
            for (const Symbol& s : e.rhs)
                all = all && !s.terminal && nullable[static_cast<size_t>(s.index)];
            if (all) {
                nullable[static_cast<size_t>(e.lhs)] = true;
                changed = true;
            }
        }
    }
    std::vector<Int> silent(static_cast<size_t>(total_ids), 0);
    std::vector<int> color(static_cast<size_t>(total_ids), 0);
    std::function<Int(int)> silent_count = [&](int a) -> Int {
        if (!nullable[static_cast<size_t>(a)]) return 0;
        if (color[static_cast<size_t>(a)] == 1)
            throw Error("pda translation: diverging silent multiplicity");
        if (color[static_cast<size_t>(a)] == 2) return silent[static_cast<size_t>(a)];
        color[static_cast<size_t>(a)] = 1;
        Int total = 0;
        for (const EpsRule* e : by_lhs[static_cast<size_t>(a)]) {
            bool all = true;
            for (const Symbol& s : e->rhs)
                all = all && !s.terminal && nullable[static_cast<size_t>(s.index)];
            if (!all) continue;
            Int prod = e->weight;
            for (const Symbol& s : e->rhs) prod *= silent_count(s.index);
            total += prod;
        }
        color[static_cast<size_t>(a)] = 2;
        silent[static_cast<size_t>(a)] = total;
        return total;
    };
    for (int a = 0; a < total_ids; ++a)
        if (reachable[static_cast<size_t>(a)]) silent_count(a);

    // Remove silent rules: every subset of nullable occurrences may vanish,
    // weighted by its silent-derivation counts.
    std::map<std::pair<int, std::vector<Symbol>>, Int> nofree;
    for (const EpsRule& e : eps) {
        if (!reachable[static_cast<size_t>(e.lhs)]) continue;
        std::vector<size_t> droppable;
        for (size_t i = 0; i < e.rhs.size(); ++i)
            if (!e.rhs[i].terminal && nullable[static_cast<size_t>(e.rhs[i].index)])
                droppable.push_back(i);
        for (size_t mask = 0; mask < (size_t{1} << droppable.size()); ++mask) {
            Int w = e.weight;
            std::vector<Symbol> rhs;
            size_t d = 0;
            for (size_t i = 0; i < e.rhs.size(); ++i) {
                bool dropped = d < droppable.size() && droppable[d] == i &&
                               ((mask >> d) & 1);
                if (d < droppable.size() && droppable[d] == i) ++d;
                if (dropped) w *= silent[static_cast<size_t>(e.rhs[i].index)];
                else rhs.push_back(e.rhs[i]);
            }
            if (rhs.empty()) continue;
            nofree[{e.lhs, std::move(rhs)}] += w;
        }
    }

    // Resolve single-nonterminal chains; a cycle again means divergence.
    std::vector<std::vector<std::pair<std::vector<Symbol>, Int>>> grouped(
        static_cast<size_t>(total_ids));
    for (const auto& [key, w] : nofree) grouped[static_cast<size_t>(key.first)].push_back({key.second, w});
    std::vector<std::map<std::vector<Symbol>, Int>> resolved(static_cast<size_t>(total_ids));
    std::vector<int> ucolor(static_cast<size_t>(total_ids), 0);
    std::function<void(int)> resolve = [&](int a) {
        if (ucolor[static_cast<size_t>(a)] == 1)
            throw Error("pda translation: diverging unit-rule multiplicity");
        if (ucolor[static_cast<size_t>(a)] == 2) return;
        ucolor[static_cast<size_t>(a)] = 1;
        auto& out = resolved[static_cast<size_t>(a)];
        for (const auto& [rhs, w] : grouped[static_cast<size_t>(a)]) {
            if (rhs.size() == 1 && !rhs[0].terminal) {
                resolve(rhs[0].index);
                for (const auto& [rhs2, w2] : resolved[static_cast<size_t>(rhs[0].index)])
                    out[rhs2] += w * w2;
            } else {
                out[rhs] += w;
            }
        }
        ucolor[static_cast<size_t>(a)] = 2;
    };
    for (int a = 0; a < total_ids; ++a)
        if (reachable[static_cast<size_t>(a)]) resolve(a);

    std::set<std::string> used(p.input_alphabet.begin(), p.input_alphabet.end());
    std::vector<std::string> names(static_cast<size_t>(total_ids));
    for (int a = 0; a < total_ids; ++a)
        names[static_cast<size_t>(a)] = fresh_against(
            used, a == start_id ? std::string("S") : "T" + std::to_string(a));

    std::vector<Rule> grules;
    for (int a = 0; a < total_ids; ++a) {
        if (!reachable[static_cast<size_t>(a)]) continue;
        for (const auto& [rhs, w] : resolved[static_cast<size_t>(a)]) {
            Rule r;
            r.lhs = a;
            r.rhs = rhs;
            r.weight = w;
            grules.push_back(std::move(r));
        }
    }

    Grammar full(p.input_alphabet, std::move(names), std::move(grules), start_id);
    Grammar pruned = prune_useless(full);
    return {pruned, pruned.start()};
}

} // namespace algser
