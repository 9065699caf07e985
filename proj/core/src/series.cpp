#include "algser/series.hpp"

#include <algorithm>
#include <vector>

namespace algser {

TruncatedSeries::TruncatedSeries(Polynomial body, std::uint64_t order_bound)
    : body_(body.truncated(order_bound)), bound_(order_bound) {}

TruncatedSeries TruncatedSeries::zero(std::vector<std::string> ambient, std::uint64_t bound) {
    return TruncatedSeries(Polynomial(std::move(ambient)), bound);
}

Valuation TruncatedSeries::ord() const {
    auto d = body_.min_degree();
    if (!d) return Valuation::at_least(bound_ + 1);
    return Valuation::exactly(*d);
}

TruncatedSeries TruncatedSeries::tail(std::uint64_t D) const {
    if (D > bound_) throw Error("tail cutoff exceeds series order bound");
    return TruncatedSeries(body_ - body_.truncated(D), bound_);
}

TruncatedSeries TruncatedSeries::reduced_mod(const Int& p) const {
    return TruncatedSeries(body_.reduced_mod(p), bound_);
}

TruncatedSeries TruncatedSeries::truncated(std::uint64_t n) const {
    return TruncatedSeries(body_.truncated(n), std::min(bound_, n));
}

Valuation series_ord(const TruncatedSeries& f) { return f.ord(); }

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
    std::uint64_t n = std::min(a.order_bound(), b.order_bound());
    return TruncatedSeries(a.body() + b.body(), n);
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    std::uint64_t n = std::min(a.order_bound(), b.order_bound());
    return TruncatedSeries(a.body() - b.body(), n);
}

namespace {

// Box layout over [0..n]^k: offsets are additive across monomial products,
// so the convolution inner loop costs one add per pair. cells saturates to
// UINT64_MAX when the box would not fit, which routes callers to the sparse
// path.
struct BoxShape {
    std::uint64_t side;
    std::vector<std::uint64_t> stride;
    std::uint64_t cells;

    BoxShape(size_t k, std::uint64_t n) : side(n + 1), stride(k, 0), cells(1) {
        for (size_t i = k; i-- > 0;) {
            stride[i] = cells;
            if (cells > (std::uint64_t(1) << 40) / side) {
                cells = UINT64_MAX;
                return;
            }
            cells *= side;
        }
    }

    std::uint64_t offset(const MultiIndex& v) const {
        std::uint64_t o = 0;
        for (size_t i = 0; i < v.size(); ++i) o += v[i] * stride[i];
        return o;
    }

    MultiIndex decode(std::uint64_t off, size_t k) const {
        MultiIndex v(k);
        for (size_t i = 0; i < k; ++i) {
            v[i] = static_cast<std::uint32_t>(off / stride[i]);
            off %= stride[i];
        }
        return v;
    }
};

constexpr std::uint64_t kDenseI64Cap = std::uint64_t(1) << 21;
constexpr std::uint64_t kDenseIntCap = std::uint64_t(1) << 19;

struct SupportEntry {
    std::uint64_t offset;
    std::uint64_t degree;
    const Int* coef;
};

std::vector<SupportEntry> sorted_support(const Polynomial& p, const BoxShape& box) {
    std::vector<SupportEntry> s;
    s.reserve(p.term_count());
    for (auto& [v, c] : p.terms()) s.push_back({box.offset(v), total_degree(v), &c});
    std::sort(s.begin(), s.end(),
              [](const SupportEntry& a, const SupportEntry& b) { return a.degree < b.degree; });
    return s;
}

// Both operands small enough for the machine-word lane: |c| < 2^52 keeps
// every pairwise product under 2^104, and at most 2^21 addends per cell
// stay clear of the __int128 ceiling. The lane is exact, not approximate.
bool fits_i64_lane(const Polynomial& p) {
    static const Int limit = Int(1) << 52;
    for (auto& [v, c] : p.terms())
        if (c >= limit || c <= -limit) return false;
    return true;
}

Int int128_to_int(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : v;
    Int c = Int(static_cast<std::uint64_t>(u >> 64));
    c <<= 64;
    c += static_cast<std::uint64_t>(u);
    return neg ? -c : c;
}

Polynomial dense_mul_i64(const Polynomial& a, const Polynomial& b, std::uint64_t n,
                         const BoxShape& box) {
    auto sa = sorted_support(a, box);
    auto sb = sorted_support(b, box);
    std::vector<std::uint64_t> boff(sb.size());
    std::vector<std::uint64_t> bdeg(sb.size());
    std::vector<std::int64_t> bcoef(sb.size());
    for (size_t j = 0; j < sb.size(); ++j) {
        boff[j] = sb[j].offset;
        bdeg[j] = sb[j].degree;
        bcoef[j] = static_cast<std::int64_t>(*sb[j].coef);
    }
    std::vector<__int128> acc(box.cells, 0);
    for (auto& ea : sa) {
        if (ea.degree > n) break;
        std::uint64_t room = n - ea.degree;
        auto ca = static_cast<std::int64_t>(*ea.coef);
        std::uint64_t base = ea.offset;
        for (size_t j = 0; j < sb.size() && bdeg[j] <= room; ++j)
            acc[base + boff[j]] += static_cast<__int128>(ca) * bcoef[j];
    }
    size_t k = a.ambient().size();
    Polynomial::TermMap terms;
    for (std::uint64_t off = 0; off < box.cells; ++off)
        if (acc[off] != 0) terms.emplace(box.decode(off, k), int128_to_int(acc[off]));
    return Polynomial::from_terms(a.ambient(), std::move(terms));
}

Polynomial dense_mul_int(const Polynomial& a, const Polynomial& b, std::uint64_t n,
                         const BoxShape& box) {
    auto sa = sorted_support(a, box);
    auto sb = sorted_support(b, box);
    std::vector<Int> acc(box.cells, Int(0));
    for (auto& ea : sa) {
        if (ea.degree > n) break;
        std::uint64_t room = n - ea.degree;
        const Int& ca = *ea.coef;
        std::uint64_t base = ea.offset;
        for (auto& eb : sb) {
            if (eb.degree > room) break;
            acc[base + eb.offset] += ca * *eb.coef;
        }
    }
    size_t k = a.ambient().size();
    Polynomial::TermMap terms;
    for (std::uint64_t off = 0; off < box.cells; ++off)
        if (acc[off] != 0) terms.emplace(box.decode(off, k), std::move(acc[off]));
    return Polynomial::from_terms(a.ambient(), std::move(terms));
}

Polynomial sparse_mul(const Polynomial& a, const Polynomial& b, std::uint64_t n) {
    struct Term {
        const MultiIndex* v;
        std::uint64_t degree;
        const Int* c;
    };
    std::vector<Term> sb;
    sb.reserve(b.term_count());
    for (auto& [v, c] : b.terms()) sb.push_back({&v, total_degree(v), &c});
    std::sort(sb.begin(), sb.end(), [](const Term& x, const Term& y) {
        return x.degree < y.degree;
    });
    Polynomial::TermMap terms;
    for (auto& [u, cu] : a.terms()) {
        std::uint64_t du = total_degree(u);
        if (du > n) continue;
        std::uint64_t room = n - du;
        for (auto& t : sb) {
            if (t.degree > room) break;
            Int prod = cu * *t.c;
            auto [it, fresh] = terms.try_emplace(mi_add(u, *t.v), prod);
            if (!fresh) it->second += prod;
        }
    }
    return Polynomial::from_terms(a.ambient(), std::move(terms));
}

} // namespace

TruncatedSeries series_trunc_mul(const TruncatedSeries& a, const TruncatedSeries& b,
                                 std::uint64_t n, const Int* p) {
    if (a.ambient() != b.ambient()) throw Error("ambient mismatch between series operands");
    if (n > a.order_bound() || n > b.order_bound())
        throw Error("requested order exceeds available precision");
    size_t k = a.ambient().size();
    Polynomial prod(a.ambient());
    if (k == 0 || a.is_zero() || b.is_zero()) {
        prod = (a.body() * b.body()).truncated(n);
    } else {
        BoxShape box(k, n);
        if (box.cells <= kDenseI64Cap && fits_i64_lane(a.body()) && fits_i64_lane(b.body()))
            prod = dense_mul_i64(a.body(), b.body(), n, box);
        else if (box.cells <= kDenseIntCap)
            prod = dense_mul_int(a.body(), b.body(), n, box);
        else
            prod = sparse_mul(a.body(), b.body(), n);
    }
    if (p) prod = prod.reduced_mod(*p);
    return TruncatedSeries(std::move(prod), n);
}

TruncatedSeries series_invert_unit(const TruncatedSeries& u, std::uint64_t n, const Int* p) {
    if (n > u.order_bound()) throw Error("requested order exceeds available precision");
    Int e = u.body().constant_term();
    if (e != 1 && e != -1) throw Error("series unit inversion needs constant term +1 or -1");
    // u = e + g with ord(g) >= 1, so 1/u = e * sum_j (-e*g)^j. Horner over
    // the geometric sum needs n truncated products.
    Polynomial g = u.body() - Polynomial::constant(u.ambient(), e);
    Polynomial h = (e == 1) ? g.negated() : g; // -e*g
    TruncatedSeries hs(std::move(h), n);
    TruncatedSeries one(Polynomial::constant(u.ambient(), 1), n);
    TruncatedSeries acc = one;
    for (std::uint64_t j = 0; j < n; ++j)
        acc = series_add(series_trunc_mul(hs, acc, n, p), one);
    Polynomial r = acc.body();
    if (e == -1) r = r.negated();
    if (p) r = r.reduced_mod(*p);
    return TruncatedSeries(std::move(r), n);
}

} // namespace algser
