#pragma once

#include "algser/bigint.hpp"
#include "algser/multiindex.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace algser {

// Sparse multivariate polynomial over Int with a fixed ambient symbol list.
// Values are immutable: every operation returns a fresh polynomial and all
// binary operations insist on identical ambients. The term map is kept
// canonical (lex-ordered, no zero coefficients), so equality and the text
// serialization are structural.
class Polynomial {
public:
    using TermMap = std::map<MultiIndex, Int, LexLess>;

    Polynomial() = default; // zero over the empty ambient
    explicit Polynomial(std::vector<std::string> ambient);

    static Polynomial constant(std::vector<std::string> ambient, Int c);
    static Polynomial monomial(std::vector<std::string> ambient, MultiIndex v, Int c);
    // The symbol `name` as a degree-1 monomial; throws if absent from ambient.
    static Polynomial symbol(std::vector<std::string> ambient, const std::string& name);
    // Bulk constructor for already-combined terms; zero coefficients are dropped.
    static Polynomial from_terms(std::vector<std::string> ambient, TermMap terms);

    const std::vector<std::string>& ambient() const { return ambient_; }
    size_t arity() const { return ambient_.size(); }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    Int coefficient(const MultiIndex& v) const;
    Int constant_term() const;

    // Max total degree of the support; 0 for the zero polynomial.
    std::uint64_t degree() const;
    // Max, over terms, of the exponent sum restricted to positions [from, to).
    std::uint64_t degree_over(size_t from, size_t to) const;
    // Min total degree of the support (the valuation), empty for zero.
    std::optional<std::uint64_t> min_degree() const;
    // Least nonzero term in graded-lex order; empty for zero.
    std::optional<MultiIndex> min_graded_term() const;

    Polynomial negated() const;
    Polynomial scaled(const Int& c) const;
    Polynomial derivative(size_t symbol_index) const;
    // Every coefficient reduced into [0, p).
    Polynomial reduced_mod(const Int& p) const;
    // Terms of total degree <= n.
    Polynomial truncated(std::uint64_t n) const;
    Polynomial pow(unsigned e) const;

    bool operator==(const Polynomial& o) const = default;

    // Canonical text form: terms in descending lex order, rendered as
    // `c*x^2*y + x - 3`. Parse accepts the wider expression grammar
    // (+ - * ^, integer literals, parentheses) and round-trips to_string
    // bit-exactly.
    std::string to_string() const;
    static Polynomial parse(const std::string& text, std::vector<std::string> ambient);

    size_t symbol_index(const std::string& name) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

private:
    std::vector<std::string> ambient_;
    TermMap terms_;

    void add_term(const MultiIndex& v, const Int& c);
    static void require_same_ambient(const Polynomial& a, const Polynomial& b);
};

// Contract-named aliases for the ring operations.
Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);

} // namespace algser
