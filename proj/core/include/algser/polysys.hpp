#pragma once

#include "algser/series.hpp"

namespace algser {

// Equation system y_i = P_i(x, y). Right-hand sides live over the combined
// ambient "indeterminates then unknowns", and the value type is immutable.
class PolySystem {
public:
    PolySystem(std::vector<std::string> indets, std::vector<std::string> unknowns,
               std::vector<Polynomial> rhs);

    const std::vector<std::string>& indets() const { return indets_; }
    const std::vector<std::string>& unknowns() const { return unknowns_; }
    const std::vector<Polynomial>& rhs() const { return rhs_; }
    const std::vector<std::string>& ambient() const { return ambient_; }
    size_t indet_count() const { return indets_.size(); }
    size_t unknown_count() const { return unknowns_.size(); }

    // Max joint total degree across right-hand sides, floored at 1 so it can
    // feed exponential bound formulas directly.
    std::uint64_t degree() const;
    // Max total degree in the unknowns alone.
    std::uint64_t unknown_degree() const;
    // Total number of monomials across right-hand sides.
    size_t term_count() const;

    // Text form, round-trips exactly:
    //   vars: y
    //   indets: x
    //   y = x + 2*x*y + x*y^2
    // Blank lines and '#' comments are accepted on input.
    std::string to_string() const;
    static PolySystem parse(const std::string& text);

    bool operator==(const PolySystem&) const = default;

private:
    std::vector<std::string> indets_;
    std::vector<std::string> unknowns_;
    std::vector<std::string> ambient_;
    std::vector<Polynomial> rhs_;
};

// Properness: in every equation, each monomial in the unknowns of total
// degree <= 1 must carry a coefficient with zero constant term. That pins
// down a unique solution vector of series without constant terms.
struct PropernessViolation {
    size_t equation = 0;
    MultiIndex unknown_monomial; // over the unknowns
};
struct PropernessReport {
    bool proper = true;
    std::vector<PropernessViolation> violations;
    std::string to_string(const PolySystem& s) const;
};
PropernessReport validate_proper(const PolySystem& s);
void require_proper(const PolySystem& s);

// All right-hand sides evaluated at y := `values` (series over the
// indeterminates), truncated at total degree n. Terms are grouped by their
// unknown-part so each group costs one series multiplication.
std::vector<TruncatedSeries> eval_rhs_all(const PolySystem& s,
                                          const std::vector<TruncatedSeries>& values,
                                          std::uint64_t n, const Int* p = nullptr);

// Least-fixed-point solution, coefficientwise exact through total degree n.
// Iterating y <- P(y) from zero gains at least one order of agreement per
// round on a proper system, so n+1 rounds settle every degree <= n.
std::vector<TruncatedSeries> kleene_solve(const PolySystem& s, std::uint64_t n,
                                          const Int* p = nullptr);

// Jacobian of f_i = y_i - P_i with respect to the unknowns: entry (i, j) is
// delta_ij - dP_i/dy_j over the system ambient.
std::vector<std::vector<Polynomial>> derivative_matrix(const PolySystem& s);

} // namespace algser
