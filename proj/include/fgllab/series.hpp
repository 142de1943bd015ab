#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fgllab/coefficient.hpp"

namespace fgllab {

// working precision: truncation order N (exclusive total-degree bound) and,
// when computing p-adically, the digit count M
struct Precision {
    int order = 16;
    std::optional<int> digits;
};

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

// graded-lexicographic: total degree first, then the exponent tuple read in
// declared-variable order
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        int da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return a < b;
    }
};

// Multivariate power series truncated at a fixed total degree.  Immutable
// after construction; all operations return new objects.  A series claims
// nothing about monomials of total degree >= order().
class TruncatedSeries {
public:
    using TermMap = std::map<Exponents, Coefficient, GradedLexLess>;

    TruncatedSeries(std::vector<std::string> vars, int order, RingTag tag);

    static TruncatedSeries zero(std::vector<std::string> vars, int order, RingTag tag) {
        return TruncatedSeries(std::move(vars), order, tag);
    }
    static TruncatedSeries constant(std::vector<std::string> vars, int order,
                                    const Coefficient& c);
    static TruncatedSeries variable(std::vector<std::string> vars, int order, RingTag tag,
                                    const std::string& name);
    static TruncatedSeries from_terms(std::vector<std::string> vars, int order, RingTag tag,
                                      const std::vector<std::pair<Exponents, Coefficient>>& terms);

    const std::vector<std::string>& vars() const { return vars_; }
    int order() const { return order_; }
    const RingTag& tag() const { return tag_; }
    const TermMap& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Coefficient coefficient_at(const Exponents& e) const;
    Coefficient constant_term() const;
    // lowest total degree with a nonzero term; order() if zero
    int min_degree() const;

    TruncatedSeries operator-() const;
    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const;
    TruncatedSeries scaled(const Coefficient& c) const;
    TruncatedSeries pow(int e) const;

    TruncatedSeries truncated(int new_order) const;
    TruncatedSeries retagged(const RingTag& to) const;
    // embed into a larger variable universe (order unchanged)
    TruncatedSeries extended(const std::vector<std::string>& universe) const;
    // same data under new variable names (count must match)
    TruncatedSeries with_variables(std::vector<std::string> names) const;

    // exact quotient by one variable; throws unless every term carries it
    TruncatedSeries divided_by_variable(const std::string& name) const;

    // multiplicative inverse; the constant term must be a unit
    TruncatedSeries invert_unit() const;

    // compositional inverse of a univariate series a1*x + a2*x^2 + ... with
    // a1 a unit
    TruncatedSeries reverse() const;

    bool operator==(const TruncatedSeries& o) const;

    std::string str() const; // deterministic, graded-lex term order

    int var_index(const std::string& name) const; // -1 if absent

private:
    std::vector<std::string> vars_;
    int order_;
    RingTag tag_;
    TermMap terms_;

    void add_term(const Exponents& e, const Coefficient& c); // internal builder
    friend TruncatedSeries compose(const TruncatedSeries&,
                                   const std::map<std::string, TruncatedSeries>&);
};

// substitute series for variables; every substituted series must share one
// variable universe, ring tag, and have zero constant term.  Unassigned
// variables must exist in the target universe and substitute as themselves.
TruncatedSeries compose(const TruncatedSeries& f,
                        const std::map<std::string, TruncatedSeries>& subs);

std::string monomial_str(const std::vector<std::string>& vars, const Exponents& e);

} // namespace fgllab
