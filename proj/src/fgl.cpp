#include "fgllab/fgl.hpp"

namespace fgllab {

bool is_prime(long n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(mpz_class(n).get_mpz_t(), 40) != 0;
}

namespace {

const std::vector<std::string> XY = {"x", "y"};
const std::vector<std::string> XYW = {"x", "y", "w"};

TruncatedSeries var_of(const std::vector<std::string>& universe, int order, const RingTag& tag,
                       const std::string& name) {
    return TruncatedSeries::variable(universe, order, tag, name);
}

void record(AxiomReport& rep, bool& flag, const std::string& axiom, const TruncatedSeries& lhs,
            const TruncatedSeries& rhs) {
    TruncatedSeries diff = lhs - rhs;
    if (diff.is_zero()) {
        flag = true;
        return;
    }
    flag = false;
    const Exponents& mono = diff.terms().begin()->first;
    rep.issues.push_back({axiom, lhs.vars(), mono, lhs.coefficient_at(mono).str(),
                          rhs.coefficient_at(mono).str()});
}

} // namespace

AxiomReport check_axioms(const TruncatedSeries& F) {
    if (F.vars() != XY)
        throw VariableMismatchError("a candidate law must use the variables (x, y)");
    AxiomReport rep;
    const RingTag tag = F.tag();
    const int N = F.order();

    TruncatedSeries x2 = var_of(XY, N, tag, "x");
    TruncatedSeries y2 = var_of(XY, N, tag, "y");
    TruncatedSeries zero2 = TruncatedSeries::zero(XY, N, tag);

    // unit: F(x, 0) = x and F(0, y) = y
    TruncatedSeries fx0 = compose(F, {{"y", zero2}});
    TruncatedSeries f0y = compose(F, {{"x", zero2}});
    if (fx0 == x2 && f0y == y2) {
        rep.unit_ok = true;
    } else {
        record(rep, rep.unit_ok, "unit", fx0 == x2 ? f0y : fx0, fx0 == x2 ? y2 : x2);
    }

    record(rep, rep.commutative_ok, "commutativity", F,
           compose(F, {{"x", y2}, {"y", x2}}));

    TruncatedSeries x3 = var_of(XYW, N, tag, "x");
    TruncatedSeries y3 = var_of(XYW, N, tag, "y");
    TruncatedSeries w3 = var_of(XYW, N, tag, "w");
    TruncatedSeries Fxy = compose(F, {{"x", x3}, {"y", y3}});
    TruncatedSeries Fyw = compose(F, {{"x", y3}, {"y", w3}});
    record(rep, rep.associative_ok, "associativity", compose(F, {{"x", Fxy}, {"y", w3}}),
           compose(F, {{"x", x3}, {"y", Fyw}}));
    return rep;
}

FormalGroupLaw FormalGroupLaw::additive(int order, RingTag tag) {
    TruncatedSeries F = var_of(XY, order, tag, "x") + var_of(XY, order, tag, "y");
    return {std::move(F), FglKind::Additive, "additive", std::nullopt};
}

FormalGroupLaw FormalGroupLaw::multiplicative(int order, RingTag tag) {
    TruncatedSeries x = var_of(XY, order, tag, "x");
    TruncatedSeries y = var_of(XY, order, tag, "y");
    TruncatedSeries F = x + y + x * y;
    return {std::move(F), FglKind::Multiplicative, "multiplicative", std::nullopt};
}

FormalGroupLaw FormalGroupLaw::from_log(const TruncatedSeries& log, std::string name) {
    if (log.vars().size() != 1) throw DomainError("from_log: log must be univariate");
    if (!log.tag().is_exact())
        throw DomainError("from_log: log must live in an exact ring, got " + log.tag().name());
    if (!log.constant_term().is_zero())
        throw DomainError("from_log: log must have zero constant term");
    if (!log.coefficient_at({1}).is_one())
        throw DomainError("from_log: log must start with 1*x");

    TruncatedSeries exp = log.reverse();
    const int N = log.order();
    const RingTag tag = log.tag();
    TruncatedSeries lx = compose(log, {{log.vars()[0], var_of(XY, N, tag, "x")}});
    TruncatedSeries ly = compose(log, {{log.vars()[0], var_of(XY, N, tag, "y")}});
    TruncatedSeries F = compose(exp, {{exp.vars()[0], lx + ly}});

    AxiomReport rep = check_axioms(F);
    if (!rep.all_ok())
        throw DomainError("from_log produced a non-law; this is a bug"); // unreachable
    return {std::move(F), FglKind::FromLog, std::move(name), log};
}

FormalGroupLaw FormalGroupLaw::custom(const TruncatedSeries& F, std::string name) {
    AxiomReport rep = check_axioms(F);
    if (!rep.all_ok()) {
        const AxiomIssue& issue = rep.issues.front();
        throw DomainError("not a formal group law: " + issue.axiom + " fails at " +
                          monomial_str(issue.vars, issue.monomial) + " (" + issue.lhs +
                          " vs " + issue.rhs + ")");
    }
    return {F, FglKind::Custom, std::move(name), std::nullopt};
}

FormalGroupLaw FormalGroupLaw::retagged(const RingTag& to) const {
    return {F_.retagged(to), kind_, name_, log_};
}

FormalGroupLaw FormalGroupLaw::to_p_adic(long p, int digits) const {
    return retagged(RingTag::p_adic(p, digits));
}

FormalGroupLaw FormalGroupLaw::p_localized(long p) const {
    return retagged(RingTag::p_local(p));
}

TruncatedSeries FormalGroupLaw::sum_of(const TruncatedSeries& a, const TruncatedSeries& b) const {
    return compose(F_, {{"x", a}, {"y", b}});
}

TruncatedSeries formal_inverse(const FormalGroupLaw& G) {
    const int N = G.order();
    const RingTag tag = G.tag();
    const std::vector<std::string> X = {"x"};
    TruncatedSeries x = TruncatedSeries::variable(X, N, tag, "x");

    // iota = -x - ... solved degree by degree from F(x, iota) = 0; the y-linear
    // coefficient of F is 1, so each correction is minus the lowest error term
    TruncatedSeries iota = -x;
    for (int k = 2; k < N; ++k) {
        TruncatedSeries err = G.sum_of(x, iota);
        Coefficient c = err.coefficient_at({k});
        if (c.is_zero()) continue;
        iota = iota - TruncatedSeries::from_terms(X, N, tag, {{{k}, c}});
    }
    TruncatedSeries residue = G.sum_of(x, iota);
    if (!residue.is_zero())
        throw DomainError("formal_inverse failed to converge"); // unreachable
    return iota;
}

TruncatedSeries formal_sum(const FormalGroupLaw& G, const std::vector<TruncatedSeries>& terms) {
    if (terms.empty())
        return TruncatedSeries::zero({"x"}, G.order(), G.tag());
    TruncatedSeries acc = terms[0];
    for (std::size_t i = 1; i < terms.size(); ++i) acc = G.sum_of(acc, terms[i]);
    return acc;
}

namespace {

TruncatedSeries n_series_positive(const FormalGroupLaw& G, long n, const TruncatedSeries& x) {
    if (n == 1) return x;
    if (n <= 8) {
        TruncatedSeries acc = x;
        for (long i = 2; i <= n; ++i) acc = G.sum_of(acc, x);
        return acc;
    }
    TruncatedSeries half = n_series_positive(G, n / 2, x);
    TruncatedSeries dbl = G.sum_of(half, half);
    if (n % 2 == 0) return dbl;
    return G.sum_of(dbl, x);
}

} // namespace

NSeries n_series(const FormalGroupLaw& G, long n) {
    const std::vector<std::string> X = {"x"};
    TruncatedSeries x = TruncatedSeries::variable(X, G.order(), G.tag(), "x");
    TruncatedSeries out = TruncatedSeries::zero(X, G.order(), G.tag());
    if (n > 0) {
        out = n_series_positive(G, n, x);
    } else if (n < 0) {
        TruncatedSeries pos = n_series_positive(G, -n, x);
        out = compose(formal_inverse(G), {{"x", pos}});
    }
    if (!out.constant_term().is_zero() ||
        !(out.coefficient_at({1}) == Coefficient::from_int(G.tag(), n)))
        throw DomainError("n_series invariant violated"); // unreachable
    return {n, out};
}

TruncatedSeries divided_p_series(const FormalGroupLaw& G, long p) {
    if (!is_prime(p)) throw DomainError("divided_p_series: p must be prime");
    return n_series(G, p).series.divided_by_variable("x");
}

TruncatedSeries honda_log(long p, int height, int order) {
    if (!is_prime(p)) throw DomainError("honda_log: p must be prime");
    if (height < 1) throw DomainError("honda_log: height must be >= 1");
    RingTag tag = RingTag::rational();
    std::vector<std::pair<Exponents, Coefficient>> terms;
    mpz_class step = pow_z(mpz_class(p), static_cast<unsigned long>(height));
    mpz_class expn = 1;
    mpq_class denom = 1;
    for (int i = 0; expn < order; ++i) {
        terms.push_back({{static_cast<int>(expn.get_si())},
                         Coefficient(tag, 1 / denom)});
        expn *= step;
        denom *= p;
    }
    return TruncatedSeries::from_terms({"x"}, order, tag, terms);
}

} // namespace fgllab
