#include "fgllab/series.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fgllab {

TruncatedSeries::TruncatedSeries(std::vector<std::string> vars, int order, RingTag tag)
    : vars_(std::move(vars)), order_(order), tag_(tag) {
    if (order_ < 1) throw DomainError("truncation order must be >= 1");
    if (vars_.empty()) throw DomainError("series needs at least one variable");
    std::set<std::string> seen(vars_.begin(), vars_.end());
    if (seen.size() != vars_.size()) throw DomainError("duplicate variable name");
}

TruncatedSeries TruncatedSeries::constant(std::vector<std::string> vars, int order,
                                          const Coefficient& c) {
    TruncatedSeries s(std::move(vars), order, c.tag());
    s.add_term(Exponents(s.vars_.size(), 0), c);
    return s;
}

TruncatedSeries TruncatedSeries::variable(std::vector<std::string> vars, int order, RingTag tag,
                                          const std::string& name) {
    TruncatedSeries s(std::move(vars), order, tag);
    int i = s.var_index(name);
    if (i < 0) throw VariableMismatchError("unknown variable: " + name);
    if (order < 2) throw DomainError("order too small to hold a variable term");
    Exponents e(s.vars_.size(), 0);
    e[static_cast<std::size_t>(i)] = 1;
    s.add_term(e, Coefficient::one(tag));
    return s;
}

TruncatedSeries TruncatedSeries::from_terms(
    std::vector<std::string> vars, int order, RingTag tag,
    const std::vector<std::pair<Exponents, Coefficient>>& terms) {
    TruncatedSeries s(std::move(vars), order, tag);
    for (const auto& [e, c] : terms) {
        if (e.size() != s.vars_.size())
            throw VariableMismatchError("exponent arity does not match variable count");
        for (int x : e)
            if (x < 0) throw DomainError("negative exponent");
        s.add_term(e, c.tag() == tag ? c : c.retag(tag));
    }
    return s;
}

void TruncatedSeries::add_term(const Exponents& e, const Coefficient& c) {
    if (total_degree(e) >= order_) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        if (!c.is_zero()) terms_.emplace(e, c);
        return;
    }
    Coefficient sum = it->second + c;
    if (sum.is_zero())
        terms_.erase(it);
    else
        it->second = sum;
}

Coefficient TruncatedSeries::coefficient_at(const Exponents& e) const {
    auto it = terms_.find(e);
    if (it == terms_.end()) return Coefficient::zero(tag_);
    return it->second;
}

Coefficient TruncatedSeries::constant_term() const {
    return coefficient_at(Exponents(vars_.size(), 0));
}

int TruncatedSeries::min_degree() const {
    if (terms_.empty()) return order_;
    return total_degree(terms_.begin()->first);
}

int TruncatedSeries::var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) return -1;
    return static_cast<int>(it - vars_.begin());
}

static void require_compatible(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (!(a.tag() == b.tag()))
        throw RingMismatchError("ring mismatch: " + a.tag().name() + " vs " + b.tag().name());
    if (a.vars() != b.vars())
        throw VariableMismatchError("variable universe mismatch");
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r(vars_, order_, tag_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    require_compatible(*this, o);
    TruncatedSeries r(vars_, std::min(order_, o.order_), tag_);
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
    require_compatible(*this, o);
    TruncatedSeries r(vars_, std::min(order_, o.order_), tag_);
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    require_compatible(*this, o);
    TruncatedSeries r(vars_, std::min(order_, o.order_), tag_);
    const std::size_t n = vars_.size();
    Exponents sum(n, 0);
    for (const auto& [ea, ca] : terms_) {
        int da = total_degree(ea);
        if (da >= r.order_) break; // graded order: nothing smaller follows
        for (const auto& [eb, cb] : o.terms_) {
            if (da + total_degree(eb) >= r.order_) break;
            for (std::size_t i = 0; i < n; ++i) sum[i] = ea[i] + eb[i];
            r.add_term(sum, ca * cb);
        }
    }
    return r;
}

TruncatedSeries TruncatedSeries::scaled(const Coefficient& c) const {
    if (!(c.tag() == tag_))
        throw RingMismatchError("scalar ring mismatch");
    TruncatedSeries r(vars_, order_, tag_);
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

TruncatedSeries TruncatedSeries::pow(int e) const {
    if (e < 0) throw DomainError("negative power");
    TruncatedSeries acc = constant(vars_, order_, Coefficient::one(tag_));
    for (int i = 0; i < e; ++i) acc = acc * *this;
    return acc;
}

TruncatedSeries TruncatedSeries::truncated(int new_order) const {
    if (new_order > order_)
        throw DomainError("cannot raise truncation order from " + std::to_string(order_) +
                          " to " + std::to_string(new_order));
    TruncatedSeries r(vars_, new_order, tag_);
    for (const auto& [e, c] : terms_) r.add_term(e, c);
    return r;
}

TruncatedSeries TruncatedSeries::retagged(const RingTag& to) const {
    TruncatedSeries r(vars_, order_, to);
    for (const auto& [e, c] : terms_) {
        Coefficient rc = [&] {
            try {
                return c.retag(to);
            } catch (NonIntegralError& err) {
                throw NonIntegralError(std::string(err.what()) + " at monomial " +
                                           monomial_str(vars_, e),
                                       monomial_str(vars_, e));
            }
        }();
        r.add_term(e, rc); // may vanish mod p^M
    }
    return r;
}

TruncatedSeries TruncatedSeries::extended(const std::vector<std::string>& universe) const {
    std::vector<int> where(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        auto it = std::find(universe.begin(), universe.end(), vars_[i]);
        if (it == universe.end())
            throw VariableMismatchError("universe is missing variable " + vars_[i]);
        where[i] = static_cast<int>(it - universe.begin());
    }
    TruncatedSeries r(universe, order_, tag_);
    for (const auto& [e, c] : terms_) {
        Exponents ne(universe.size(), 0);
        for (std::size_t i = 0; i < vars_.size(); ++i)
            ne[static_cast<std::size_t>(where[i])] = e[i];
        r.add_term(ne, c);
    }
    return r;
}

TruncatedSeries TruncatedSeries::with_variables(std::vector<std::string> names) const {
    if (names.size() != vars_.size())
        throw VariableMismatchError("renaming expects " + std::to_string(vars_.size()) +
                                    " variable names, got " + std::to_string(names.size()));
    TruncatedSeries r(std::move(names), order_, tag_);
    r.terms_ = terms_;
    return r;
}

TruncatedSeries TruncatedSeries::divided_by_variable(const std::string& name) const {
    int idx = var_index(name);
    if (idx < 0) throw VariableMismatchError("unknown variable: " + name);
    TruncatedSeries r(vars_, order_, tag_);
    for (const auto& [e, c] : terms_) {
        if (e[static_cast<std::size_t>(idx)] < 1)
            throw DomainError("term " + monomial_str(vars_, e) + " is not divisible by " + name);
        Exponents ne = e;
        ne[static_cast<std::size_t>(idx)] -= 1;
        r.add_term(ne, c);
    }
    return r;
}

TruncatedSeries TruncatedSeries::invert_unit() const {
    Coefficient c0 = constant_term();
    if (!c0.is_unit())
        throw NotAUnitError("constant term " + c0.str() + " is not a unit in " + tag_.name());
    Coefficient c0inv = c0.inverse();
    // 1/f = c0inv * sum_k (1 - f*c0inv)^k
    TruncatedSeries one = constant(vars_, order_, Coefficient::one(tag_));
    TruncatedSeries u = one - scaled(c0inv);
    TruncatedSeries acc = one;
    TruncatedSeries upow = one;
    for (int k = 1; k < order_; ++k) {
        upow = upow * u;
        if (upow.is_zero()) break;
        acc = acc + upow;
    }
    return acc.scaled(c0inv);
}

TruncatedSeries TruncatedSeries::reverse() const {
    if (vars_.size() != 1)
        throw DomainError("reverse needs a univariate series");
    if (!constant_term().is_zero())
        throw DomainError("reverse needs a zero constant term");
    Coefficient a1 = coefficient_at({1});
    if (!a1.is_unit())
        throw NotAUnitError("linear coefficient " + a1.str() + " is not a unit");
    Coefficient a1inv = a1.inverse();

    // build g degree by degree so that f(g(x)) = x
    TruncatedSeries g = variable(vars_, order_, tag_, vars_[0]).scaled(a1inv);
    for (int k = 2; k < order_; ++k) {
        TruncatedSeries fg = compose(*this, {{vars_[0], g}});
        Coefficient err = fg.coefficient_at({k});
        if (err.is_zero()) continue;
        TruncatedSeries corr(vars_, order_, tag_);
        corr.add_term({k}, -(err * a1inv));
        g = g + corr;
    }
    return g;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
    return vars_ == o.vars_ && order_ == o.order_ && tag_ == o.tag_ && terms_ == o.terms_;
}

TruncatedSeries compose(const TruncatedSeries& f,
                        const std::map<std::string, TruncatedSeries>& subs) {
    if (subs.empty()) throw DomainError("compose needs at least one substitution");
    const TruncatedSeries& model = subs.begin()->second;
    const std::vector<std::string>& universe = model.vars();
    int order = std::min(f.order(), model.order());
    for (const auto& [name, g] : subs) {
        if (f.var_index(name) < 0)
            throw VariableMismatchError("substitution for unknown variable " + name);
        if (g.vars() != universe) throw VariableMismatchError("substitutions disagree on universe");
        if (!(g.tag() == f.tag())) throw RingMismatchError("substitution ring mismatch");
        if (!g.constant_term().is_zero())
            throw DomainError("substituted series for " + name + " has a nonzero constant term");
        order = std::min(order, g.order());
    }

    // per-variable substitute: mapped series, or the variable itself; built
    // lazily so unused variables never need to exist in the target universe
    std::vector<std::optional<TruncatedSeries>> image(f.vars().size());
    auto substitute_for = [&](std::size_t vi) -> const TruncatedSeries& {
        if (!image[vi]) {
            const std::string& v = f.vars()[vi];
            auto it = subs.find(v);
            if (it != subs.end())
                image[vi] = it->second.truncated(order);
            else
                image[vi] = TruncatedSeries::variable(universe, order, f.tag(), v);
        }
        return *image[vi];
    };

    // power cache per variable, filled on demand
    std::vector<std::vector<TruncatedSeries>> powers(image.size());
    auto power = [&](std::size_t vi, int e) -> const TruncatedSeries& {
        auto& cache = powers[vi];
        if (cache.empty())
            cache.push_back(TruncatedSeries::constant(universe, order,
                                                      Coefficient::one(f.tag())));
        while (static_cast<int>(cache.size()) <= e)
            cache.push_back(cache.back() * substitute_for(vi));
        return cache[static_cast<std::size_t>(e)];
    };

    TruncatedSeries acc(universe, order, f.tag());
    for (const auto& [e, c] : f.terms()) {
        // every image has zero constant term, so a monomial of total degree d
        // contributes nothing below degree d; skip those at or past the order
        if (total_degree(e) >= order) break;
        TruncatedSeries term = TruncatedSeries::constant(universe, order, c);
        for (std::size_t vi = 0; vi < e.size(); ++vi)
            if (e[vi] > 0) term = term * power(vi, e[vi]);
        acc = acc + term;
    }
    return acc;
}

std::string monomial_str(const std::vector<std::string>& vars, const Exponents& e) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (e[i] == 0) continue;
        if (!first) os << "*";
        os << vars[i];
        if (e[i] > 1) os << "^" << e[i];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

std::string TruncatedSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        std::string cs = c.str();
        if (!first) {
            if (!cs.empty() && cs[0] == '-') {
                os << " - ";
                cs = cs.substr(1);
            } else {
                os << " + ";
            }
        }
        bool is_const = total_degree(e) == 0;
        if (is_const) {
            os << cs;
        } else if (cs == "1") {
            os << monomial_str(vars_, e);
        } else if (cs == "-1" && first) {
            os << "-" << monomial_str(vars_, e);
        } else {
            os << cs << "*" << monomial_str(vars_, e);
        }
        first = false;
    }
    return os.str();
}

} // namespace fgllab
