#include "fgllab/quotient_ring.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace fgllab {

namespace {

// relation series [p](z) or <p>(z) over Z/p^M at the requested order
TruncatedSeries relation_series(const FormalGroupLaw& G, long p, const Precision& prec,
                                PreparedQuotientRing::Model model) {
    if (!is_prime(p)) throw DomainError("p must be prime, got " + std::to_string(p));
    int M = prec.digits.value_or(8);
    if (M < 1) throw DomainError("digit count must be >= 1");
    if (G.order() < prec.order)
        throw DomainError("law is truncated at order " + std::to_string(G.order()) +
                          ", below the requested order " + std::to_string(prec.order));
    FormalGroupLaw Gp = G.to_p_adic(p, M);
    TruncatedSeries rel = model == PreparedQuotientRing::Model::PSeries
                              ? n_series(Gp, p).series
                              : divided_p_series(Gp, p);
    return rel.truncated(prec.order).with_variables({"z"});
}

bool is_constant_series(const TruncatedSeries& f) {
    return f.term_count() == 0 ||
           (f.term_count() == 1 && total_degree(f.terms().begin()->first) == 0);
}

} // namespace

PreparedQuotientRing build_bcp_ring(const FormalGroupLaw& G, long p, Precision prec) {
    PreparedQuotientRing r;
    r.p_ = p;
    r.model_ = PreparedQuotientRing::Model::PSeries;
    r.relation_ = relation_series(G, p, prec, r.model_);
    r.order_ = r.relation_.order();
    r.tag_ = r.relation_.tag();

    auto d = weierstrass_degree(r.relation_);
    if (!d)
        throw UnsupportedHeightError(
            "the p-series has no unit coefficient within the truncation order "
            "(infinite height to this precision); work in the transfer quotient instead");
    WeierstrassFactorization wf = weierstrass_prepare(r.relation_);
    r.backend_ = PreparedQuotientRing::Backend::WeierstrassPoly;
    r.degree_ = wf.degree;
    r.distinguished_ = wf.distinguished;
    r.ideal_digits_ = std::min(wf.guaranteed_digits, r.order_ / r.degree_);
    for (int k = 0; k <= std::max(r.order_, 2 * r.degree_); ++k)
        r.rows_.push_back(r.row_for(k));
    return r;
}

PreparedQuotientRing build_transfer_quotient(const FormalGroupLaw& G, long p, Precision prec) {
    PreparedQuotientRing r;
    r.p_ = p;
    r.model_ = PreparedQuotientRing::Model::DividedPSeries;
    r.relation_ = relation_series(G, p, prec, r.model_);
    r.order_ = r.relation_.order();
    r.tag_ = r.relation_.tag();

    auto d = weierstrass_degree(r.relation_);
    if (d && *d == 0)
        throw DomainError("the divided p-series is a unit; the quotient collapses to zero");
    if (d) {
        WeierstrassFactorization wf = weierstrass_prepare(r.relation_);
        r.backend_ = PreparedQuotientRing::Backend::WeierstrassPoly;
        r.degree_ = wf.degree;
        r.distinguished_ = wf.distinguished;
        r.ideal_digits_ = std::min(wf.guaranteed_digits, r.order_ / r.degree_);
        for (int k = 0; k <= std::max(r.order_, 2 * r.degree_); ++k)
            r.rows_.push_back(r.row_for(k));
        return r;
    }
    if (is_constant_series(r.relation_)) {
        Coefficient c = r.relation_.constant_term();
        r.backend_ = PreparedQuotientRing::Backend::ConstantQuotient;
        // a relation vanishing mod p^M adds nothing beyond the ambient p^M,
        // so the quotient degenerates to plain Z/p^M coefficients
        r.constant_valuation_ = c.is_zero() ? r.tag_.digits : c.valuation(p);
        r.ideal_digits_ = r.constant_valuation_;
        return r;
    }
    throw UnsupportedHeightError(
        "the divided p-series has no unit coefficient within the truncation order and is not "
        "constant; no normal form available at this precision");
}

int PreparedQuotientRing::degree() const {
    if (backend_ != Backend::WeierstrassPoly)
        throw DomainError("constant-relation quotient has no Weierstrass degree");
    return degree_;
}

const TruncatedSeries& PreparedQuotientRing::distinguished() const {
    if (backend_ != Backend::WeierstrassPoly)
        throw DomainError("constant-relation quotient has no distinguished polynomial");
    return distinguished_;
}

int PreparedQuotientRing::constant_valuation() const {
    if (backend_ != Backend::ConstantQuotient)
        throw DomainError("relation is not constant");
    return constant_valuation_;
}

std::optional<int> PreparedQuotientRing::detected_height() const {
    if (backend_ != Backend::WeierstrassPoly) return std::nullopt;
    long m = model_ == Model::PSeries ? degree_ : degree_ + 1;
    int h = 0;
    while (m % p_ == 0) {
        m /= p_;
        ++h;
    }
    if (m != 1 || h == 0) return std::nullopt;
    return h;
}

// normal form of z^k: walk up from the largest precomputed row, folding
// z^d -> -(lower part of the distinguished polynomial)
std::vector<Coefficient> PreparedQuotientRing::row_for(int k) const {
    const int d = degree_;
    std::vector<Coefficient> row(static_cast<std::size_t>(d), Coefficient::zero(tag_));
    if (k < static_cast<int>(rows_.size())) return rows_[static_cast<std::size_t>(k)];
    int start = 0;
    if (k < d) {
        row[static_cast<std::size_t>(k)] = Coefficient::one(tag_);
        return row;
    }
    if (!rows_.empty()) {
        start = static_cast<int>(rows_.size()) - 1;
        row = rows_.back();
    } else {
        row[0] = Coefficient::one(tag_);
    }
    for (int j = start; j < k; ++j) {
        Coefficient carry = row[static_cast<std::size_t>(d - 1)];
        for (int i = d - 1; i >= 1; --i) row[static_cast<std::size_t>(i)] = row[static_cast<std::size_t>(i - 1)];
        row[0] = Coefficient::zero(tag_);
        if (!carry.is_zero())
            for (int i = 0; i < d; ++i)
                row[static_cast<std::size_t>(i)] =
                    row[static_cast<std::size_t>(i)] - carry * distinguished_.coefficient_at({i});
    }
    return row;
}

TruncatedSeries PreparedQuotientRing::reduce(const TruncatedSeries& f) const {
    if (backend_ == Backend::ConstantQuotient)
        return f.retagged(RingTag::p_adic(p_, constant_valuation_));

    if (!(f.tag() == tag_))
        throw RingMismatchError("series lives in " + f.tag().name() + ", the quotient in " +
                                tag_.name());
    int idx = f.var_index(var_);
    if (idx < 0) throw VariableMismatchError("series does not involve the ring variable " + var_);

    std::map<Exponents, Coefficient, GradedLexLess> acc;
    for (const auto& [e, c] : f.terms()) {
        int k = e[static_cast<std::size_t>(idx)];
        std::vector<Coefficient> row = row_for(k);
        for (int j = 0; j < degree_; ++j) {
            if (row[static_cast<std::size_t>(j)].is_zero()) continue;
            Exponents ne = e;
            ne[static_cast<std::size_t>(idx)] = j;
            auto it = acc.find(ne);
            if (it == acc.end())
                acc.emplace(ne, c * row[static_cast<std::size_t>(j)]);
            else
                it->second = it->second + c * row[static_cast<std::size_t>(j)];
        }
    }
    std::vector<std::pair<Exponents, Coefficient>> terms(acc.begin(), acc.end());
    return TruncatedSeries::from_terms(f.vars(), f.order(), tag_, terms);
}

TransferIdeal transfer_ideal(const FormalGroupLaw& G, long p, Precision prec) {
    TransferIdeal id{relation_series(G, p, prec, PreparedQuotientRing::Model::DividedPSeries),
                     build_bcp_ring(G, p, prec)};
    Coefficient c0 = id.generator.constant_term();
    assert(c0 == Coefficient::from_int(c0.tag(), p));
    return id;
}

// ---------------------------------------------------------------------------
// fixed points of the unit-group action

namespace {

long primitive_root(long p) {
    if (p == 2) return 1;
    std::vector<long> qs; // prime factors of p-1
    long m = p - 1;
    for (long q = 2; q * q <= m; ++q)
        if (m % q == 0) {
            qs.push_back(q);
            while (m % q == 0) m /= q;
        }
    if (m > 1) qs.push_back(m);
    for (long g = 2; g < p; ++g) {
        bool ok = true;
        for (long q : qs) {
            mpz_class r;
            mpz_powm_ui(r.get_mpz_t(), mpz_class(g).get_mpz_t(),
                        static_cast<unsigned long>((p - 1) / q), mpz_class(p).get_mpz_t());
            if (r == 1) {
                ok = false;
                break;
            }
        }
        if (ok) return g;
    }
    throw DomainError("no primitive root found; is p prime?");
}

mpz_class mod_canonical(const mpz_class& a, const mpz_class& mod) {
    mpz_class r = a % mod;
    if (r < 0) r += mod;
    return r;
}

int val_or_m(const mpz_class& a, long p, int M) {
    int v = valuation_z(a, p);
    return v > M ? M : v;
}

using Mat = std::vector<std::vector<mpz_class>>;

// diagonalize B over Z/p^M by row and column operations, tracking column
// operations in E so that solutions of (diag)y = 0 map back as x = E y.
// Returns the diagonal valuations (M for a vanishing diagonal).
std::vector<int> diagonalize(Mat& B, Mat& E, long p, int M) {
    const int n = static_cast<int>(B.size());
    const mpz_class mod = pow_z(mpz_class(p), static_cast<unsigned long>(M));
    std::vector<int> vals(static_cast<std::size_t>(n), M);
    for (int t = 0; t < n; ++t) {
        int bi = -1, bj = -1, bv = M;
        for (int i = t; i < n; ++i)
            for (int j = t; j < n; ++j) {
                int v = val_or_m(B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], p, M);
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                }
            }
        if (bi < 0) break; // remaining block vanishes mod p^M
        std::swap(B[static_cast<std::size_t>(t)], B[static_cast<std::size_t>(bi)]);
        for (int i = 0; i < n; ++i) {
            std::swap(B[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)],
                      B[static_cast<std::size_t>(i)][static_cast<std::size_t>(bj)]);
            std::swap(E[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)],
                      E[static_cast<std::size_t>(i)][static_cast<std::size_t>(bj)]);
        }
        vals[static_cast<std::size_t>(t)] = bv;
        const mpz_class pv = pow_z(mpz_class(p), static_cast<unsigned long>(bv));
        // scale the pivot row so the pivot becomes exactly p^bv
        mpz_class unit = B[static_cast<std::size_t>(t)][static_cast<std::size_t>(t)] / pv;
        mpz_class unit_inv;
        if (mpz_invert(unit_inv.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t()) == 0)
            throw DomainError("pivot unit not invertible"); // cannot happen: val stripped
        for (int j = t; j < n; ++j)
            B[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] = mod_canonical(
                B[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] * unit_inv, mod);
        // clear the pivot column with row operations
        for (int i = 0; i < n; ++i) {
            if (i == t) continue;
            mpz_class q = B[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] / pv;
            if (q == 0) continue;
            for (int j = t; j < n; ++j)
                B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mod_canonical(
                    B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                        q * B[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)],
                    mod);
        }
        // clear the pivot row with column operations, mirrored into E
        for (int j = 0; j < n; ++j) {
            if (j == t) continue;
            mpz_class q = B[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)] / pv;
            if (q == 0) continue;
            for (int i = 0; i < n; ++i) {
                B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mod_canonical(
                    B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                        q * B[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)],
                    mod);
                E[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = mod_canonical(
                    E[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                        q * E[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)],
                    mod);
            }
        }
    }
    return vals;
}

std::vector<mpz_class> normal_form_coords(const PreparedQuotientRing& ring,
                                          const TruncatedSeries& nf) {
    std::vector<mpz_class> v(static_cast<std::size_t>(ring.degree()), 0);
    for (const auto& [e, c] : nf.terms())
        v[static_cast<std::size_t>(e[0])] = c.value().get_num();
    return v;
}

} // namespace

FpxInvariants fpx_invariants(const PreparedQuotientRing& ring, const FormalGroupLaw& G) {
    if (ring.model() != PreparedQuotientRing::Model::PSeries)
        throw DomainError("invariants are computed in the cyclic-group model, not the quotient "
                          "by the divided p-series");
    if (ring.backend() != PreparedQuotientRing::Backend::WeierstrassPoly)
        throw DomainError("invariants need a finite-height relation");
    const long p = ring.p();
    const int M = ring.tag().digits;
    const int d = ring.degree();
    const int N = ring.order();

    FpxInvariants out;
    if (p == 2) {
        // the unit group is trivial; every element is fixed
        out.generator = 1;
        out.certified_digits = M;
        for (int j = 0; j < d; ++j)
            out.basis.push_back(TruncatedSeries::from_terms(
                {ring.var()}, N, ring.tag(), {{{j}, Coefficient::one(ring.tag())}}));
        return out;
    }

    // The action matrix entries are reductions of order-N series, so they are
    // trustworthy only mod p^ideal_digits.  Solving the fixed-point system at
    // the full M digits would let tail noise displace genuine kernel vectors;
    // solve exactly at the certified precision instead.
    const int Me = std::min(M, ring.ideal_digits());
    if (Me < 1)
        throw PrecisionError("truncation order too small to certify one digit of the "
                             "invariant basis",
                             d + 1);

    out.generator = primitive_root(p);
    FormalGroupLaw Gp = G.to_p_adic(p, M);
    if (Gp.order() < N)
        throw DomainError("law truncated below the ring order");
    TruncatedSeries sigma =
        n_series(Gp, out.generator).series.truncated(N).with_variables({ring.var()});

    // action matrix on the basis 1, z, ..., z^(d-1)
    Mat A(static_cast<std::size_t>(d), std::vector<mpz_class>(static_cast<std::size_t>(d), 0));
    TruncatedSeries power = TruncatedSeries::constant({ring.var()}, N, Coefficient::one(ring.tag()));
    for (int j = 0; j < d; ++j) {
        std::vector<mpz_class> col = normal_form_coords(ring, ring.reduce(power));
        for (int i = 0; i < d; ++i) A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = col[static_cast<std::size_t>(i)];
        if (j + 1 < d) power = power * sigma;
    }

    const mpz_class mod = pow_z(mpz_class(p), static_cast<unsigned long>(Me));
    Mat B = A, E(static_cast<std::size_t>(d), std::vector<mpz_class>(static_cast<std::size_t>(d), 0));
    for (int i = 0; i < d; ++i) {
        B[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
            mod_canonical(B[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] - 1, mod);
        E[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
        for (int j = 0; j < d; ++j)
            B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                mod_canonical(B[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], mod);
    }
    std::vector<int> vals = diagonalize(B, E, p, Me);

    std::vector<std::vector<mpz_class>> gens;
    for (int t = 0; t < d; ++t) {
        if (vals[static_cast<std::size_t>(t)] == 0) continue; // coordinate forced to zero
        int v = vals[static_cast<std::size_t>(t)];
        if (v > 0 && v < Me) out.pivot_valuations.push_back(v);
        mpz_class scale = v >= Me ? mpz_class(1)
                                  : pow_z(mpz_class(p), static_cast<unsigned long>(Me - v));
        std::vector<mpz_class> g(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i)
            g[static_cast<std::size_t>(i)] =
                mod_canonical(E[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] * scale, mod);
        // canonical scaling: make the lowest-degree nonzero coordinate a power of p
        int lead = -1;
        for (int i = 0; i < d; ++i)
            if (g[static_cast<std::size_t>(i)] != 0) {
                lead = i;
                break;
            }
        if (lead < 0) continue;
        int lv = valuation_z(g[static_cast<std::size_t>(lead)], p);
        mpz_class unit = g[static_cast<std::size_t>(lead)] /
                         pow_z(mpz_class(p), static_cast<unsigned long>(lv));
        mpz_class unit_inv;
        mpz_invert(unit_inv.get_mpz_t(), unit.get_mpz_t(), mod.get_mpz_t());
        for (auto& x : g) x = mod_canonical(x * unit_inv, mod);
        gens.push_back(std::move(g));
    }
    auto lead_of = [](const std::vector<mpz_class>& g) {
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i] != 0) return i;
        return g.size();
    };
    std::sort(gens.begin(), gens.end(), [&](const auto& a, const auto& b) {
        std::size_t la = lead_of(a), lb = lead_of(b);
        if (la != lb) return la < lb;
        return a < b;
    });

    // coefficients are canonical mod p^Me; they remain valid representatives
    // in the ambient Z/p^M ring, read to certified_digits only
    for (const auto& g : gens) {
        std::vector<std::pair<Exponents, Coefficient>> terms;
        for (int i = 0; i < d; ++i)
            if (g[static_cast<std::size_t>(i)] != 0)
                terms.push_back({{i}, Coefficient(ring.tag(), mpq_class(g[static_cast<std::size_t>(i)]))});
        out.basis.push_back(TruncatedSeries::from_terms({ring.var()}, N, ring.tag(), terms));
    }
    out.certified_digits = Me;
    return out;
}

// ---------------------------------------------------------------------------
// ideal membership and the intersection lemma

namespace {

// dense univariate coefficients through degree order-1
std::vector<mpq_class> dense_coeffs(const TruncatedSeries& f) {
    std::vector<mpq_class> out(static_cast<std::size_t>(f.order()), 0);
    for (const auto& [e, c] : f.terms()) out[static_cast<std::size_t>(e[0])] = c.value();
    return out;
}

struct SeriesDivision {
    std::optional<TruncatedSeries> quotient;
    std::optional<int> failing_degree;
};

// solve f = q*g degree by degree; g(0) != 0.  The quotient coefficients are
// computed rationally and must land back in the coefficient ring.
SeriesDivision divide_by_unit_constant(const TruncatedSeries& f, const TruncatedSeries& g) {
    const int N = f.order();
    std::vector<mpq_class> fc = dense_coeffs(f), gc = dense_coeffs(g);
    if (gc[0] == 0) throw DomainError("divisor has zero constant term");
    std::vector<std::pair<Exponents, Coefficient>> qterms;
    std::vector<mpq_class> q(static_cast<std::size_t>(N), 0);
    for (int k = 0; k < N; ++k) {
        mpq_class acc = fc[static_cast<std::size_t>(k)];
        for (int j = 1; j <= k; ++j) acc -= gc[static_cast<std::size_t>(j)] * q[static_cast<std::size_t>(k - j)];
        acc /= gc[0];
        q[static_cast<std::size_t>(k)] = acc;
        if (acc == 0) continue;
        try {
            qterms.push_back({{k}, Coefficient(f.tag(), acc)});
        } catch (const Error&) {
            return {std::nullopt, k};
        }
    }
    return {TruncatedSeries::from_terms(f.vars(), N, f.tag(), qterms), std::nullopt};
}

} // namespace

IntersectionWitness ideal_intersection_witness(const FormalGroupLaw& G, long p,
                                               const TruncatedSeries& f) {
    if (!is_prime(p)) throw DomainError("p must be prime, got " + std::to_string(p));
    if (f.vars().size() != 1) throw VariableMismatchError("membership test expects one variable");
    if (f.tag().kind == RingKind::PAdicTruncated)
        throw DomainError("membership needs a torsion-free coefficient ring");

    IntersectionWitness w;
    w.order = f.order();
    const std::string& zname = f.vars()[0];

    FormalGroupLaw Gt = G.tag() == f.tag() ? G : G.retagged(f.tag());
    if (Gt.order() < f.order()) throw DomainError("law truncated below the element order");
    TruncatedSeries divided =
        divided_p_series(Gt, p).truncated(f.order()).with_variables({zname});
    TruncatedSeries pseries =
        n_series(Gt, p).series.truncated(f.order()).with_variables({zname});

    w.in_z = f.constant_term().is_zero();
    SeriesDivision div = divide_by_unit_constant(f, divided);
    w.in_divided = div.quotient.has_value();
    w.failing_degree = div.failing_degree;

    if (w.in_z && w.in_divided) {
        // b = f/<p> has b(0) = f(0)/p = 0, so b = z*q and f = q*[p]
        TruncatedSeries q = div.quotient->divided_by_variable(zname);
        assert(q * pseries == f);
        w.q = q;
        w.in_p_series = true;
    }
    return w;
}

// ---------------------------------------------------------------------------
// kernel of (augmentation, transfer reduction)

InjectivityVerdict injectivity_check(const FormalGroupLaw& G, long p, const TruncatedSeries& f,
                                     Precision prec) {
    const int M = prec.digits.value_or(8);
    PreparedQuotientRing bcp = build_bcp_ring(G, p, prec);
    PreparedQuotientRing tq = build_transfer_quotient(G, p, prec);

    TruncatedSeries fe = f.tag() == bcp.tag() ? f : f.retagged(bcp.tag());

    InjectivityVerdict v{bcp.reduce(fe),
                         Coefficient::zero(bcp.tag()),
                         TruncatedSeries::zero(f.vars(), f.order(), bcp.tag()),
                         false,
                         false,
                         InjectivityVerdict::Conclusion::Inconclusive,
                         0};
    v.augmentation = v.normal_form.constant_term();
    v.transfer_image = tq.reduce(v.normal_form);
    v.augmentation_zero = v.augmentation.is_zero();
    v.transfer_zero = v.transfer_image.is_zero();

    if (!v.augmentation_zero || !v.transfer_zero) {
        v.conclusion = InjectivityVerdict::Conclusion::NonzeroImage;
        v.certified_digits = M;
        return v;
    }
    if (v.normal_form.is_zero()) {
        v.conclusion = InjectivityVerdict::Conclusion::ExactZero;
        v.certified_digits = M;
        return v;
    }
    if (M < 2) {
        v.conclusion = InjectivityVerdict::Conclusion::Inconclusive;
        return v;
    }
    for (const auto& [e, c] : v.normal_form.terms())
        assert(c.valuation(p) >= M - 1);
    v.conclusion = InjectivityVerdict::Conclusion::ZeroToPrecision;
    v.certified_digits = M - 1;
    return v;
}

InjectivitySample injectivity_fuzz(const FormalGroupLaw& G, long p, Precision prec, int samples,
                                   unsigned long seed) {
    PreparedQuotientRing bcp = build_bcp_ring(G, p, prec);
    PreparedQuotientRing tq = build_transfer_quotient(G, p, prec);
    const int d = bcp.degree();
    const int N = bcp.order();

    gmp_randclass rnd(gmp_randinit_default);
    rnd.seed(seed);
    const mpz_class mod = bcp.tag().modulus();

    InjectivitySample rep;
    while (rep.samples < samples) {
        std::vector<std::pair<Exponents, Coefficient>> terms;
        for (int j = 0; j < d; ++j) {
            mpz_class c = rnd.get_z_range(mod);
            if (c != 0) terms.push_back({{j}, Coefficient(bcp.tag(), mpq_class(c))});
        }
        if (terms.empty()) continue;
        TruncatedSeries f = TruncatedSeries::from_terms({bcp.var()}, N, bcp.tag(), terms);
        ++rep.samples;
        bool aug_zero = f.constant_term().is_zero();
        bool tr_zero = tq.reduce(f).is_zero();
        if (aug_zero && tr_zero) ++rep.kernel_hits;
    }
    return rep;
}

} // namespace fgllab
