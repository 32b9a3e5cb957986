#pragma once

// Twisted Frobenius on orbifold cohomology, evaluated pi-adically.
//
// On a basis element x^{beta} y^{lambda} e^I the chain-level Frobenius adds
// rows of A on the fixed directions and columns of A on the moved ones (every
// other term dies), and each added row or column moves one step along a
// single reduction direction. The coefficient on the target basis element
// therefore factors as
//   p^{Q+Q^∨} sigma^{(p-1)(#-#^∨)/2} prod_d (-pi)^{-z_d} sum_m c_m (b_d)_{(z_d+m)}.

#include <bhlab/chaincx.hpp>
#include <bhlab/cohoring.hpp>
#include <bhlab/errors.hpp>
#include <bhlab/padic.hpp>
#include <bhlab/suites.hpp>
#include <bhlab/threads.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bhlab {

/// c_m for m = 0, 1, ... grown on demand.
class DworkTable
{
public:
    explicit DworkTable(std::int64_t p) : p_(p) {}
    std::int64_t p() const { return p_; }
    const Rational &operator[](std::int64_t m)
    {
        while (static_cast<std::int64_t>(c_.size()) <= m) c_.push_back(dwork_c(p_, static_cast<std::int64_t>(c_.size())));
        return c_[static_cast<std::size_t>(m)];
    }

private:
    std::int64_t p_;
    std::vector<Rational> c_;
};

/// The values c_m (-pi)^m for m <= M, each checked against
/// ord_p >= m (p-1) / p^2.
inline std::vector<PadicPi> dwork_coeffs(std::int64_t p, std::int64_t M, std::int64_t prec)
{
    if (!is_prime(p)) throw Error(ErrorKind::PrimeDividesDet, std::to_string(p) + " is not prime");
    if (prec < 1) throw Error(ErrorKind::PrecisionLoss, "precision must be positive");
    std::vector<PadicPi> out;
    DworkTable c(p);
    for (std::int64_t m = 0; m <= M; ++m) {
        PadicPi v = PadicPi::from(PiLaurent::monomial(m, m % 2 ? -c[m] : c[m]), p);
        // ord_pi = (p-1) ord_p
        if (v.valuation() < kExact && v.valuation() * p * p < m * (p - 1) * (p - 1))
            throw Error(ErrorKind::PrecisionLoss, "Dwork coefficient " + std::to_string(m) + " below its bound");
        out.push_back(v.with_prec(prec));
    }
    return out;
}

inline std::int64_t digit_count(std::int64_t k, std::int64_t p)
{
    std::int64_t d = 0;
    for (; k > 0; k /= p) ++d;
    return d;
}

/// Lower bound, in pi-units, on every term m > M of
/// (-pi)^{-z0} sum_m c_m (b)_{(z0+m)} for b a p-adic integer: it combines
/// ord_p(c_m (-pi)^m) >= m(p-1)/p^2 with ord_p (b)_{(k)} >= ord_p k!.
inline Rational series_tail_bound(std::int64_t p, std::int64_t z0, std::int64_t M)
{
    const Rational slope(static_cast<long>((p - 1) * (p - 1)), static_cast<long>(p * p));
    const Rational e(static_cast<long>(p - 1));
    const std::int64_t k0 = z0 + M + 1;
    std::int64_t digits = digit_count(k0, p);
    Rational best = slope * Rational(static_cast<long>(M + 1)) - e * Rational(static_cast<long>(digits));
    // further dips sit where z0 + m reaches p^t
    Integer pt = ipow(p, digits);
    for (std::int64_t t = digits + 1;; ++t, pt *= p) {
        Rational lin = slope * (Rational(pt) - Rational(static_cast<long>(z0)));
        Rational f = lin - e * Rational(static_cast<long>(t));
        if (f < best) best = f;
        else if (lin > best + e * Rational(static_cast<long>(t + 1))) break;
    }
    return best;
}

namespace detail {

inline Rational signed_pochhammer(const Rational &b, std::int64_t k)
{
    if (k >= 0) return pochhammer(b, k);
    Rational d = pochhammer(b + Rational(static_cast<long>(k)), -k);
    if (d == 0) throw Error(ErrorKind::OracleFallbackFailed, "backward reduction through a vanishing Pochhammer symbol");
    return 1 / d;
}

inline std::int64_t ceil_of(const Rational &x)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return to_i64(q);
}

} // namespace detail

/// (-pi)^{-z0} sum_{m >= 0} c_m (b)_{(z0+m)} to absolute precision >= prec.
inline PadicPi dwork_series(DworkTable &c, const Rational &b, std::int64_t z0, std::int64_t prec,
                            std::int64_t max_terms = 100000)
{
    const std::int64_t p = c.p();
    std::int64_t last;
    std::int64_t cert = kExact;
    if (is_integer(b) && b <= 0) {
        last = to_i64(-b.get_num()) - z0; // (b)_{(k)} vanishes beyond -b
    } else {
        last = std::max<std::int64_t>(0, -z0);
        while (detail::ceil_of(series_tail_bound(p, z0, last)) < prec) {
            if (++last > max_terms) throw Error(ErrorKind::PrecisionLoss, "Dwork series needs too many terms");
        }
        cert = detail::ceil_of(series_tail_bound(p, z0, last));
    }
    Rational s = 0;
    if (last >= 0) {
        Rational poch = detail::signed_pochhammer(b, z0);
        for (std::int64_t m = 0; m <= last; ++m) {
            if (m) {
                std::int64_t k = z0 + m - 1;
                if (k >= 0) poch *= b + Rational(static_cast<long>(k));
                else poch = detail::signed_pochhammer(b, k + 1);
            }
            s += c[m] * poch;
        }
    }
    if (z0 % 2) s = -s;
    return PadicPi::from(PiLaurent::monomial(-z0, s), p, cert);
}

// Frobenius matrix -------------------------------------------------------------

/// x = sigma^r P written as kappa^r p^k pi^j u with kappa = sigma / pi,
/// 0 <= j < p-1 and u a unit.
struct KappaForm {
    std::int64_t r = 0;
    std::int64_t k = 0;
    std::int64_t j = 0;
    PadicPi unit;
};

inline std::optional<KappaForm> kappa_form(const FrobScalar &x)
{
    const std::int64_t r = x.sigma_power();
    if (r < 0) return std::nullopt;
    const PadicPi P = x.component(r);
    const std::int64_t p = x.p(), e = p - 1, w = P.valuation() + r;
    const std::int64_t k = w >= 0 ? w / e : -((-w + e - 1) / e);
    const std::int64_t j = w - k * e;
    Rational pk = Rational(ipow(p, k >= 0 ? k : -k));
    return KappaForm{r, k, j, P.shifted(r - j).scaled(k >= 0 ? 1 / pk : pk)};
}

struct FrobMatrix {
    std::int64_t p = 0;
    std::int64_t prec = 0;
    CohBasis basis;
    std::vector<std::vector<FrobScalar>> entries; // [row][col]

    std::size_t size() const { return basis.size(); }
    std::int64_t certified() const
    {
        std::int64_t n = kExact;
        for (const auto &row : entries)
            for (const auto &x : row) n = std::min(n, x.prec());
        return n;
    }
    bool is_diagonal() const
    {
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (i != j && !entries[i][j].is_zero()) return false;
        return true;
    }
    /// Row index of the nonzero entry of column j, if unique.
    std::optional<std::size_t> target(std::size_t j) const
    {
        std::optional<std::size_t> t;
        for (std::size_t i = 0; i < size(); ++i)
            if (!entries[i][j].is_zero()) {
                if (t) return std::nullopt;
                t = i;
            }
        return t;
    }
};

/// TFr(b_j) = p^{p_power} sigma^{twist} prod_d (-pi)^{-z0_d} sum_m c_m (b_d)_{(z0_d+m)} row.
struct FrobFactors {
    std::size_t row = 0;
    std::int64_t p_power = 0;
    std::int64_t twist = 0;
    struct Factor {
        Rational b;
        std::int64_t z0;
    };
    std::vector<Factor> factors;
};

inline FrobFactors tfr_factors(const BHMatrix &m, const CohBasis &basis, std::size_t j, std::int64_t p)
{
    Context c(m);
    require_prime_coprime(c, p);
    const auto &e = basis.entries[j];
    const Sector &s = e.sector;
    const std::size_t n = m.n();

    IntVec plam(n);
    for (std::size_t i = 0; i < n; ++i) plam[i] = p * e.mono.lam[i];
    const IntVec lam1 = canonical_lambda(m, plam);
    const Sector s1 = make_sector(m, lam1);

    const std::size_t f = s.fixed.size();
    IntVec pb(f);
    for (std::size_t a = 0; a < f; ++a) pb[a] = p * e.mono.gamma[s.fixed[a]];
    std::vector<std::pair<IntVec, RatVec>> hits;
    for (const auto &beta : milnor_basis(s1.sub)) {
        IntVec diff(f);
        for (std::size_t a = 0; a < f; ++a) diff[a] = pb[a] - beta[a];
        RatVec z = s1.sub.charges_x(diff);
        if (!std::all_of(z.begin(), z.end(), [](const Rational &x) { return is_integer(x); })) continue;
        // a backward step through a vanishing Pochhammer symbol is no relation
        RatVec b = s1.sub.charges_x(beta);
        bool valid = true;
        for (std::size_t a = 0; a < f; ++a)
            if (z[a] < 0 && pochhammer(b[a] + z[a], to_i64(-z[a].get_num())) == 0) valid = false;
        if (valid) hits.emplace_back(beta, z);
    }
    if (hits.size() != 1) throw Error(ErrorKind::OracleFallbackFailed, "no unique closed-form target for " + e.mono.str());
    const IntVec &beta1 = hits[0].first;

    FrobFactors out;
    RatVec bx = s1.sub.charges_x(beta1);
    for (std::size_t a = 0; a < f; ++a) out.factors.push_back({bx[a], to_i64(hits[0].second[a].get_num())});
    RatVec cy = m.charges_y(lam1);
    for (std::size_t i = 0; i < n; ++i)
        if (s.jvee[i]) out.factors.push_back({cy[i], (c.ynum(plam, i) - c.ynum(lam1, i)) / c.D()});

    Monomial target{IntVec(n, 0), lam1, e.mono.I};
    for (std::size_t a = 0; a < f; ++a) target.gamma[s.fixed[a]] = beta1[a];
    auto row = basis.find(target);
    if (!row) throw Error(ErrorKind::BasisDeficient, target.str() + " is not a basis element");
    out.row = *row;
    out.p_power = e.gradings.total();
    out.twist = (p - 1) * (e.gradings.sharp - e.gradings.sharpvee) / 2;
    return out;
}

struct FrobColumn {
    std::size_t row;
    FrobScalar value;
};

/// TFr of one basis element, to absolute precision prec.
inline FrobColumn tfr_column(const BHMatrix &m, const CohBasis &basis, std::size_t j, std::int64_t p, std::int64_t prec)
{
    const FrobFactors ff = tfr_factors(m, basis, j, p);
    const PadicPi base = PadicPi::from(Rational(ipow(p, ff.p_power)), p);
    DworkTable table(p);
    std::int64_t want = prec;
    for (int round = 0; round < 8; ++round) {
        PadicPi v = base;
        for (const auto &fa : ff.factors) v *= dwork_series(table, fa.b, fa.z0, want);
        if (v.prec() >= prec) {
            FrobScalar out(p);
            out.add(ff.twist, v);
            return {ff.row, out};
        }
        want += prec - v.prec();
    }
    throw Error(ErrorKind::PrecisionLoss, "could not reach precision " + std::to_string(prec));
}

inline FrobMatrix tfr_matrix(const BHMatrix &m, const CohBasis &basis, std::int64_t p, std::int64_t prec)
{
    require_prime_coprime(Context(m), p);
    FrobMatrix fm;
    fm.p = p;
    fm.prec = prec;
    fm.basis = basis;
    const std::size_t N = basis.size();
    fm.entries.assign(N, std::vector<FrobScalar>(N, FrobScalar(p)));
    std::vector<FrobColumn> cols(N);
    parallel_for(N, [&](std::size_t j) { cols[j] = tfr_column(m, basis, j, p, prec); });
    for (std::size_t j = 0; j < N; ++j) fm.entries[cols[j].row][j] = cols[j].value;
    return fm;
}

inline FrobMatrix tfr_matrix(const BHMatrix &m, std::int64_t p, std::int64_t prec)
{
    return tfr_matrix(m, orbifold_basis(m), p, prec);
}

// Commutation with duality ----------------------------------------------------

struct CommutationReport {
    std::int64_t p = 0;
    std::int64_t prec = 0;
    std::int64_t min_valuation = kExact; // of H(Delta)H(TFr_A) - H(TFr_{A^T})H(Delta)
    std::int64_t certified = kExact;
    std::size_t entries = 0;

    bool ok() const { return min_valuation >= prec && certified >= prec; }
};

inline std::vector<std::vector<FrobScalar>> to_frob(const std::vector<std::vector<PiLaurent>> &a, std::int64_t p)
{
    std::vector<std::vector<FrobScalar>> out;
    for (const auto &row : a) {
        out.emplace_back();
        for (const auto &x : row) out.back().push_back(FrobScalar(PadicPi::from(x, p)));
    }
    return out;
}

inline std::vector<std::vector<FrobScalar>> frob_product(const std::vector<std::vector<FrobScalar>> &a,
                                                         const std::vector<std::vector<FrobScalar>> &b, std::int64_t p)
{
    const std::size_t r = a.size(), k = b.size(), cdim = b.empty() ? 0 : b[0].size();
    std::vector<std::vector<FrobScalar>> out(r, std::vector<FrobScalar>(cdim, FrobScalar(p)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t].components().empty()) continue;
            for (std::size_t j = 0; j < cdim; ++j)
                if (!b[t][j].components().empty()) out[i][j] += a[i][t] * b[t][j];
        }
    return out;
}

inline CommutationReport verify_commutation(const BHMatrix &m, std::int64_t p, std::int64_t prec)
{
    require_prime_coprime(Context(m), p);
    const BHMatrix mt = m.transpose();
    const CohBasis ba = orbifold_basis(m), bt = orbifold_basis(mt);
    const auto dual = duality_matrix(m, ba, bt);
    std::int64_t slack = 0;
    for (const auto &row : dual)
        for (const auto &x : row)
            if (!x.is_zero()) slack = std::max(slack, -PadicPi::from(x, p).valuation());
    const auto D = to_frob(dual, p);
    const FrobMatrix ta = tfr_matrix(m, ba, p, prec + slack);
    const FrobMatrix tt = tfr_matrix(mt, bt, p, prec + slack);
    const auto lhs = frob_product(D, ta.entries, p);
    const auto rhs = frob_product(tt.entries, D, p);

    CommutationReport rep;
    rep.p = p;
    rep.prec = prec;
    for (std::size_t i = 0; i < lhs.size(); ++i)
        for (std::size_t j = 0; j < lhs[i].size(); ++j) {
            FrobScalar d = lhs[i][j] - rhs[i][j];
            std::int64_t n = d.prec();
            std::int64_t v = d.valuation();
            rep.certified = std::min(rep.certified, n);
            rep.min_valuation = std::min(rep.min_valuation, std::min(v, n));
            ++rep.entries;
        }
    return rep;
}

/// Delta Fr_A = Fr_{A^T} Delta p^{2ext-n} p^{-2Q^hat} p^{2Q^∨}, exactly, on the
/// given monomials of S_A.
inline SuiteResult verify_chain_commutation(const BHMatrix &m, std::int64_t p, std::int64_t order,
                                            const std::vector<Monomial> &tests)
{
    Context c(m), ct(m.transpose());
    require_prime_coprime(c, p);
    SuiteResult r{"chain-commutation"};
    for (const auto &mo : tests) {
        ChainElement v(mo);
        auto lhs = delta(c, frobenius_chain(c, p, order, v));
        auto rhs = frobenius_chain(ct, p, order, delta(c, frobenius_twist_operator(c, p, v)));
        r.check(lhs == rhs, [&] { return m.str() + " on " + mo.str(); });
    }
    return r;
}

inline SuiteResult verify_chain_commutation(const BHMatrix &m, std::int64_t p, std::int64_t order, std::uint64_t seed,
                                            std::size_t count)
{
    Context c(m);
    require_prime_coprime(c, p);
    Sampler s(seed);
    std::vector<Monomial> tests;
    for (std::size_t k = 0; k < count; ++k) tests.push_back(s.monomial(c, 3, true));
    return verify_chain_commutation(m, p, order, tests);
}

} // namespace bhlab
