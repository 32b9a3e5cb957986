#pragma once

// The monomial complex B_A = R_A ⊗ Λ with differentials d_A, d_A^∨, the
// hat-differentials, gradings, the duality map, the de Rham embedding and the
// chain-level Frobenius map.

#include <bhlab/bhmat.hpp>
#include <bhlab/clifford.hpp>
#include <bhlab/errors.hpp>
#include <bhlab/pilaurent.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace bhlab {

struct Monomial {
    IntVec gamma;
    IntVec lam;
    Mask I = 0;

    auto operator<=>(const Monomial &) const = default;
    bool operator==(const Monomial &) const = default;

    std::string str() const
    {
        auto sup = [](std::int64_t k) {
            static const char *d[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
            std::string s;
            for (char c : std::to_string(k)) s += d[c - '0'];
            return s;
        };
        std::string s;
        for (std::size_t i = 0; i < gamma.size(); ++i)
            if (gamma[i]) s += "x" + std::to_string(i + 1) + (gamma[i] > 1 ? sup(gamma[i]) : "");
        for (std::size_t i = 0; i < lam.size(); ++i)
            if (lam[i]) s += "y" + std::to_string(i + 1) + (lam[i] > 1 ? sup(lam[i]) : "");
        s += mask_str(I);
        return s.empty() ? "1" : s;
    }
};

/// Integer data of A: D = |det A| and adj = D * A^{-1}, so charges are exact
/// integers over D.
class Context
{
public:
    Context(const BHMatrix &m) : m_(m), star_(m) // NOLINT: built from the matrix on demand
    {
        const std::size_t n = m.n();
        D_ = to_i64(abs(m.det()));
        adj_ = IntMatrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Rational v = m.inv()(i, j) * Rational(static_cast<long>(D_));
                adj_(i, j) = to_i64(v.get_num());
            }
    }

    const BHMatrix &matrix() const { return m_; }
    std::size_t n() const { return m_.n(); }
    std::int64_t D() const { return D_; }
    std::int64_t A(std::size_t i, std::size_t j) const { return m_(i, j); }
    const StarTable &star() const { return star_; }

    /// D * (gamma A^{-1})_j
    std::int64_t xnum(const IntVec &g, std::size_t j) const
    {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < n(); ++i) s += g[i] * adj_(i, j);
        return s;
    }
    /// D * (lambda A^{-T})_j
    std::int64_t ynum(const IntVec &l, std::size_t j) const
    {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < n(); ++i) s += l[i] * adj_(j, i);
        return s;
    }
    Rational xcharge(const IntVec &g, std::size_t j) const { return ratio(xnum(g, j), D_); }
    Rational ycharge(const IntVec &l, std::size_t j) const { return ratio(ynum(l, j), D_); }

    bool admissible(const Monomial &mo) const
    {
        for (std::size_t j = 0; j < n(); ++j)
            if (mo.gamma[j] < 0 || mo.lam[j] < 0 || ynum(mo.lam, j) < 0) return false;
        return true;
    }
    /// x^gamma y^lambda is nonzero in R_A iff gamma A^{-1} lambda^T = 0.
    bool alive(const Monomial &mo) const
    {
        for (std::size_t j = 0; j < n(); ++j)
            if (mo.gamma[j] != 0 && ynum(mo.lam, j) > 0) return false;
        return true;
    }
    bool in_SA(const Monomial &mo) const
    {
        for (std::size_t j = 0; j < n(); ++j)
            if (xnum(mo.gamma, j) < 0) return false;
        return true;
    }

private:
    BHMatrix m_;
    StarTable star_;
    std::int64_t D_ = 1;
    IntMatrix adj_;
};

class ChainElement
{
public:
    using Terms = std::map<Monomial, PiLaurent>;

    ChainElement() = default;
    ChainElement(const Monomial &mo, const PiLaurent &c = 1) { add(mo, c); } // NOLINT

    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    PiLaurent coeff(const Monomial &mo) const
    {
        auto it = terms_.find(mo);
        return it == terms_.end() ? PiLaurent() : it->second;
    }

    void add(const Monomial &mo, const PiLaurent &c)
    {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(mo, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
    /// Adds c * mo * (ext part), wedge data taken from an ExtElement.
    void add(const IntVec &g, const IntVec &l, const ExtElement &x, const PiLaurent &c)
    {
        for (const auto &[I, e] : x.terms()) add(Monomial{g, l, I}, c * e);
    }

    ChainElement &operator+=(const ChainElement &o)
    {
        for (const auto &[mo, c] : o.terms_) add(mo, c);
        return *this;
    }
    ChainElement &operator-=(const ChainElement &o)
    {
        for (const auto &[mo, c] : o.terms_) add(mo, -c);
        return *this;
    }
    friend ChainElement operator+(ChainElement a, const ChainElement &b) { return a += b; }
    friend ChainElement operator-(ChainElement a, const ChainElement &b) { return a -= b; }
    friend ChainElement operator*(const PiLaurent &s, const ChainElement &v)
    {
        ChainElement r;
        for (const auto &[mo, c] : v.terms_) r.add(mo, s * c);
        return r;
    }
    friend bool operator==(const ChainElement &a, const ChainElement &b) { return a.terms_ == b.terms_; }

    ChainElement map_coeffs(const std::function<PiLaurent(const PiLaurent &)> &f) const
    {
        ChainElement r;
        for (const auto &[mo, c] : terms_) r.add(mo, f(c));
        return r;
    }

    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto &[mo, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")" + mo.str();
        }
        return s;
    }

private:
    Terms terms_;
};

namespace detail {

inline IntVec plus_row(const Context &c, IntVec v, std::size_t j, std::int64_t k = 1)
{
    for (std::size_t i = 0; i < c.n(); ++i) v[i] += k * c.A(j, i);
    return v;
}
inline IntVec plus_col(const Context &c, IntVec v, std::size_t j, std::int64_t k = 1)
{
    for (std::size_t i = 0; i < c.n(); ++i) v[i] += k * c.A(i, j);
    return v;
}

inline void add_alive(const Context &c, ChainElement &out, Monomial mo, const PiLaurent &k)
{
    if (c.alive(mo)) out.add(mo, k);
}

inline PiLaurent pi_rat(std::int64_t power, const Rational &r) { return PiLaurent::monomial(power, r); }

} // namespace detail

/// d_A = sum_i (theta_i + phi_i) e_i with theta_i = gamma_i and
/// phi_i = pi * sum_j A_ji x^{e_j A}.
inline ChainElement apply_d(const Context &c, const ChainElement &v)
{
    ChainElement out;
    for (const auto &[mo, k] : v.terms())
        for (std::size_t i = 0; i < c.n(); ++i) {
            if (mo.I & bit(i)) continue;
            const Mask J = mo.I | bit(i);
            const PiLaurent sk = koszul_sign(mo.I, i) == 1 ? k : -k;
            if (mo.gamma[i]) detail::add_alive(c, out, {mo.gamma, mo.lam, J}, sk * Rational(static_cast<long>(mo.gamma[i])));
            for (std::size_t j = 0; j < c.n(); ++j)
                if (c.A(j, i))
                    detail::add_alive(c, out, {detail::plus_row(c, mo.gamma, j), mo.lam, J},
                                      sk * detail::pi_rat(1, Rational(static_cast<long>(c.A(j, i)))));
        }
    return out;
}

/// d_A^∨ = sum_i (T_i^∨ + psi_i^∨) e_i^∨ with T_i^∨ = pi^{-1} (lambda A^{-T})_i
/// and psi_i^∨ adding column i of A to lambda.
inline ChainElement apply_dvee(const Context &c, const ChainElement &v)
{
    ChainElement out;
    for (const auto &[mo, k] : v.terms())
        for (std::size_t i = 0; i < c.n(); ++i) {
            if (!(mo.I & bit(i))) continue;
            const Mask J = mo.I & ~bit(i);
            const PiLaurent sk = koszul_sign(mo.I, i) == 1 ? k : -k;
            if (c.ynum(mo.lam, i)) detail::add_alive(c, out, {mo.gamma, mo.lam, J}, sk * detail::pi_rat(-1, c.ycharge(mo.lam, i)));
            detail::add_alive(c, out, {mo.gamma, detail::plus_col(c, mo.lam, i), J}, sk);
        }
    return out;
}

inline ChainElement apply_total(const Context &c, const ChainElement &v) { return apply_d(c, v) + apply_dvee(c, v); }

inline void require_SA(const Context &c, const ChainElement &v)
{
    for (const auto &[mo, k] : v.terms())
        if (!c.in_SA(mo)) throw Error(ErrorKind::NotInSA, mo.str() + " has a negative x-charge");
}

/// hat d_{A,i} = (T_i + psi_i) E_{A,i} with T_i = pi^{-1} (gamma A^{-1})_i and
/// psi_i adding row i of A to gamma.
inline ChainElement apply_hat_d(const Context &c, std::size_t i, const ChainElement &v)
{
    require_SA(c, v);
    ChainElement out;
    for (const auto &[mo, k] : v.terms()) {
        ExtElement ex = apply_E(c.matrix().entries(), i, ExtElement::basis(mo.I));
        if (ex.is_zero()) continue;
        ChainElement part;
        if (c.xnum(mo.gamma, i)) part.add(mo.gamma, mo.lam, ex, k * detail::pi_rat(-1, c.xcharge(mo.gamma, i)));
        part.add(detail::plus_row(c, mo.gamma, i), mo.lam, ex, k);
        for (const auto &[m2, k2] : part.terms()) detail::add_alive(c, out, m2, k2);
    }
    return out;
}

// Gradings ------------------------------------------------------------------

inline std::int64_t q_value(const Context &c, const Monomial &mo)
{
    std::int64_t s = 0;
    for (std::size_t i = 0; i < c.n(); ++i) s += (mo.I & bit(i)) ? 1 : (c.ynum(mo.lam, i) > 0 ? 1 : 0);
    return s;
}

inline std::int64_t qvee_value(const Context &c, const Monomial &mo)
{
    std::int64_t s = 0;
    for (std::size_t i = 0; i < c.n(); ++i) s += (!(mo.I & bit(i)) && c.ynum(mo.lam, i) > 0) ? 1 : 0;
    return s;
}

inline std::int64_t sharp_value(const Context &c, const Monomial &mo)
{
    std::int64_t s = 0;
    for (std::size_t i = 0; i < c.n(); ++i) s += (c.xnum(mo.gamma, i) % c.D() != 0) ? 1 : 0;
    return s;
}

inline std::int64_t sharpvee_value(const Context &c, const Monomial &mo)
{
    std::int64_t s = 0;
    for (std::size_t i = 0; i < c.n(); ++i) s += (c.ynum(mo.lam, i) % c.D() != 0) ? 1 : 0;
    return s;
}

/// N_i = E_{A,i} E_{A,i}^∨ on the exterior part.
inline ExtElement apply_N(const Context &c, std::size_t i, const ExtElement &x)
{
    return apply_E(c.matrix().entries(), i, apply_E_vee(c.matrix().inv(), i, x));
}

/// Map each term through a (gamma, lambda, ext) -> ext operator.
inline ChainElement map_ext(const ChainElement &v,
                            const std::function<ExtElement(const Monomial &, const ExtElement &)> &f)
{
    ChainElement out;
    for (const auto &[mo, k] : v.terms()) out.add(mo.gamma, mo.lam, f(mo, ExtElement::basis(mo.I)), k);
    return out;
}

/// Diagonal operators given by an eigenvalue function on monomials.
inline ChainElement map_diag(const ChainElement &v, const std::function<PiLaurent(const Monomial &)> &f)
{
    ChainElement out;
    for (const auto &[mo, k] : v.terms()) out.add(mo, k * f(mo));
    return out;
}

inline ChainElement apply_Q(const Context &c, const ChainElement &v)
{
    return map_diag(v, [&](const Monomial &mo) { return PiLaurent(Rational(static_cast<long>(q_value(c, mo)))); });
}
inline ChainElement apply_Qvee(const Context &c, const ChainElement &v)
{
    return map_diag(v, [&](const Monomial &mo) { return PiLaurent(Rational(static_cast<long>(qvee_value(c, mo)))); });
}

/// Q^hat = sum_i P^hat_i E_{A,i} E_{A,i}^∨ where P^hat_i = [(gamma A^{-1})_i != 0].
inline ChainElement apply_Qhat(const Context &c, const ChainElement &v)
{
    require_SA(c, v);
    return map_ext(v, [&](const Monomial &mo, const ExtElement &x) {
        ExtElement r;
        for (std::size_t i = 0; i < c.n(); ++i)
            if (c.xnum(mo.gamma, i) != 0) r += apply_N(c, i, x);
        return r;
    });
}

/// Q^hat^∨ = sum_i E^∨_{A,i} E_{A,i} + Q^hat.
inline ChainElement apply_Qhatvee(const Context &c, const ChainElement &v)
{
    require_SA(c, v);
    return map_ext(v, [&](const Monomial &mo, const ExtElement &x) {
        ExtElement r;
        for (std::size_t i = 0; i < c.n(); ++i) {
            r += apply_E_vee(c.matrix().inv(), i, apply_E(c.matrix().entries(), i, x));
            if (c.xnum(mo.gamma, i) != 0) r += apply_N(c, i, x);
        }
        return r;
    });
}

/// s^{Q^hat} for a scalar s; the N_i are commuting idempotents.
inline ChainElement apply_pow_Qhat(const Context &c, const Rational &s, const ChainElement &v)
{
    require_SA(c, v);
    return map_ext(v, [&](const Monomial &mo, const ExtElement &x) {
        ExtElement r = x;
        for (std::size_t i = 0; i < c.n(); ++i)
            if (c.xnum(mo.gamma, i) != 0) r += PiLaurent(s - 1) * apply_N(c, i, r);
        return r;
    });
}

struct GradingReport {
    std::int64_t q = 0;
    std::int64_t qvee = 0;
    std::int64_t qhat = 0;
    std::int64_t qhatvee = 0;
    std::int64_t ext = 0;
    std::int64_t sharp = 0;
    std::int64_t sharpvee = 0;

    std::int64_t total() const { return q + qvee; }
    /// (# - #^∨) / 2 as a rational
    Rational half_sharp_diff() const
    {
        return ratio(sharp - sharpvee, 2);
    }
    bool operator==(const GradingReport &) const = default;
};

/// Throws NotInSA outside S_A and NotAnEigenvector when e^I is not an
/// eigenvector of Q^hat.
inline GradingReport gradings(const Context &c, const Monomial &mo)
{
    GradingReport g;
    g.q = q_value(c, mo);
    g.qvee = qvee_value(c, mo);
    g.ext = popcount(mo.I);
    g.sharp = sharp_value(c, mo);
    g.sharpvee = sharpvee_value(c, mo);
    ChainElement v(mo);
    ChainElement h = apply_Qhat(c, v);
    if (h.is_zero()) {
        g.qhat = 0;
    } else {
        if (h.size() != 1 || h.terms().begin()->first != mo)
            throw Error(ErrorKind::NotAnEigenvector, mo.str() + " is not a Q^hat eigenvector");
        const PiLaurent &k = h.terms().begin()->second;
        if (k.size() != 1 || k.terms().begin()->first != 0 || !is_integer(k.coeff(0)))
            throw Error(ErrorKind::NotAnEigenvector, mo.str() + " has a non-integral Q^hat eigenvalue");
        g.qhat = to_i64(k.coeff(0).get_num());
    }
    g.qhatvee = static_cast<std::int64_t>(c.n()) - g.ext + g.qhat;
    return g;
}

// Duality and embeddings ----------------------------------------------------

/// Delta^A = D^A ⊗ star^A: swap x and y exponents, star the exterior part.
inline ChainElement delta(const Context &c, const ChainElement &v)
{
    require_SA(c, v);
    ChainElement out;
    for (const auto &[mo, k] : v.terms()) out.add(mo.lam, mo.gamma, c.star()(mo.I), k);
    return out;
}

/// Theta(x^gamma e^I) = x^{gamma + I} e^I; y-exponents of the input are ignored.
inline ChainElement embed_de_rham(const Context &c, const ChainElement &p)
{
    ChainElement out;
    for (const auto &[mo, k] : p.terms()) {
        IntVec g = mo.gamma;
        for (std::size_t i = 0; i < c.n(); ++i)
            if (mo.I & bit(i)) ++g[i];
        out.add(Monomial{g, IntVec(c.n(), 0), mo.I}, k);
    }
    return out;
}

/// The twisted de Rham differential sum_i (d_i + pi d_iW) e_i on polynomials.
inline ChainElement apply_de_rham(const Context &c, const ChainElement &p)
{
    ChainElement out;
    for (const auto &[mo, k] : p.terms())
        for (std::size_t i = 0; i < c.n(); ++i) {
            if (mo.I & bit(i)) continue;
            const Mask J = mo.I | bit(i);
            const PiLaurent sk = koszul_sign(mo.I, i) == 1 ? k : -k;
            if (mo.gamma[i] > 0) {
                IntVec g = mo.gamma;
                --g[i];
                out.add(Monomial{g, mo.lam, J}, sk * Rational(static_cast<long>(mo.gamma[i])));
            }
            for (std::size_t j = 0; j < c.n(); ++j)
                if (c.A(j, i)) {
                    IntVec g = detail::plus_row(c, mo.gamma, j);
                    --g[i];
                    out.add(Monomial{g, mo.lam, J}, sk * detail::pi_rat(1, Rational(static_cast<long>(c.A(j, i)))));
                }
        }
    return out;
}

// Frobenius -----------------------------------------------------------------

inline Rational factorial(std::int64_t k)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
    return Rational(f);
}

/// c_m with e^{pi(t^p - t)} = sum_m c_m (-pi)^m t^m under pi^{p-1} = -p.
inline Rational dwork_c(std::int64_t p, std::int64_t m)
{
    Rational s = 0;
    Integer pa = 1;
    for (std::int64_t a = 0; a * p <= m; ++a) {
        Rational t = 1 / (Rational(pa) * factorial(a) * factorial(m - a * p));
        if ((a * (p - 1)) % 2) t = -t;
        s += t;
        pa *= p;
    }
    return s;
}

inline bool is_prime(std::int64_t p)
{
    if (p < 2) return false;
    for (std::int64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline void require_prime_coprime(const Context &c, std::int64_t p)
{
    if (!is_prime(p)) throw Error(ErrorKind::PrimeDividesDet, std::to_string(p) + " is not prime");
    if (c.D() % p == 0) throw Error(ErrorKind::PrimeDividesDet, std::to_string(p) + " divides det A");
}

inline Integer ipow(std::int64_t b, std::int64_t e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(e));
    return r;
}

/// Fr_A(v) = x^{p gamma} y^{p lambda} Z_A(x) Z_{A^T}(y) p^{Q + Q^∨} v with
/// Z_A(x) = prod_i sum_m c_m (-pi)^m x^{m e_i A}. The Z-series keep the
/// terms adding at most `order` rows of A and columns of A in total.
inline ChainElement frobenius_chain(const Context &c, std::int64_t p, std::int64_t order, const ChainElement &v)
{
    require_prime_coprime(c, p);
    const std::size_t n = c.n();
    std::vector<PiLaurent> coeff(order + 1);
    for (std::int64_t m = 0; m <= order; ++m) coeff[m] = PiLaurent::monomial(m, m % 2 ? -dwork_c(p, m) : dwork_c(p, m));

    // all (mx, my) multi-indices with total <= order
    struct Shift {
        IntVec dx, dy;
        PiLaurent k;
    };
    std::vector<Shift> shifts;
    IntVec idx(2 * n, 0);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t pos, std::int64_t left) {
        if (pos == 2 * n) {
            Shift s{IntVec(n, 0), IntVec(n, 0), 1};
            for (std::size_t j = 0; j < n; ++j) {
                for (std::size_t i = 0; i < n; ++i) {
                    s.dx[i] += idx[j] * c.A(j, i);
                    s.dy[i] += idx[n + j] * c.A(i, j);
                }
                s.k = s.k * coeff[idx[j]] * coeff[idx[n + j]];
            }
            shifts.push_back(std::move(s));
            return;
        }
        for (std::int64_t k = 0; k <= left; ++k) {
            idx[pos] = k;
            rec(pos + 1, left - k);
        }
        idx[pos] = 0;
    };
    rec(0, order);

    ChainElement out;
    for (const auto &[mo, k] : v.terms()) {
        const PiLaurent scaled = k * Rational(ipow(p, q_value(c, mo) + qvee_value(c, mo)));
        for (const auto &s : shifts) {
            Monomial t{IntVec(n), IntVec(n), mo.I};
            for (std::size_t i = 0; i < n; ++i) {
                t.gamma[i] = p * mo.gamma[i] + s.dx[i];
                t.lam[i] = p * mo.lam[i] + s.dy[i];
            }
            if (c.alive(t)) out.add(t, scaled * s.k);
        }
    }
    return out;
}

/// p^{2 ext - n} p^{-2 Q^hat} p^{2 Q^∨}, applied right to left.
inline ChainElement frobenius_twist_operator(const Context &c, std::int64_t p, const ChainElement &v)
{
    ChainElement w = map_diag(v, [&](const Monomial &mo) { return PiLaurent(Rational(ipow(p, 2 * qvee_value(c, mo)))); });
    w = apply_pow_Qhat(c, Rational(1) / Rational(ipow(p, 2)), w);
    return map_diag(w, [&](const Monomial &mo) {
        std::int64_t e = 2 * popcount(mo.I) - static_cast<std::int64_t>(c.n());
        Rational s = Rational(ipow(p, e >= 0 ? e : -e));
        return PiLaurent(e >= 0 ? s : 1 / s);
    });
}

/// x-weight sum_i gamma_i q_i and y-weight sum_i lambda_i q'_i.
inline Rational x_weight(const Context &c, const IntVec &g)
{
    Rational s = 0;
    for (std::size_t j = 0; j < c.n(); ++j) s += c.xcharge(g, j);
    return s;
}
inline Rational y_weight(const Context &c, const IntVec &l)
{
    Rational s = 0;
    for (std::size_t j = 0; j < c.n(); ++j) s += c.ycharge(l, j);
    return s;
}

/// Terms of v with x-weight + y-weight <= bound.
inline ChainElement weight_projection(const Context &c, const ChainElement &v, const Rational &bound)
{
    ChainElement out;
    for (const auto &[mo, k] : v.terms())
        if (x_weight(c, mo.gamma) + y_weight(c, mo.lam) <= bound) out.add(mo, k);
    return out;
}

} // namespace bhlab
