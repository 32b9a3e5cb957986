#pragma once

// Elements of Q_p(pi), pi^{p-1} = -p, kept as sum_{r<p-1} R_r pi^r with
// rational R_r and an absolute precision in pi-units; and sigma-graded
// combinations of them with sigma^{p-1} = p.

#include <bhlab/errors.hpp>
#include <bhlab/pilaurent.hpp>
#include <bhlab/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace bhlab {

inline constexpr std::int64_t kExact = std::numeric_limits<std::int64_t>::max() / 4;

inline std::int64_t sat_add(std::int64_t a, std::int64_t b)
{
    if (a >= kExact || b >= kExact) return kExact;
    return std::min(a + b, kExact);
}

inline std::int64_t padic_valuation(const Integer &x, std::int64_t p)
{
    if (x == 0) return kExact;
    Integer t = abs(x), q;
    std::int64_t v = 0;
    Integer P = p;
    while (true) {
        Integer r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), P.get_mpz_t());
        if (r != 0) return v;
        t = q;
        ++v;
    }
}

inline std::int64_t padic_valuation(const Rational &x, std::int64_t p)
{
    if (x == 0) return kExact;
    return padic_valuation(x.get_num(), p) - padic_valuation(x.get_den(), p);
}

class PadicPi
{
public:
    explicit PadicPi(std::int64_t p = 2, std::int64_t prec = kExact)
        : p_(p), prec_(prec), c_(static_cast<std::size_t>(p - 1), Rational(0))
    {
    }

    static PadicPi from(const PiLaurent &v, std::int64_t p, std::int64_t prec = kExact)
    {
        PadicPi r(p, prec);
        const PiLaurent red = reduce_pi_relation(v, p);
        for (const auto &[k, x] : red.terms()) r.c_[static_cast<std::size_t>(k)] += x;
        r.normalize();
        return r;
    }
    static PadicPi from(const Rational &x, std::int64_t p, std::int64_t prec = kExact)
    {
        return from(PiLaurent(x), p, prec);
    }

    std::int64_t p() const { return p_; }
    std::int64_t prec() const { return prec_; }
    const std::vector<Rational> &coeffs() const { return c_; }

    /// In pi-units; kExact for an exact zero.
    std::int64_t valuation() const
    {
        std::int64_t v = kExact;
        for (std::size_t r = 0; r < c_.size(); ++r)
            if (c_[r] != 0) v = std::min(v, (p_ - 1) * padic_valuation(c_[r], p_) + static_cast<std::int64_t>(r));
        return v;
    }
    bool is_zero() const { return valuation() >= prec_; }

    PadicPi with_prec(std::int64_t n) const
    {
        PadicPi r = *this;
        r.prec_ = std::min(prec_, n);
        r.normalize();
        return r;
    }

    PadicPi operator+(const PadicPi &o) const
    {
        PadicPi r(p_, std::min(prec_, o.prec_));
        for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] + o.c_[k];
        r.normalize();
        return r;
    }
    PadicPi operator-() const
    {
        PadicPi r = *this;
        for (auto &x : r.c_) x = -x;
        return r;
    }
    PadicPi operator-(const PadicPi &o) const { return *this + (-o); }
    PadicPi operator*(const PadicPi &o) const
    {
        PadicPi r(p_, std::min(sat_add(prec_, o.valuation()), sat_add(o.prec_, valuation())));
        const std::size_t e = c_.size();
        for (std::size_t i = 0; i < e; ++i) {
            if (c_[i] == 0) continue;
            for (std::size_t j = 0; j < e; ++j) {
                if (o.c_[j] == 0) continue;
                Rational t = c_[i] * o.c_[j];
                if (i + j >= e) r.c_[i + j - e] -= t * Rational(static_cast<long>(p_));
                else r.c_[i + j] += t;
            }
        }
        r.normalize();
        return r;
    }
    PadicPi &operator+=(const PadicPi &o) { return *this = *this + o; }
    PadicPi &operator*=(const PadicPi &o) { return *this = *this * o; }

    PadicPi scaled(const Rational &q) const
    {
        PadicPi r(p_, q == 0 ? kExact : sat_add(prec_, (p_ - 1) * padic_valuation(q, p_)));
        for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] = c_[k] * q;
        r.normalize();
        return r;
    }
    /// times pi^k
    PadicPi shifted(std::int64_t k) const
    {
        PadicPi r = *this * from(PiLaurent::monomial(k, 1), p_);
        r.prec_ = sat_add(prec_, k);
        r.normalize();
        return r;
    }

    /// pi-adic digits in {0..p-1}: (valuation, a_v, ..., a_{prec-1}).
    std::pair<std::int64_t, std::vector<int>> digits(std::int64_t max_count = 64) const
    {
        std::vector<int> out;
        std::int64_t v = valuation();
        if (v >= prec_) return {prec_, out};
        PadicPi x = shifted(-v);
        Integer P = p_;
        for (std::int64_t j = v; j < prec_ && static_cast<std::int64_t>(out.size()) < max_count; ++j) {
            // x is integral; its residue mod pi is R_0 mod p
            Rational r0 = x.c_[0];
            Integer inv, num = r0.get_num(), den = r0.get_den(), a;
            mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), P.get_mpz_t());
            a = num * inv;
            mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), P.get_mpz_t());
            out.push_back(static_cast<int>(a.get_si()));
            x.c_[0] -= Rational(a);
            x = x.shifted(-1);
        }
        return {v, out};
    }

    /// Leading digit of x / pi^{valuation}.
    int unit_residue() const
    {
        auto d = digits(1);
        return d.second.empty() ? 0 : d.second[0];
    }

    bool operator==(const PadicPi &o) const { return (*this - o).is_zero(); }

    std::string str() const
    {
        std::ostringstream os;
        auto [v, d] = digits(8);
        if (d.empty()) {
            os << "O(pi^" << prec_ << ")";
            return os.str();
        }
        bool first = true;
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (!d[j]) continue;
            if (!first) os << " + ";
            first = false;
            os << d[j] << "*pi^" << v + static_cast<std::int64_t>(j);
        }
        if (prec_ < kExact) os << " + O(pi^" << prec_ << ")";
        return os.str();
    }

private:
    // Drops what the precision cannot see and rounds each R_r to an integer
    // multiple of its p-power modulo the needed power.
    void normalize()
    {
        if (prec_ >= kExact) return;
        const std::int64_t e = p_ - 1;
        for (std::size_t r = 0; r < c_.size(); ++r) {
            Rational &x = c_[r];
            if (x == 0) continue;
            std::int64_t v = padic_valuation(x, p_);
            std::int64_t rr = static_cast<std::int64_t>(r);
            if (e * v + rr >= prec_) {
                x = 0;
                continue;
            }
            std::int64_t k = (prec_ - rr + e - 1) / e; // needed modulo p^k
            Rational pv = v >= 0 ? Rational(ipow_p(v)) : Rational(1) / Rational(ipow_p(-v));
            Rational u = x / pv;
            Integer mod = ipow_p(k - v), inv, a;
            Integer den = u.get_den();
            mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
            a = u.get_num() * inv;
            mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
            x = Rational(a) * pv;
        }
    }
    Integer ipow_p(std::int64_t e) const
    {
        Integer r;
        mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(e));
        return r;
    }

    std::int64_t p_;
    std::int64_t prec_;
    std::vector<Rational> c_;
};

/// sum_r v_r sigma^r, r in [0, p-2], sigma^{p-1} = p, ord(sigma) = 1 pi-unit.
class FrobScalar
{
public:
    explicit FrobScalar(std::int64_t p = 2) : p_(p) {}
    FrobScalar(const PadicPi &v, std::int64_t r = 0) : p_(v.p()) { add(r, v); } // NOLINT

    std::int64_t p() const { return p_; }
    const std::map<std::int64_t, PadicPi> &components() const { return comps_; }

    /// Adds v sigma^r for any integer r.
    void add(std::int64_t r, const PadicPi &v)
    {
        const std::int64_t e = p_ - 1;
        std::int64_t q = r >= 0 ? r / e : -((-r + e - 1) / e);
        std::int64_t rem = r - q * e;
        Rational f = 1;
        for (std::int64_t j = 0; j < (q >= 0 ? q : -q); ++j) f *= Rational(static_cast<long>(p_));
        if (q < 0) f = 1 / f;
        PadicPi w = v.scaled(f);
        auto it = comps_.find(rem);
        if (it == comps_.end()) comps_.emplace(rem, w);
        else it->second += w;
    }

    std::int64_t valuation() const
    {
        std::int64_t v = kExact;
        for (const auto &[r, x] : comps_) {
            std::int64_t w = x.valuation();
            if (w < x.prec()) v = std::min(v, sat_add(w, r));
        }
        return v;
    }
    std::int64_t prec() const
    {
        std::int64_t n = kExact;
        for (const auto &[r, x] : comps_) n = std::min(n, sat_add(x.prec(), r));
        return n;
    }
    bool is_zero() const { return valuation() >= kExact; }

    /// The single nonzero component, or -1.
    std::int64_t sigma_power() const
    {
        std::int64_t s = -1;
        for (const auto &[r, x] : comps_)
            if (!x.is_zero()) {
                if (s >= 0) return -1;
                s = r;
            }
        return s;
    }
    PadicPi component(std::int64_t r) const
    {
        auto it = comps_.find(r);
        return it == comps_.end() ? PadicPi(p_) : it->second;
    }

    FrobScalar operator+(const FrobScalar &o) const
    {
        FrobScalar s = *this;
        for (const auto &[r, x] : o.comps_) s.add(r, x);
        return s;
    }
    FrobScalar operator-() const
    {
        FrobScalar s(p_);
        for (const auto &[r, x] : comps_) s.comps_.emplace(r, -x);
        return s;
    }
    FrobScalar operator-(const FrobScalar &o) const { return *this + (-o); }
    FrobScalar operator*(const FrobScalar &o) const
    {
        FrobScalar s(p_);
        for (const auto &[r, x] : comps_)
            for (const auto &[t, y] : o.comps_) s.add(r + t, x * y);
        return s;
    }
    FrobScalar &operator+=(const FrobScalar &o) { return *this = *this + o; }

    std::string str() const
    {
        if (comps_.empty()) return "0";
        std::string out;
        for (const auto &[r, x] : comps_) {
            if (!out.empty()) out += " + ";
            out += "sigma^" + std::to_string(r) + "*(" + x.str() + ")";
        }
        return out;
    }

private:
    std::int64_t p_;
    std::map<std::int64_t, PadicPi> comps_;
};

} // namespace bhlab
