#pragma once

// Laurent polynomials in a formal unit pi over the rationals.

#include <bhlab/rational.hpp>

#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

namespace bhlab {

class PiLaurent
{
public:
    using Terms = std::map<std::int64_t, Rational>;

    PiLaurent() = default;
    PiLaurent(const Rational &c) { add_term(0, c); } // NOLINT: implicit scalars are convenient
    PiLaurent(long c) : PiLaurent(Rational(c)) {}     // NOLINT
    PiLaurent(int c) : PiLaurent(Rational(c)) {}      // NOLINT

    static PiLaurent monomial(std::int64_t power, const Rational &c = 1)
    {
        PiLaurent r;
        r.add_term(power, c);
        return r;
    }

    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coeff(std::int64_t power) const
    {
        auto it = terms_.find(power);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(std::int64_t power, const Rational &c)
    {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(power, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    PiLaurent &operator+=(const PiLaurent &o)
    {
        for (const auto &[k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    PiLaurent &operator-=(const PiLaurent &o)
    {
        for (const auto &[k, c] : o.terms_) add_term(k, -c);
        return *this;
    }
    PiLaurent &operator*=(const Rational &s)
    {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto &[k, c] : terms_) c *= s;
        return *this;
    }

    friend PiLaurent operator+(PiLaurent a, const PiLaurent &b) { return a += b; }
    friend PiLaurent operator-(PiLaurent a, const PiLaurent &b) { return a -= b; }
    friend PiLaurent operator-(PiLaurent a)
    {
        for (auto &[k, c] : a.terms_) c = -c;
        return a;
    }
    friend PiLaurent operator*(PiLaurent a, const Rational &s) { return a *= s; }
    friend PiLaurent operator*(const Rational &s, PiLaurent a) { return a *= s; }

    friend PiLaurent operator*(const PiLaurent &a, const PiLaurent &b)
    {
        PiLaurent r;
        for (const auto &[ka, ca] : a.terms_)
            for (const auto &[kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
        return r;
    }

    /// Multiply by pi^k.
    PiLaurent shifted(std::int64_t k) const
    {
        PiLaurent r;
        for (const auto &[p, c] : terms_) r.terms_.emplace(p + k, c);
        return r;
    }

    /// Evaluate at a nonzero rational value of pi.
    Rational evaluate(const Rational &pi) const
    {
        Rational r = 0;
        for (const auto &[k, c] : terms_) {
            Rational pw = 1;
            if (k >= 0)
                for (std::int64_t i = 0; i < k; ++i) pw *= pi;
            else
                for (std::int64_t i = 0; i < -k; ++i) pw /= pi;
            r += c * pw;
        }
        return r;
    }

    friend bool operator==(const PiLaurent &a, const PiLaurent &b) { return a.terms_ == b.terms_; }

    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto &[k, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << to_string(c);
            if (k == 1)
                os << "*pi";
            else if (k != 0)
                os << "*pi^" << k;
        }
        return os.str();
    }

    friend std::ostream &operator<<(std::ostream &os, const PiLaurent &p) { return os << p.str(); }

private:
    Terms terms_;
};

/// Rewrite with pi^{p-1} = -p so that only powers 0..p-2 remain.
inline PiLaurent reduce_pi_relation(const PiLaurent &v, std::int64_t p)
{
    const std::int64_t e = p - 1;
    PiLaurent r;
    for (const auto &[k, c] : v.terms()) {
        std::int64_t q = k >= 0 ? k / e : -((-k + e - 1) / e);
        std::int64_t rem = k - q * e;
        Rational f = 1;
        Rational mp(static_cast<long>(-p));
        for (std::int64_t j = 0; j < (q >= 0 ? q : -q); ++j) f *= mp;
        if (q < 0) f = 1 / f;
        r.add_term(rem, c * f);
    }
    return r;
}

} // namespace bhlab
