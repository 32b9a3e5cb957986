#pragma once

// Exterior algebra Λ(F^n) over Laurent polynomials in pi, with the Clifford
// action of e_i (wedge) and e_i^∨ (contraction), the skewed generators
// E_{A,i}, E_{A,i}^∨ and the star operator.

#include <bhlab/bhmat.hpp>
#include <bhlab/errors.hpp>
#include <bhlab/pilaurent.hpp>

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bhlab {

using Mask = std::uint32_t;

inline Mask bit(std::size_t i) { return Mask(1) << i; }
inline int popcount(Mask m) { return std::popcount(m); }

/// (-1)^{#{j in I : j < i}}
inline int koszul_sign(Mask I, std::size_t i) { return (popcount(I & (bit(i) - 1)) & 1) ? -1 : 1; }

inline std::string mask_str(Mask I)
{
    std::string s;
    for (std::size_t i = 0; i < 32; ++i)
        if (I & bit(i)) s += "e" + std::to_string(i + 1);
    return s;
}

class ExtElement
{
public:
    using Terms = std::map<Mask, PiLaurent>;

    ExtElement() = default;
    static ExtElement unit() { return basis(0); }
    static ExtElement basis(Mask I, const PiLaurent &c = 1)
    {
        ExtElement e;
        e.add(I, c);
        return e;
    }

    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    PiLaurent coeff(Mask I) const
    {
        auto it = terms_.find(I);
        return it == terms_.end() ? PiLaurent() : it->second;
    }

    void add(Mask I, const PiLaurent &c)
    {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(I, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    ExtElement &operator+=(const ExtElement &o)
    {
        for (const auto &[I, c] : o.terms_) add(I, c);
        return *this;
    }
    ExtElement &operator-=(const ExtElement &o)
    {
        for (const auto &[I, c] : o.terms_) add(I, -c);
        return *this;
    }
    friend ExtElement operator+(ExtElement a, const ExtElement &b) { return a += b; }
    friend ExtElement operator-(ExtElement a, const ExtElement &b) { return a -= b; }
    friend ExtElement operator*(const PiLaurent &s, const ExtElement &v)
    {
        ExtElement r;
        for (const auto &[I, c] : v.terms_) r.add(I, s * c);
        return r;
    }
    friend bool operator==(const ExtElement &a, const ExtElement &b) { return a.terms_ == b.terms_; }

    std::string str() const
    {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto &[I, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += "(" + c.str() + ")" + (I ? mask_str(I) : "1");
        }
        return s;
    }

private:
    Terms terms_;
};

inline ExtElement mul_e(std::size_t i, const ExtElement &v)
{
    ExtElement r;
    for (const auto &[I, c] : v.terms())
        if (!(I & bit(i))) r.add(I | bit(i), koszul_sign(I, i) == 1 ? c : -c);
    return r;
}

inline ExtElement contract_e(std::size_t i, const ExtElement &v)
{
    ExtElement r;
    for (const auto &[I, c] : v.terms())
        if (I & bit(i)) r.add(I & ~bit(i), koszul_sign(I, i) == 1 ? c : -c);
    return r;
}

/// E_{A,i} = pi * sum_j A_ij e_j, applied to v.
inline ExtElement apply_E(const IntMatrix &a, std::size_t i, const ExtElement &v)
{
    ExtElement r;
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (a(i, j) != 0) r += PiLaurent::monomial(1, Rational(static_cast<long>(a(i, j)))) * mul_e(j, v);
    return r;
}

/// E_{A,i}^∨ = pi^{-1} * sum_j (A^{-1})_ji e_j^∨, applied to v.
inline ExtElement apply_E_vee(const RatMatrix &inv, std::size_t i, const ExtElement &v)
{
    ExtElement r;
    for (std::size_t j = 0; j < inv.rows(); ++j)
        if (inv(j, i) != 0) r += PiLaurent::monomial(-1, inv(j, i)) * contract_e(j, v);
    return r;
}

inline ExtElement E(const BHMatrix &m, std::size_t i, const ExtElement &v) { return apply_E(m.entries(), i, v); }
inline ExtElement E_vee(const BHMatrix &m, std::size_t i, const ExtElement &v) { return apply_E_vee(m.inv(), i, v); }

/// star^A on each basis monomial, precomputed.
class StarTable
{
public:
    StarTable() = default;
    explicit StarTable(const BHMatrix &m)
    {
        const std::size_t n = m.n();
        const IntMatrix at = m.entries().transpose();
        const RatMatrix at_inv = m.inv().transpose();
        ExtElement top = ExtElement::unit();
        for (std::size_t i = n; i-- > 0;) top = apply_E(at, i, top);
        images_.resize(std::size_t(1) << n);
        for (Mask I = 0; I < images_.size(); ++I) {
            ExtElement v = top;
            for (std::size_t i = n; i-- > 0;)
                if (I & bit(i)) v = apply_E_vee(at_inv, i, v);
            images_[I] = std::move(v);
        }
    }

    const ExtElement &operator()(Mask I) const { return images_.at(I); }

    ExtElement operator()(const ExtElement &v) const
    {
        ExtElement r;
        for (const auto &[I, c] : v.terms()) r += c * images_.at(I);
        return r;
    }

private:
    std::vector<ExtElement> images_;
};

/// star^A(e_{i1}...e_{ik}) = E^∨_{A^T,i1} ... E^∨_{A^T,ik} E_{A^T,1} ... E_{A^T,n} 1
inline ExtElement star(const BHMatrix &m, const ExtElement &v) { return StarTable(m)(v); }

inline int ext_degree(const ExtElement &v)
{
    if (v.is_zero()) throw Error(ErrorKind::Inhomogeneous, "zero has no degree");
    int d = popcount(v.terms().begin()->first);
    for (const auto &[I, c] : v.terms())
        if (popcount(I) != d) throw Error(ErrorKind::Inhomogeneous, "mixed exterior degrees");
    return d;
}

/// ext: multiplies e^I by |I|.
inline ExtElement apply_ext(const ExtElement &v)
{
    ExtElement r;
    for (const auto &[I, c] : v.terms()) r.add(I, c * Rational(popcount(I)));
    return r;
}

} // namespace bhlab
