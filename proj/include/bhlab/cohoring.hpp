#pragma once

// Monomial bases of orbifold cohomology, closed-form Pochhammer reduction and
// the cohomology-level duality matrix.

#include <bhlab/bhmat.hpp>
#include <bhlab/chaincx.hpp>
#include <bhlab/errors.hpp>
#include <bhlab/homolab.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bhlab {

/// Milnor ring basis of a chain or loop as exponent vectors x^{gamma} in the
/// top exterior degree (so every exponent is at least 1), in canonical order.
inline std::vector<IntVec> milnor_basis(const Atom &atom)
{
    const std::size_t n = atom.size();
    const IntVec &a = atom.exponents;
    std::vector<IntVec> out;
    // free box on the coordinates from `from` on, after a fixed prefix
    auto box = [&](IntVec prefix, std::size_t from, std::int64_t first_cap) {
        std::vector<IntVec> acc{prefix};
        for (std::size_t i = from; i < n; ++i) {
            std::int64_t cap = (i == from) ? first_cap : a[i];
            std::vector<IntVec> next;
            for (const auto &p : acc)
                for (std::int64_t g = 1; g <= cap; ++g) {
                    auto q = p;
                    q.push_back(g);
                    next.push_back(q);
                }
            acc = std::move(next);
        }
        return acc;
    };
    if (atom.kind == AtomKind::Loop) return box({}, 0, a[0]);
    // x1^{a1} x2 x3^{a3} x4 ... x_{2m-1}^{a_{2m-1}} x_{2m} with gamma_{2m+1} < a_{2m+1}
    IntVec prefix;
    for (std::size_t m = 0; 2 * m <= n; ++m) {
        if (2 * m == n) {
            out.push_back(prefix);
            break;
        }
        if (a[2 * m] > 1)
            for (auto &g : box(prefix, 2 * m, a[2 * m] - 1)) out.push_back(std::move(g));
        if (2 * m + 1 == n) break;
        prefix.push_back(a[2 * m]);
        prefix.push_back(1);
    }
    return out;
}

/// Milnor basis of an arbitrary valid matrix, indexed by its own variables.
inline std::vector<IntVec> milnor_basis(const BHMatrix &m)
{
    std::vector<IntVec> acc{IntVec(m.n(), 0)};
    for (const auto &atom : m.decomposition().atoms) {
        std::vector<IntVec> next;
        for (const auto &p : acc)
            for (const auto &g : milnor_basis(atom)) {
                auto q = p;
                for (std::size_t k = 0; k < atom.size(); ++k) q[atom.vars[k]] = g[k];
                next.push_back(std::move(q));
            }
        acc = std::move(next);
    }
    return acc;
}

struct CohBasisEntry {
    Sector sector;
    Monomial mono;
    GradingReport gradings;
};

struct CohBasis {
    std::vector<CohBasisEntry> entries;

    std::size_t size() const { return entries.size(); }
    std::vector<Monomial> monomials() const
    {
        std::vector<Monomial> out;
        for (const auto &e : entries) out.push_back(e.mono);
        return out;
    }
    std::optional<std::size_t> find(const Monomial &mo) const
    {
        for (std::size_t k = 0; k < entries.size(); ++k)
            if (entries[k].mono == mo) return k;
        return std::nullopt;
    }
};

inline Mask fixed_mask(const Sector &s)
{
    Mask I = 0;
    for (std::size_t i : s.fixed) I |= bit(i);
    return I;
}

/// x^{gamma+I} y^lambda e^I over all sectors, sorted by sector then by the
/// Milnor basis order of A^lambda.
inline CohBasis orbifold_basis(const BHMatrix &m)
{
    Context c(m);
    CohBasis b;
    for (const auto &s : group_elements(m)) {
        const Mask I = fixed_mask(s);
        for (const auto &g : milnor_basis(s.sub)) {
            Monomial mo{IntVec(m.n(), 0), s.lambda, I};
            for (std::size_t k = 0; k < s.fixed.size(); ++k) mo.gamma[s.fixed[k]] = g[k];
            b.entries.push_back({s, mo, gradings(c, mo)});
        }
    }
    return b;
}

// Closed-form reduction ------------------------------------------------------

struct ClosedForm {
    ChainElement reduced;    // supported on basis monomials
    ChainElement unresolved; // terms left for the oracle
};

namespace detail {

/// Sector, moved directions and mu with lambda = lambda0 + mu A^T.
struct SectorSplit {
    IntVec lambda0;
    IntVec mu;
};

inline SectorSplit split_lambda(const Context &c, const IntVec &lam)
{
    SectorSplit s;
    s.lambda0 = canonical_lambda(c.matrix(), lam);
    s.mu.assign(c.n(), 0);
    for (std::size_t i = 0; i < c.n(); ++i) s.mu[i] = (c.ynum(lam, i) - c.ynum(s.lambda0, i)) / c.D();
    return s;
}

} // namespace detail

/// Applies x^{gamma + k e_i A} = (-pi)^{-k} ((gamma A^{-1})_i)_{(k)} x^gamma
/// inside A^lambda, in either direction while the Pochhammer symbol is nonzero, and y^{lambda + k e_i A^T} = (-pi)^{-k} ((lambda A^{-T})_i)_{(k)} y^lambda
/// along moved directions.
inline ClosedForm reduce_closed_form(const BHMatrix &m, const ChainElement &v)
{
    Context c(m);
    ClosedForm out;
    std::optional<IntVec> sector;
    std::map<IntVec, std::pair<Sector, std::vector<IntVec>>> cache;
    for (const auto &[mo, k] : v.terms()) {
        auto sp = detail::split_lambda(c, mo.lam);
        if (sector && *sector != sp.lambda0) throw Error(ErrorKind::MixedSectors, "terms from several sectors");
        sector = sp.lambda0;
        auto it = cache.find(sp.lambda0);
        if (it == cache.end()) {
            Sector s = make_sector(m, sp.lambda0);
            auto mb = milnor_basis(s.sub);
            it = cache.emplace(sp.lambda0, std::make_pair(std::move(s), std::move(mb))).first;
        }
        const Sector &s = it->second.first;
        const auto &mb = it->second.second;
        if (mo.I != fixed_mask(s)) throw Error(ErrorKind::NotTopDegree, mo.str() + " is not in top degree of its sector");

        bool ok = true;
        for (std::size_t i = 0; i < m.n(); ++i) {
            if (s.jvee[i] && mo.gamma[i] != 0) ok = false;  // zero class, never stored
            if (!s.jvee[i] && sp.mu[i] != 0) ok = false;    // pairs with another sector
            if (!s.jvee[i] && mo.gamma[i] == 0) ok = false; // outside the top-degree pattern
        }
        if (!ok) {
            out.unresolved.add(mo, k);
            continue;
        }
        // y-side along moved directions
        PiLaurent coeff = k;
        RatVec ch0 = m.charges_y(sp.lambda0);
        for (std::size_t i = 0; i < m.n(); ++i)
            if (sp.mu[i]) {
                Rational f = pochhammer(ch0[i], sp.mu[i]);
                if (sp.mu[i] % 2) f = -f;
                coeff = coeff * PiLaurent::monomial(-sp.mu[i], f);
            }
        // x-side inside A^lambda
        const std::size_t f = s.fixed.size();
        IntVec gF(f);
        for (std::size_t a = 0; a < f; ++a) gF[a] = mo.gamma[s.fixed[a]];
        std::vector<std::pair<std::size_t, PiLaurent>> hits;
        for (std::size_t b = 0; b < mb.size(); ++b) {
            IntVec diff(f);
            for (std::size_t a = 0; a < f; ++a) diff[a] = gF[a] - mb[b][a];
            RatVec z = s.sub.charges_x(diff);
            RatVec base = s.sub.charges_x(mb[b]);
            bool fits = true;
            for (const auto &x : z)
                if (!is_integer(x)) fits = false;
            if (!fits) continue;
            PiLaurent t = coeff;
            for (std::size_t a = 0; a < f; ++a) {
                std::int64_t zk = to_i64(z[a].get_num());
                Rational p = zk >= 0 ? pochhammer(base[a], zk) : pochhammer(base[a] + zk, -zk);
                if (zk < 0) {
                    if (p == 0) fits = false;
                    else p = 1 / p;
                }
                if (zk % 2) p = -p;
                t = t * PiLaurent::monomial(-zk, p);
            }
            if (!fits) continue;
            hits.emplace_back(b, t);
        }
        if (hits.size() != 1) {
            out.unresolved.add(mo, k);
            continue;
        }
        Monomial target{IntVec(m.n(), 0), sp.lambda0, mo.I};
        for (std::size_t a = 0; a < f; ++a) target.gamma[s.fixed[a]] = mb[hits[0].first][a];
        out.reduced.add(target, hits[0].second);
    }
    return out;
}

// Normal form -----------------------------------------------------------------

/// Smallest window containing every term of v (and at least the largest entry).
inline std::int64_t window_for(const BHMatrix &m, const ChainElement &v, std::int64_t at_least = 0)
{
    Context c(m);
    std::int64_t w = at_least;
    for (std::size_t i = 0; i < m.n(); ++i)
        for (std::size_t j = 0; j < m.n(); ++j) w = std::max(w, m(i, j));
    for (const auto &[mo, k] : v.terms()) {
        std::int64_t s = scaled_wprime(c, mo);
        std::int64_t ceil = s >= 0 ? (s + c.D() - 1) / c.D() : -((-s) / c.D());
        w = std::max(w, ceil);
    }
    return w;
}

/// Coordinates of the class of v on the orbifold basis: closed form where it
/// applies, brute force for the rest.
inline std::vector<PiLaurent> normal_form(const BHMatrix &m, const CohBasis &basis, const ChainElement &v,
                                          std::int64_t window = 0)
{
    std::vector<PiLaurent> coords(basis.size());
    ChainElement rest;
    // group by sector so closed form sees one sector at a time
    Context c(m);
    std::map<IntVec, ChainElement> by_sector;
    for (const auto &[mo, k] : v.terms()) by_sector[canonical_lambda(m, mo.lam)].add(mo, k);
    for (const auto &[lam, part] : by_sector) {
        for (const auto &[mo, k] : part.terms()) {
            try {
                auto cf = reduce_closed_form(m, ChainElement(mo, k));
                for (const auto &[t, x] : cf.reduced.terms()) coords[*basis.find(t)] += x;
                rest += cf.unresolved;
            } catch (const Error &e) {
                if (e.kind() != ErrorKind::NotTopDegree) throw;
                rest.add(mo, k);
            }
        }
    }
    if (!rest.is_zero()) {
        TruncatedComplex tc(m, window_for(m, rest, window));
        auto r = reduce_by_oracle(tc, rest, basis.monomials());
        for (std::size_t b = 0; b < basis.size(); ++b) coords[b] += r.coords[b];
    }
    return coords;
}

/// Matrix of H(Delta^A): column b holds the coordinates of Delta(b) on the
/// basis of A^T.
inline std::vector<std::vector<PiLaurent>> duality_matrix(const BHMatrix &m, const CohBasis &basis_a,
                                                          const CohBasis &basis_at)
{
    Context c(m);
    BHMatrix mt = m.transpose();
    std::vector<std::vector<PiLaurent>> mat(basis_at.size(), std::vector<PiLaurent>(basis_a.size()));
    for (std::size_t b = 0; b < basis_a.size(); ++b) {
        auto col = normal_form(mt, basis_at, delta(c, ChainElement(basis_a.entries[b].mono)));
        for (std::size_t r = 0; r < basis_at.size(); ++r) mat[r][b] = col[r];
    }
    return mat;
}

inline std::vector<std::vector<PiLaurent>> duality_matrix(const BHMatrix &m)
{
    return duality_matrix(m, orbifold_basis(m), orbifold_basis(m.transpose()));
}

} // namespace bhlab
