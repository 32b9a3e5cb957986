#pragma once

// Berglund-Huebsch exponent matrices: validation, chain/loop atoms, and the
// scaling-symmetry sectors G_A = Z^n / Z^n A^T.
//
// Row i of the matrix is the exponent vector of the i-th monomial of
// W_A(x) = sum_i x^{e_i A}.

#include <bhlab/errors.hpp>
#include <bhlab/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace bhlab {

enum class AtomKind { Chain, Loop };

struct Atom {
    AtomKind kind;
    IntVec exponents;               // a_1..a_k in canonical order
    std::vector<std::size_t> vars;  // original variable index of canonical slot

    std::size_t size() const { return exponents.size(); }

    /// Canonical matrix x1^{a1}x2 + ... (+ x_k^{a_k}x_1 for loops).
    IntMatrix canonical() const
    {
        const std::size_t k = size();
        IntMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            m(i, i) = exponents[i];
            if (i + 1 < k) m(i, i + 1) = 1;
        }
        if (kind == AtomKind::Loop) m(k - 1, 0) = 1;
        return m;
    }

    std::string str() const
    {
        std::ostringstream os;
        os << (kind == AtomKind::Chain ? "chain(" : "loop(");
        for (std::size_t i = 0; i < exponents.size(); ++i) os << (i ? "," : "") << exponents[i];
        os << ")";
        return os.str();
    }

    friend bool operator==(const Atom &, const Atom &) = default;
};

struct AtomDecomposition {
    /// permutation[k] = original variable placed at canonical position k.
    std::vector<std::size_t> permutation;
    /// row_permutation[k] = original row (monomial) placed at canonical row k.
    std::vector<std::size_t> row_permutation;
    std::vector<Atom> atoms;

    IntMatrix block_sum() const
    {
        std::size_t n = 0;
        for (const auto &a : atoms) n += a.size();
        IntMatrix m(n, n);
        std::size_t off = 0;
        for (const auto &a : atoms) {
            IntMatrix c = a.canonical();
            for (std::size_t i = 0; i < a.size(); ++i)
                for (std::size_t j = 0; j < a.size(); ++j) m(off + i, off + j) = c(i, j);
            off += a.size();
        }
        return m;
    }

    std::string str() const
    {
        std::string s;
        for (std::size_t i = 0; i < atoms.size(); ++i) s += (i ? " + " : "") + atoms[i].str();
        return s.empty() ? "empty" : s;
    }
};

namespace detail {

// Each row is x_owner^a (chain end) or x_owner^a * x_next.
struct RowShape {
    std::size_t owner;
    std::int64_t exponent;
    std::optional<std::size_t> next;
};

inline std::vector<std::vector<RowShape>> row_options(const IntMatrix &m)
{
    const std::size_t n = m.rows();
    std::vector<std::vector<RowShape>> opts(n);
    for (std::size_t r = 0; r < n; ++r) {
        std::vector<std::size_t> nz;
        for (std::size_t c = 0; c < n; ++c)
            if (m(r, c) != 0) nz.push_back(c);
        if (nz.size() == 1) {
            opts[r].push_back({nz[0], m(r, nz[0]), std::nullopt});
        } else if (nz.size() == 2) {
            const std::size_t c0 = nz[0], c1 = nz[1];
            if (m(r, c1) == 1) opts[r].push_back({c0, m(r, c0), c1});
            if (m(r, c0) == 1) opts[r].push_back({c1, m(r, c1), c0});
        }
    }
    return opts;
}

inline std::optional<AtomDecomposition> assemble(const std::vector<RowShape> &shape)
{
    const std::size_t n = shape.size();
    std::vector<std::optional<std::size_t>> row_of(n), next(n);
    std::vector<std::int64_t> expo(n, 0);
    std::vector<int> indeg(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        const auto &s = shape[r];
        if (row_of[s.owner]) return std::nullopt;
        row_of[s.owner] = r;
        expo[s.owner] = s.exponent;
        next[s.owner] = s.next;
        if (s.next) ++indeg[*s.next];
    }
    for (std::size_t v = 0; v < n; ++v)
        if (indeg[v] > 1) return std::nullopt;

    std::vector<bool> seen(n, false);
    std::vector<Atom> atoms;
    // chains start at variables with no incoming pointer
    for (std::size_t v = 0; v < n; ++v) {
        if (indeg[v] != 0) continue;
        Atom a{AtomKind::Chain, {}, {}};
        std::optional<std::size_t> cur = v;
        while (cur) {
            if (seen[*cur]) return std::nullopt;
            seen[*cur] = true;
            a.vars.push_back(*cur);
            a.exponents.push_back(expo[*cur]);
            cur = next[*cur];
        }
        if (a.exponents.back() < 2) return std::nullopt;
        atoms.push_back(std::move(a));
    }
    // whatever is left lies on cycles; rotate each to start at its smallest variable
    for (std::size_t v = 0; v < n; ++v) {
        if (seen[v]) continue;
        Atom a{AtomKind::Loop, {}, {}};
        std::size_t cur = v;
        while (!seen[cur]) {
            seen[cur] = true;
            a.vars.push_back(cur);
            a.exponents.push_back(expo[cur]);
            if (!next[cur]) return std::nullopt;
            cur = *next[cur];
        }
        if (cur != v || a.size() < 2) return std::nullopt;
        atoms.push_back(std::move(a));
    }
    auto lead = [](const Atom &a) {
        return a.kind == AtomKind::Chain ? a.vars.front() : *std::min_element(a.vars.begin(), a.vars.end());
    };
    std::sort(atoms.begin(), atoms.end(), [&](const Atom &x, const Atom &y) { return lead(x) < lead(y); });

    AtomDecomposition d;
    d.atoms = std::move(atoms);
    for (const auto &a : d.atoms)
        for (std::size_t v : a.vars) {
            d.permutation.push_back(v);
            d.row_permutation.push_back(*row_of[v]);
        }
    return d;
}

} // namespace detail

class BHMatrix
{
public:
    BHMatrix() : det_(1) {} // 0x0

    /// Throws Error{BadShape | Singular | NotInvertiblePolynomial}.
    static BHMatrix validate(const IntMatrix &entries)
    {
        const std::size_t n = entries.rows();
        if (entries.cols() != n) throw Error(ErrorKind::BadShape, "matrix must be square");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (entries(i, j) < 0) throw Error(ErrorKind::BadShape, "entries must be non-negative");
        BHMatrix m;
        m.entries_ = entries;
        Rational det;
        if (!invert(to_rational(entries), m.inv_, det))
            throw Error(ErrorKind::Singular, "singular matrix, determinant is zero");
        m.det_ = det.get_num();
        auto d = decompose_entries(entries);
        if (!d) throw Error(ErrorKind::NotInvertiblePolynomial, "no chain/loop decomposition");
        m.decomposition_ = std::move(*d);
        return m;
    }

    static BHMatrix validate(const std::vector<std::vector<std::int64_t>> &rows)
    {
        const std::size_t n = rows.size();
        IntMatrix e(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (rows[i].size() != n) throw Error(ErrorKind::BadShape, "matrix must be square");
            for (std::size_t j = 0; j < n; ++j) e(i, j) = rows[i][j];
        }
        return validate(e);
    }

    std::size_t n() const { return entries_.rows(); }
    const IntMatrix &entries() const { return entries_; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
    const Integer &det() const { return det_; }
    /// Exact inverse A^{-1}.
    const RatMatrix &inv() const { return inv_; }
    const AtomDecomposition &decomposition() const { return decomposition_; }

    BHMatrix transpose() const { return validate(entries_.transpose()); }

    /// gamma A^{-1}
    RatVec charges_x(const IntVec &gamma) const { return row_times(gamma, inv_); }

    /// lambda A^{-T}
    RatVec charges_y(const IntVec &lambda) const
    {
        RatVec out(n(), Rational(0));
        for (std::size_t j = 0; j < n(); ++j)
            for (std::size_t i = 0; i < n(); ++i)
                if (lambda[i] != 0) out[j] += Rational(static_cast<long>(lambda[i])) * inv_(j, i);
        return out;
    }

    friend bool operator==(const BHMatrix &a, const BHMatrix &b) { return a.entries_ == b.entries_; }

    std::string str() const
    {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < n(); ++i) {
            os << (i ? "," : "") << "[";
            for (std::size_t j = 0; j < n(); ++j) os << (j ? "," : "") << entries_(i, j);
            os << "]";
        }
        os << "]";
        return os.str();
    }

private:
    static std::optional<AtomDecomposition> decompose_entries(const IntMatrix &m)
    {
        const std::size_t n = m.rows();
        if (n == 0) return AtomDecomposition{};
        auto opts = detail::row_options(m);
        for (const auto &o : opts)
            if (o.empty()) return std::nullopt;
        std::vector<detail::RowShape> pick(n);
        std::optional<AtomDecomposition> found;
        std::function<void(std::size_t)> search = [&](std::size_t r) {
            if (found) return;
            if (r == n) {
                found = detail::assemble(pick);
                return;
            }
            for (const auto &o : opts[r]) {
                pick[r] = o;
                search(r + 1);
                if (found) return;
            }
        };
        search(0);
        return found;
    }

    IntMatrix entries_;
    Integer det_;
    RatMatrix inv_;
    AtomDecomposition decomposition_;
};

inline const AtomDecomposition &decompose(const BHMatrix &m) { return m.decomposition(); }

/// Weights q = A^{-1} 1, so every monomial x^{e_i A} has weighted degree 1.
inline RatVec weights(const BHMatrix &m)
{
    RatVec q(m.n(), Rational(0));
    for (std::size_t i = 0; i < m.n(); ++i)
        for (std::size_t j = 0; j < m.n(); ++j) q[i] += m.inv()(i, j);
    return q;
}

/// Weights of the y variables, A^{-T} 1.
inline RatVec dual_weights(const BHMatrix &m)
{
    RatVec q(m.n(), Rational(0));
    for (std::size_t i = 0; i < m.n(); ++i)
        for (std::size_t j = 0; j < m.n(); ++j) q[i] += m.inv()(j, i);
    return q;
}

inline IntMatrix direct_sum(const IntMatrix &a, const IntMatrix &b)
{
    IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

/// A group element lambda of G_A with its canonical data.
struct Sector {
    IntVec lambda;
    RatVec charges;                 // lambda A^{-T}, each in [0, 1)
    std::vector<bool> jvee;         // moved directions
    std::vector<std::size_t> fixed; // indices with jvee false, ascending
    BHMatrix sub;                   // A restricted to the fixed indices

    std::size_t moved_count() const
    {
        return static_cast<std::size_t>(std::count(jvee.begin(), jvee.end(), true));
    }
    bool is_untwisted() const { return moved_count() == 0; }
};

inline Sector make_sector(const BHMatrix &m, const IntVec &lambda)
{
    Sector s;
    s.lambda = lambda;
    s.charges = m.charges_y(lambda);
    s.jvee.resize(m.n());
    for (std::size_t i = 0; i < m.n(); ++i) {
        s.jvee[i] = !is_integer(s.charges[i]);
        if (!s.jvee[i]) s.fixed.push_back(i);
    }
    IntMatrix sub(s.fixed.size(), s.fixed.size());
    for (std::size_t a = 0; a < s.fixed.size(); ++a)
        for (std::size_t b = 0; b < s.fixed.size(); ++b) sub(a, b) = m(s.fixed[a], s.fixed[b]);
    s.sub = BHMatrix::validate(sub);
    return s;
}

/// Canonical representative of lambda modulo Z^n A^T (charges in [0,1)).
inline IntVec canonical_lambda(const BHMatrix &m, const IntVec &lambda)
{
    RatVec c = m.charges_y(lambda);
    for (auto &x : c) x = frac_of(x);
    // lambda = c A^T
    IntVec out(m.n(), 0);
    for (std::size_t j = 0; j < m.n(); ++j) {
        Rational s = 0;
        for (std::size_t i = 0; i < m.n(); ++i) s += c[i] * m(j, i);
        out[j] = to_i64(s.get_num());
    }
    return out;
}

/// The |det A| canonical sectors, sorted lexicographically by lambda.
inline std::vector<Sector> group_elements(const BHMatrix &m)
{
    const std::size_t n = m.n();
    std::vector<Sector> out;
    if (n == 0) {
        out.push_back(make_sector(m, {}));
        return out;
    }
    // lambda = c A^T with c in [0,1)^n, so 0 <= lambda_j < sum_i A_ji
    IntVec bound(n, 0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) bound[j] += m(j, i);
    IntVec lam(n, 0);
    while (true) {
        RatVec c = m.charges_y(lam);
        bool ok = true;
        for (const auto &x : c)
            if (x < 0 || x >= 1) {
                ok = false;
                break;
            }
        if (ok) out.push_back(make_sector(m, lam));
        std::size_t k = n;
        while (k > 0) {
            --k;
            if (++lam[k] < bound[k]) break;
            lam[k] = 0;
            if (k == 0) return out;
        }
    }
}

inline std::vector<std::pair<Sector, BHMatrix>> orbifold_matrix(const BHMatrix &m)
{
    std::vector<std::pair<Sector, BHMatrix>> out;
    for (auto &s : group_elements(m)) {
        BHMatrix sub = s.sub;
        out.emplace_back(std::move(s), std::move(sub));
    }
    return out;
}

/// Non-integrality of beta A^{-1} spreads to every later index of a chain and
/// that of beta A^{-T} to every earlier index; on a loop both spread to all
/// indices. beta is indexed by the variables of m.
inline bool check_noninteger_propagation(const BHMatrix &m, const IntVec &beta)
{
    const auto &d = m.decomposition();
    if (d.atoms.size() != 1) throw Error(ErrorKind::NotAnAtom, "matrix is not a single chain or loop");
    const Atom &atom = d.atoms.front();
    const std::size_t n = atom.size();
    BHMatrix canon = BHMatrix::validate(atom.canonical());
    IntVec b(n);
    for (std::size_t k = 0; k < n; ++k) b[k] = beta.at(atom.vars[k]);
    RatVec u = canon.charges_x(b);
    RatVec v = canon.charges_y(b);
    auto nonint = [](const Rational &x) { return !is_integer(x); };
    if (atom.kind == AtomKind::Loop) {
        bool any_u = std::any_of(u.begin(), u.end(), nonint);
        bool all_u = std::all_of(u.begin(), u.end(), nonint);
        bool any_v = std::any_of(v.begin(), v.end(), nonint);
        bool all_v = std::all_of(v.begin(), v.end(), nonint);
        return (!any_u || all_u) && (!any_v || all_v);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (nonint(u[i]))
            for (std::size_t k = i; k < n; ++k)
                if (!nonint(u[k])) return false;
        if (nonint(v[i]))
            for (std::size_t j = 0; j <= i; ++j)
                if (!nonint(v[j])) return false;
    }
    return true;
}

} // namespace bhlab
