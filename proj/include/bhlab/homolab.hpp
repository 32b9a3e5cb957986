#pragma once

// Brute-force cohomology of finite pieces of B_A by exact linear algebra.
//
// The window N keeps the monomials x^gamma y^lambda e^I with
//   w' = wt(gamma) + wt(lambda) - (Q + Q^∨) <= N.
// Every term of d + d^∨ keeps or lowers w', so this is a finite subcomplex,
// and these subcomplexes exhaust B_A. The complex further splits by sector,
// by the class of gamma A^{-1} modulo Z^n and by the degree Q + Q^∨.

#include <bhlab/bhmat.hpp>
#include <bhlab/chaincx.hpp>
#include <bhlab/echelon.hpp>
#include <bhlab/errors.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bhlab {

/// D * w' for a monomial.
inline std::int64_t scaled_wprime(const Context &c, const Monomial &mo)
{
    std::int64_t s = 0;
    for (std::size_t j = 0; j < c.n(); ++j) s += c.xnum(mo.gamma, j) + c.ynum(mo.lam, j);
    return s - c.D() * (q_value(c, mo) + qvee_value(c, mo));
}

/// omega = wt(gamma) + wt(lambda) - Q^∨; pi^k m has weight omega(m) - k and
/// d + d^∨ preserves it.
inline Rational omega(const Context &c, const Monomial &mo)
{
    std::int64_t s = 0;
    for (std::size_t j = 0; j < c.n(); ++j) s += c.xnum(mo.gamma, j) + c.ynum(mo.lam, j);
    return ratio(s - c.D() * qvee_value(c, mo), c.D());
}

struct BlockKey {
    IntVec lambda; // canonical sector representative
    IntVec xclass; // D * (gamma A^{-1}) mod D
    std::int64_t degree;
    auto operator<=>(const BlockKey &) const = default;
};

inline IntVec x_class(const Context &c, const IntVec &gamma)
{
    IntVec k(c.n());
    for (std::size_t j = 0; j < c.n(); ++j) {
        std::int64_t v = c.xnum(gamma, j) % c.D();
        k[j] = v < 0 ? v + c.D() : v;
    }
    return k;
}

class TruncatedComplex
{
public:
    struct Block {
        std::vector<Monomial> basis;
        std::map<Monomial, std::size_t> index;
    };

    TruncatedComplex(const BHMatrix &m, std::int64_t window, const Rational &pi_value = 1, bool only_SA = false,
                     std::optional<IntVec> only_sector = std::nullopt)
        : ctx_(m), window_(window), pi_(pi_value), only_SA_(only_SA)
    {
        std::int64_t maxe = 0;
        for (std::size_t i = 0; i < m.n(); ++i)
            for (std::size_t j = 0; j < m.n(); ++j) maxe = std::max(maxe, m(i, j));
        if (window < maxe) throw Error(ErrorKind::WindowTooSmall, "window below the largest exponent");
        if (pi_value == 0) throw Error(ErrorKind::BadShape, "pi must be nonzero");
        for (auto &s : group_elements(m))
            if (!only_sector || *only_sector == s.lambda) sectors_.push_back(s);
        for (const auto &s : sectors_) enumerate(s);
    }

    const Context &context() const { return ctx_; }
    const BHMatrix &matrix() const { return ctx_.matrix(); }
    std::int64_t window() const { return window_; }
    const Rational &pi_value() const { return pi_; }
    bool only_SA() const { return only_SA_; }
    const std::vector<Sector> &sectors() const { return sectors_; }
    const std::map<BlockKey, Block> &blocks() const { return blocks_; }

    std::size_t size() const
    {
        std::size_t s = 0;
        for (const auto &[k, b] : blocks_) s += b.basis.size();
        return s;
    }

    BlockKey key_of(const Monomial &mo) const
    {
        return {canonical_lambda(ctx_.matrix(), mo.lam), x_class(ctx_, mo.gamma), q_value(ctx_, mo) + qvee_value(ctx_, mo)};
    }

    bool contains(const Monomial &mo) const
    {
        auto it = blocks_.find(key_of(mo));
        return it != blocks_.end() && it->second.index.count(mo);
    }

    /// Rational coordinates (pi specialized) of d(b) in the next block.
    std::vector<std::pair<std::size_t, Rational>> image(const Monomial &b, const Block &target) const
    {
        std::vector<std::pair<std::size_t, Rational>> out;
        const ChainElement db = apply_total(ctx_, ChainElement(b));
        for (const auto &[mo, k] : db.terms()) {
            auto it = target.index.find(mo);
            if (it == target.index.end()) throw Error(ErrorKind::NotInWindow, "window is not closed under d");
            out.emplace_back(it->second, k.evaluate(pi_));
        }
        std::sort(out.begin(), out.end(), [](const auto &a, const auto &b2) { return a.first < b2.first; });
        return out;
    }

    /// Rank of d from block k to the block of degree k.degree + 1.
    std::size_t d_rank(const BlockKey &k) const
    {
        auto src = blocks_.find(k);
        if (src == blocks_.end()) return 0;
        BlockKey tk = k;
        ++tk.degree;
        auto tgt = blocks_.find(tk);
        if (tgt == blocks_.end()) return 0;
        Echelon e;
        for (const auto &b : src->second.basis) e.insert(integer_row(image(b, tgt->second)));
        return e.rank();
    }

    /// Checks d o d = 0 on every block.
    bool d_squared_zero() const
    {
        for (const auto &[k, b] : blocks_)
            for (const auto &mo : b.basis) {
                auto dd = apply_total(ctx_, apply_total(ctx_, ChainElement(mo)));
                for (const auto &[m2, c] : dd.terms())
                    if (c.evaluate(pi_) != 0) return false;
            }
        return true;
    }

private:
    void enumerate(const Sector &s)
    {
        const std::size_t n = ctx_.n();
        const std::int64_t D = ctx_.D();
        const std::int64_t cap = (window_ + 2 * static_cast<std::int64_t>(n)) * D;
        // D * charge of the canonical lambda
        IntVec c0(n);
        for (std::size_t j = 0; j < n; ++j) c0[j] = ctx_.ynum(s.lambda, j);
        std::int64_t c0sum = 0;
        for (auto v : c0) c0sum += v;

        // x-weights of the unit vectors, times D
        IntVec qx(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            IntVec e(n, 0);
            e[i] = 1;
            for (std::size_t j = 0; j < n; ++j) qx[i] += ctx_.xnum(e, j);
        }

        std::vector<IntVec> mus;
        IntVec mu(n, 0);
        std::function<void(std::size_t, std::int64_t)> rec_mu = [&](std::size_t i, std::int64_t used) {
            if (i == n) {
                mus.push_back(mu);
                return;
            }
            for (std::int64_t k = 0; c0sum + used + k * D <= cap; ++k) {
                mu[i] = k;
                rec_mu(i + 1, used + k * D);
            }
            mu[i] = 0;
        };
        rec_mu(0, 0);

        for (const auto &mv : mus) {
            IntVec lam = s.lambda;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) lam[j] += mv[i] * ctx_.A(j, i);
            std::int64_t ysum = c0sum;
            for (auto v : mv) ysum += v * D;
            // gamma is supported where the y-charge vanishes
            std::vector<bool> free(n);
            for (std::size_t i = 0; i < n; ++i) free[i] = (c0[i] + mv[i] * D) == 0;
            IntVec g(n, 0);
            std::function<void(std::size_t, std::int64_t)> rec_g = [&](std::size_t i, std::int64_t used) {
                if (i == n) {
                    for (Mask I = 0; I < (Mask(1) << n); ++I) add(Monomial{g, lam, I});
                    return;
                }
                if (!free[i]) {
                    rec_g(i + 1, used);
                    return;
                }
                for (std::int64_t k = 0; ysum + used + k * qx[i] <= cap; ++k) {
                    g[i] = k;
                    rec_g(i + 1, used + k * qx[i]);
                }
                g[i] = 0;
            };
            rec_g(0, 0);
        }
    }

    void add(const Monomial &mo)
    {
        if (!ctx_.alive(mo)) return;
        if (only_SA_ && !ctx_.in_SA(mo)) return;
        if (scaled_wprime(ctx_, mo) > window_ * ctx_.D()) return;
        Block &b = blocks_[key_of(mo)];
        b.index.emplace(mo, b.basis.size());
        b.basis.push_back(mo);
    }

    Context ctx_;
    std::int64_t window_;
    Rational pi_;
    bool only_SA_;
    std::vector<Sector> sectors_;
    std::map<BlockKey, Block> blocks_;
};

inline TruncatedComplex truncate(const BHMatrix &m, std::int64_t window, const Rational &pi_value = 1)
{
    return TruncatedComplex(m, window, pi_value);
}

/// Cohomology dimension per degree Q + Q^∨ of the sector at the window.
inline std::map<std::int64_t, std::size_t> window_ranks(const TruncatedComplex &tc, const IntVec &lambda)
{
    std::map<std::int64_t, std::size_t> dims, ranks, out;
    for (const auto &[k, b] : tc.blocks()) {
        if (k.lambda != lambda) continue;
        dims[k.degree] += b.basis.size();
        ranks[k.degree] += tc.d_rank(k);
    }
    for (const auto &[t, dim] : dims) {
        std::size_t r_out = ranks[t];
        std::size_t r_in = ranks.count(t - 1) ? ranks[t - 1] : 0;
        std::size_t h = dim - r_out - r_in;
        if (h) out[t] = h;
    }
    return out;
}

/// Ranks at the window, checked against the next window; throws Unstable.
inline std::map<std::int64_t, std::size_t> cohomology_rank(const TruncatedComplex &tc, const Sector &sector)
{
    auto here = window_ranks(tc, sector.lambda);
    TruncatedComplex next(tc.matrix(), tc.window() + 1, tc.pi_value(), tc.only_SA(), sector.lambda);
    auto there = window_ranks(next, sector.lambda);
    if (here != there) throw Error(ErrorKind::Unstable, "cohomology changes between windows");
    return here;
}

inline std::size_t total_rank(const std::map<std::int64_t, std::size_t> &r)
{
    std::size_t s = 0;
    for (const auto &[t, k] : r) s += k;
    return s;
}

// Milnor number -------------------------------------------------------------

/// dim Q[x]/(d_1 W, ..., d_n W) by graded linear algebra up to the socle
/// degree sum_i (1 - 2 q_i).
inline std::int64_t milnor_dimension(const BHMatrix &m)
{
    const std::size_t n = m.n();
    if (n == 0) return 1;
    Context c(m);
    const std::int64_t D = c.D();
    IntVec qx(n, 0); // D * q_i
    for (std::size_t i = 0; i < n; ++i) {
        IntVec e(n, 0);
        e[i] = 1;
        for (std::size_t j = 0; j < n; ++j) qx[i] += c.xnum(e, j);
    }
    std::int64_t socle = 0;
    for (auto q : qx) socle += D - 2 * q;

    // monomials by scaled degree
    std::map<std::int64_t, std::vector<IntVec>> by_deg;
    IntVec g(n, 0);
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t deg) {
        if (i == n) {
            by_deg[deg].push_back(g);
            return;
        }
        for (std::int64_t k = 0; deg + k * qx[i] <= socle; ++k) {
            g[i] = k;
            rec(i + 1, deg + k * qx[i]);
        }
        g[i] = 0;
    };
    rec(0, 0);

    std::int64_t total = 0;
    for (const auto &[deg, monos] : by_deg) {
        std::map<IntVec, std::size_t> index;
        for (std::size_t k = 0; k < monos.size(); ++k) index[monos[k]] = k;
        Echelon e;
        // x^alpha d_i W with deg(alpha) + D - q_i = deg
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t adeg = deg - D + qx[i];
            if (adeg < 0 || !by_deg.count(adeg)) continue;
            for (const auto &alpha : by_deg.at(adeg)) {
                std::map<std::size_t, Integer> row;
                for (std::size_t r = 0; r < n; ++r) {
                    if (m(r, i) == 0) continue;
                    IntVec t = alpha;
                    for (std::size_t j = 0; j < n; ++j) t[j] += m(r, j);
                    --t[i];
                    row[index.at(t)] += Integer(static_cast<long>(m(r, i)));
                }
                SparseVec v;
                for (auto &[k, x] : row)
                    if (x != 0) v.emplace_back(k, x);
                e.insert(v);
            }
        }
        total += static_cast<std::int64_t>(monos.size() - e.rank());
    }
    return total;
}

/// prod_i (1/q_i - 1)
inline Rational milnor_number_from_weights(const BHMatrix &m)
{
    Rational r = 1;
    for (const auto &q : weights(m)) r *= 1 / q - 1;
    return r;
}

// Reduction -----------------------------------------------------------------

struct OracleReduction {
    std::vector<PiLaurent> coords;
    ChainElement primitive; // v - sum coords_b b = (d + d^∨)(primitive)
};

/// Solves v - sum_b c_b b = (d + d^∨) u inside the window. Each component of
/// constant omega is solved with pi specialized; pi-powers are then restored
/// from omega, which d + d^∨ preserves.
inline OracleReduction reduce_by_oracle(const TruncatedComplex &tc, const ChainElement &v,
                                        const std::vector<Monomial> &basis)
{
    const Context &c = tc.context();
    if (!apply_total(c, v).is_zero()) throw Error(ErrorKind::NotACocycle, "input is not closed");
    for (const auto &[mo, k] : v.terms())
        if (!tc.contains(mo)) throw Error(ErrorKind::NotInWindow, mo.str() + " lies outside the window");

    OracleReduction out;
    out.coords.assign(basis.size(), PiLaurent());

    // components by (block, omega)
    std::map<std::pair<BlockKey, Rational>, std::vector<std::pair<Monomial, Rational>>> parts;
    for (const auto &[mo, k] : v.terms())
        for (const auto &[pw, x] : k.terms())
            parts[{tc.key_of(mo), omega(c, mo) - Rational(static_cast<long>(pw))}].emplace_back(mo, x);

    auto pi_pow = [&](const Rational &e) {
        if (!is_integer(e)) throw Error(ErrorKind::OracleFallbackFailed, "fractional pi power");
        return to_i64(e.get_num());
    };
    auto pi_eval = [&](std::int64_t e) {
        Rational r = 1;
        for (std::int64_t k = 0; k < (e >= 0 ? e : -e); ++k) r *= tc.pi_value();
        return e >= 0 ? r : 1 / r;
    };

    for (const auto &[key, terms] : parts) {
        const auto &[bk, om] = key;
        const auto &blk = tc.blocks().at(bk);
        // image of d from the previous degree, with tags over its basis
        Echelon img(true);
        BlockKey prev = bk;
        --prev.degree;
        auto pit = tc.blocks().find(prev);
        if (pit != tc.blocks().end())
            for (std::size_t j = 0; j < pit->second.basis.size(); ++j) {
                Rational s;
                auto row = integer_row(tc.image(pit->second.basis[j], blk), &s);
                // tag records u_j scaled like the row
                img.insert(row, SparseVec{{j, s.get_num()}});
            }
        auto reduce_vec = [&](std::vector<std::pair<std::size_t, Rational>> q, SparseVec &tag, Rational &scale) {
            std::sort(q.begin(), q.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
            Rational s0;
            SparseVec r = integer_row(q, &s0);
            scale = s0;
            tag.clear();
            img.reduce(r, &tag, &scale);
            return r;
        };

        // target vector, pi specialized
        std::vector<std::pair<std::size_t, Rational>> tv;
        for (const auto &[mo, x] : terms) tv.emplace_back(blk.index.at(mo), x * pi_eval(omega(c, mo) == om ? 0 : pi_pow(omega(c, mo) - om)));
        SparseVec ttag;
        Rational tscale;
        SparseVec tr = reduce_vec(tv, ttag, tscale);

        // reduced basis vectors of the same block and omega-compatible
        Echelon bas(true);
        std::vector<std::size_t> used;
        std::vector<SparseVec> btags;
        std::vector<Rational> bscales;
        for (std::size_t b = 0; b < basis.size(); ++b) {
            if (!(tc.key_of(basis[b]) == bk)) continue;
            Rational e = omega(c, basis[b]) - om;
            if (!is_integer(e)) continue;
            SparseVec btag;
            Rational bscale;
            SparseVec br = reduce_vec({{blk.index.at(basis[b]), Rational(1)}}, btag, bscale);
            used.push_back(b);
            btags.push_back(btag);
            bscales.push_back(bscale);
            if (!bas.insert(br, SparseVec{{used.size() - 1, Integer(1)}}))
                throw Error(ErrorKind::BasisDeficient, "basis classes are dependent");
        }
        Rational sc = 1;
        SparseVec stag;
        bas.reduce(tr, &stag, &sc);
        if (!tr.empty()) throw Error(ErrorKind::BasisDeficient, "class is not in the span of the basis");

        // sc * tscale * t + ttag*img... combine: sc*(tscale*t + ttag.u) + sum stag_k (bscale_k b_k + btag_k.u) = 0
        Rational total_scale = sc * tscale;
        std::map<std::size_t, Rational> u; // coefficient of d(u_j)
        for (const auto &[j, x] : ttag) u[j] += sc * Rational(x);
        for (const auto &[k, x] : stag) {
            const std::size_t b = used[k];
            Rational coeff_b = Rational(x) * bscales[k];
            // t = -(1/total_scale) * (sum_k x_k bscale_k b_k + ...)
            Rational cb = -coeff_b / total_scale;
            std::int64_t e = pi_pow(omega(c, basis[b]) - om);
            out.coords[b] += PiLaurent::monomial(e, cb / pi_eval(e));
            for (const auto &[j, y] : btags[k]) u[j] += Rational(x) * Rational(y);
        }
        // t - sum c_b b = -(1/total_scale) sum u_j d(u_j)
        for (const auto &[j, x] : u) {
            if (x == 0) continue;
            const Monomial &src = pit->second.basis[j];
            Rational val = -x / total_scale;
            std::int64_t e = pi_pow(omega(c, src) - om);
            out.primitive.add(src, PiLaurent::monomial(e, val / pi_eval(e)));
        }
    }
    return out;
}

// Quasi-isomorphism report ----------------------------------------------------

struct QuasiIsoReport {
    struct Row {
        IntVec lambda;
        std::map<std::int64_t, std::size_t> ranks_B;
        std::map<std::int64_t, std::size_t> ranks_C;
        std::int64_t milnor = 0;
    };
    std::vector<Row> rows;
    std::size_t total_B = 0;
    std::size_t total_C = 0;
    std::int64_t orbifold_sum = 0;

    bool ok() const
    {
        for (const auto &r : rows)
            if (r.ranks_B != r.ranks_C || static_cast<std::int64_t>(total_rank(r.ranks_B)) != r.milnor) return false;
        return static_cast<std::int64_t>(total_B) == orbifold_sum && total_B == total_C;
    }
};

inline QuasiIsoReport verify_quasi_iso(const BHMatrix &m, std::int64_t window)
{
    QuasiIsoReport rep;
    TruncatedComplex tb(m, window), tcx(m, window, 1, true);
    for (const auto &s : tb.sectors()) {
        QuasiIsoReport::Row row{s.lambda, cohomology_rank(tb, s), cohomology_rank(tcx, s), milnor_dimension(s.sub)};
        rep.total_B += total_rank(row.ranks_B);
        rep.total_C += total_rank(row.ranks_C);
        rep.orbifold_sum += row.milnor;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

} // namespace bhlab
