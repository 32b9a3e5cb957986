#pragma once

// Randomized identity checks over a list of matrices. Each suite counts its
// cases and remembers the first failure.

#include <bhlab/chaincx.hpp>
#include <bhlab/clifford.hpp>
#include <bhlab/random.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace bhlab {

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    std::string first_failure;
    std::vector<std::string> notes;

    bool ok() const { return failures == 0 && cases > 0; }

    void check(bool good, const std::function<std::string()> &what)
    {
        ++cases;
        if (good) return;
        if (failures++ == 0) first_failure = what();
    }
    void merge(const SuiteResult &o)
    {
        if (failures == 0 && o.failures) first_failure = o.first_failure;
        cases += o.cases;
        failures += o.failures;
        notes.insert(notes.end(), o.notes.begin(), o.notes.end());
    }
};

/// (d + d^∨)^2 = 0, d^2 = 0 and (d^∨)^2 = 0.
inline SuiteResult suite_chain(const std::vector<BHMatrix> &ms, std::uint64_t seed, std::size_t per_matrix)
{
    SuiteResult r{"chain"};
    Sampler s(seed);
    for (const auto &m : ms) {
        Context c(m);
        for (std::size_t t = 0; t < per_matrix; ++t) {
            auto v = s.element(c, 4);
            auto what = [&] { return m.str() + " on " + v.str(); };
            r.check(apply_total(c, apply_total(c, v)).is_zero(), what);
            r.check(apply_d(c, apply_d(c, v)).is_zero(), what);
            r.check(apply_dvee(c, apply_dvee(c, v)).is_zero(), what);
        }
    }
    return r;
}

/// Bigrading commutators [Q,d]=d, [Q^∨,d]=0, [Q,d^∨]=0, [Q^∨,d^∨]=d^∨, and on
/// S_A: [Q^hat, d] = d, [Q^hat^∨, d] = 0.
inline SuiteResult suite_grading(const std::vector<BHMatrix> &ms, std::uint64_t seed, std::size_t per_matrix)
{
    SuiteResult r{"grading"};
    Sampler s(seed);
    for (const auto &m : ms) {
        Context c(m);
        for (std::size_t t = 0; t < per_matrix; ++t) {
            auto v = s.element(c, 4);
            auto what = [&] { return m.str() + " on " + v.str(); };
            auto dv = apply_d(c, v), dvv = apply_dvee(c, v);
            r.check(apply_Q(c, dv) - apply_d(c, apply_Q(c, v)) == dv, what);
            r.check(apply_Qvee(c, dv) == apply_d(c, apply_Qvee(c, v)), what);
            r.check(apply_Q(c, dvv) == apply_dvee(c, apply_Q(c, v)), what);
            r.check(apply_Qvee(c, dvv) - apply_dvee(c, apply_Qvee(c, v)) == dvv, what);

            auto w = s.element(c, 4, true);
            auto what2 = [&] { return m.str() + " on " + w.str(); };
            auto dw = apply_d(c, w);
            r.check(apply_Qhat(c, dw) - apply_d(c, apply_Qhat(c, w)) == dw, what2);
            r.check(apply_Qhatvee(c, dw) == apply_d(c, apply_Qhatvee(c, w)), what2);
            for (std::size_t i = 0; i < m.n(); ++i) {
                auto hw = apply_hat_d(c, i, w);
                r.check(apply_Qhat(c, hw) - apply_hat_d(c, i, apply_Qhat(c, w)) == hw, what2);
            }
        }
    }
    return r;
}

/// star(E_i v) = e_i^∨ star(v), star(E_i^∨ v) = e_i star(v), the double star
/// commutes with e_i and e_i^∨, and ext star = (n - ext) star.
inline SuiteResult suite_star(const std::vector<BHMatrix> &ms, std::uint64_t seed, std::size_t per_matrix)
{
    SuiteResult r{"star"};
    Sampler s(seed);
    for (const auto &m : ms) {
        StarTable st(m), stt(m.transpose());
        const std::size_t n = m.n();
        for (std::size_t t = 0; t < per_matrix; ++t) {
            ExtElement v;
            for (int k = 0; k < 2; ++k)
                v.add(static_cast<Mask>(s.uniform(0, (1 << n) - 1)), s.coefficient());
            std::size_t i = static_cast<std::size_t>(s.uniform(0, static_cast<std::int64_t>(n) - 1));
            auto what = [&] { return m.str() + " on " + v.str(); };
            auto sv = st(v);
            r.check(st(E(m, i, v)) == contract_e(i, sv), what);
            r.check(st(E_vee(m, i, v)) == mul_e(i, sv), what);
            r.check(stt(st(mul_e(i, v))) == mul_e(i, stt(sv)), what);
            r.check(stt(st(contract_e(i, v))) == contract_e(i, stt(sv)), what);
            r.check(apply_ext(sv) == PiLaurent(Rational(static_cast<long>(n))) * sv - st(apply_ext(v)), what);
        }
    }
    return r;
}

/// Delta (d + d^∨)_A = (d + d^∨)_{A^T} Delta on S_A, together with
/// Delta Q^∨_A = Q^hat_{A^T} Delta and Delta Q_A = Q^hat^∨_{A^T} Delta.
inline SuiteResult suite_duality(const std::vector<BHMatrix> &ms, std::uint64_t seed, std::size_t per_matrix)
{
    SuiteResult r{"duality"};
    Sampler s(seed);
    for (const auto &m : ms) {
        Context c(m), ct(m.transpose());
        for (std::size_t t = 0; t < per_matrix; ++t) {
            auto v = s.element(c, 4, true);
            auto what = [&] { return m.str() + " on " + v.str(); };
            r.check(delta(c, apply_total(c, v)) == apply_total(ct, delta(c, v)), what);
            r.check(delta(c, apply_Qvee(c, v)) == apply_Qhat(ct, delta(c, v)), what);
            r.check(delta(c, apply_Q(c, v)) == apply_Qhatvee(ct, delta(c, v)), what);
        }
    }
    return r;
}

/// Delta Fr_A = Fr_{A^T} Delta p^{2ext-n} p^{-2Q^hat} p^{2Q^∨} at a common
/// truncation order, exactly.
inline SuiteResult suite_chain_frobenius(const std::vector<BHMatrix> &ms, std::int64_t p, std::int64_t order,
                                         std::uint64_t seed, std::size_t per_matrix)
{
    SuiteResult r{"frobenius-duality"};
    Sampler s(seed);
    for (const auto &m : ms) {
        Context c(m), ct(m.transpose());
        if (c.D() % p == 0) continue;
        for (std::size_t t = 0; t < per_matrix; ++t) {
            ChainElement v(s.monomial(c, 3, true));
            auto what = [&] { return m.str() + " on " + v.str(); };
            auto lhs = delta(c, frobenius_chain(c, p, order, v));
            auto rhs = frobenius_chain(ct, p, order, delta(c, frobenius_twist_operator(c, p, v)));
            r.check(lhs == rhs, what);
        }
    }
    return r;
}

/// (d + d^∨) Fr = Fr (d + d^∨) modulo pi^{p-1} = -p, on the weight range
/// where both truncations are exact.
inline SuiteResult suite_frobenius_chain_map(const std::vector<BHMatrix> &ms, std::int64_t p, std::int64_t order,
                                             std::uint64_t seed, std::size_t per_matrix)
{
    SuiteResult r{"frobenius-chain-map"};
    Sampler s(seed);
    auto red = [p](const PiLaurent &k) { return reduce_pi_relation(k, p); };
    for (const auto &m : ms) {
        Context c(m);
        if (c.D() % p == 0) continue;
        for (std::size_t t = 0; t < per_matrix; ++t) {
            auto mo = s.monomial(c, 3);
            ChainElement v(mo);
            auto what = [&] { return m.str() + " on " + v.str(); };
            Rational bound = Rational(static_cast<long>(p)) * (x_weight(c, mo.gamma) + y_weight(c, mo.lam)) +
                             Rational(static_cast<long>(order));
            auto lhs = weight_projection(c, apply_total(c, frobenius_chain(c, p, order, v)), bound).map_coeffs(red);
            auto rhs = weight_projection(c, frobenius_chain(c, p, order, apply_total(c, v)), bound).map_coeffs(red);
            r.check(lhs == rhs, what);
        }
    }
    return r;
}

} // namespace bhlab
