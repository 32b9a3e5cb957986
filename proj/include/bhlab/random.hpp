#pragma once

// Seeded random monomials and chain elements for the property suites.

#include <bhlab/chaincx.hpp>

#include <cstdint>
#include <random>

namespace bhlab {

class Sampler
{
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi)
    {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }

    /// A nonzero admissible monomial with exponents in [0, max_exp].
    Monomial monomial(const Context &c, std::int64_t max_exp, bool in_SA = false)
    {
        const std::size_t n = c.n();
        while (true) {
            Monomial mo{IntVec(n), IntVec(n), static_cast<Mask>(uniform(0, (1 << n) - 1))};
            bool xside = uniform(0, 2) != 0;
            bool yside = uniform(0, 2) != 0;
            for (std::size_t i = 0; i < n; ++i) {
                mo.gamma[i] = xside ? uniform(0, max_exp) : 0;
                mo.lam[i] = yside ? uniform(0, max_exp) : 0;
            }
            if (!c.admissible(mo) || !c.alive(mo)) continue;
            if (in_SA && !c.in_SA(mo)) continue;
            return mo;
        }
    }

    PiLaurent coefficient()
    {
        Rational r = ratio(uniform(-5, 5), uniform(1, 4));
        if (r == 0) r = 1;
        return PiLaurent::monomial(uniform(-1, 1), r);
    }

    ChainElement element(const Context &c, std::int64_t max_exp, bool in_SA = false, int max_terms = 3)
    {
        ChainElement v;
        int k = static_cast<int>(uniform(1, max_terms));
        for (int t = 0; t < k; ++t) v.add(monomial(c, max_exp, in_SA), coefficient());
        return v;
    }

    std::mt19937_64 &engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

} // namespace bhlab
