#pragma once

// A fixed family of chains, loops and small direct sums used by the
// property suites.

#include <bhlab/bhmat.hpp>

#include <vector>

namespace bhlab {

inline IntMatrix chain_matrix(const IntVec &a) { return Atom{AtomKind::Chain, a, {}}.canonical(); }
inline IntMatrix loop_matrix(const IntVec &a) { return Atom{AtomKind::Loop, a, {}}.canonical(); }

/// Chains and loops with n <= 3 and exponents in [2,4], plus a few sums.
inline std::vector<BHMatrix> corpus()
{
    std::vector<BHMatrix> out;
    for (std::int64_t a = 2; a <= 4; ++a) out.push_back(BHMatrix::validate(chain_matrix({a})));
    for (std::int64_t a = 2; a <= 4; ++a)
        for (std::int64_t b = 2; b <= 4; ++b) out.push_back(BHMatrix::validate(chain_matrix({a, b})));
    for (std::int64_t a = 2; a <= 4; ++a)
        for (std::int64_t b = a; b <= 4; ++b) out.push_back(BHMatrix::validate(loop_matrix({a, b})));
    for (const IntVec &a : std::vector<IntVec>{{2, 2, 2}, {2, 3, 2}, {3, 2, 2}, {2, 2, 3}, {3, 3, 2}, {2, 3, 4}})
        out.push_back(BHMatrix::validate(chain_matrix(a)));
    for (const IntVec &a : std::vector<IntVec>{{2, 2, 2}, {2, 2, 3}, {2, 3, 4}, {3, 3, 3}})
        out.push_back(BHMatrix::validate(loop_matrix(a)));
    out.push_back(BHMatrix::validate(direct_sum(chain_matrix({2}), chain_matrix({3}))));
    out.push_back(BHMatrix::validate(direct_sum(chain_matrix({2}), loop_matrix({2, 2}))));
    out.push_back(BHMatrix::validate(direct_sum(chain_matrix({3}), chain_matrix({2, 2}))));
    return out;
}

/// Members of the corpus small enough for brute-force cohomology.
inline std::vector<BHMatrix> small_corpus(std::int64_t max_det = 24)
{
    std::vector<BHMatrix> out;
    for (auto &m : corpus())
        if (abs(m.det()) <= max_det) out.push_back(std::move(m));
    return out;
}

} // namespace bhlab
