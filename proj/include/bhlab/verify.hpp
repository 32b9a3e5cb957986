#pragma once

// Named property suites as exposed by the command-line tool.

#include <bhlab/cohoring.hpp>
#include <bhlab/homolab.hpp>
#include <bhlab/suites.hpp>

#include <string>
#include <vector>

namespace bhlab {

/// 2 ext - n - 2 Q^hat + 2 Q^hat^∨ = -(# - #^∨) on every orbifold basis element,
/// and |basis(A)| = |basis(A^T)| = sum of sector Milnor numbers.
inline SuiteResult suite_eigenvalue(const std::vector<BHMatrix> &ms)
{
    SuiteResult r{"eigenvalue"};
    for (const auto &m : ms) {
        const auto n = static_cast<std::int64_t>(m.n());
        auto basis = orbifold_basis(m);
        for (const auto &e : basis.entries) {
            const auto &g = e.gradings;
            r.check(2 * g.ext - n - 2 * g.qhat + 2 * g.qvee == -(g.sharp - g.sharpvee),
                    [&] { return m.str() + " on " + e.mono.str(); });
        }
        std::int64_t mu = 0;
        for (const auto &s : group_elements(m)) mu += milnor_dimension(s.sub);
        auto bt = orbifold_basis(m.transpose());
        r.check(static_cast<std::int64_t>(basis.size()) == mu && bt.size() == basis.size(),
                [&] { return m.str() + " basis sizes"; });
    }
    return r;
}

inline std::string rank_list(const QuasiIsoReport &rep)
{
    std::string s = "(";
    for (std::size_t i = 0; i < rep.rows.size(); ++i)
        s += (i ? "," : "") + std::to_string(total_rank(rep.rows[i].ranks_B));
    return s + ")";
}

/// Truncated-complex cohomology agrees with the orbifold Milnor count.
inline SuiteResult suite_quasiiso(const std::vector<BHMatrix> &ms, std::int64_t window)
{
    SuiteResult r{"quasiiso"};
    for (const auto &m : ms) {
        auto rep = verify_quasi_iso(m, window);
        r.check(rep.ok(), [&] { return m.str() + " ranks " + rank_list(rep); });
        r.notes.push_back(m.str() + ": ranks " + rank_list(rep));
    }
    return r;
}

} // namespace bhlab
