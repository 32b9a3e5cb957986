#pragma once

// Tables behind the group, basis and dual commands.

#include <bhlab/cohoring.hpp>
#include <bhlab/io.hpp>

namespace bhlab {

inline Table group_table(const BHMatrix &m)
{
    Table t{{"group", "lambda", "charges"}, {}};
    for (const auto &s : group_elements(m)) t.add({"G_A", vec_cell(s.lambda), vec_cell(s.charges)});
    for (const auto &s : group_elements(m.transpose())) t.add({"G_AT", vec_cell(s.lambda), vec_cell(s.charges)});
    return t;
}

inline Table basis_table(const BHMatrix &m)
{
    Table t{{"sector", "monomial", "Q+Qv", "(#-#v)/2"}, {}};
    for (const auto &e : orbifold_basis(m).entries)
        t.add({vec_cell(e.sector.lambda), mono_cell(e.mono), Cell(e.gradings.total()),
               Cell(e.gradings.half_sharp_diff())});
    return t;
}

/// One row per nonzero entry of the duality matrix, by column of C_A.
inline Table dual_table(const BHMatrix &m)
{
    auto ba = orbifold_basis(m), bt = orbifold_basis(m.transpose());
    auto D = duality_matrix(m, ba, bt);
    Table t{{"C_A", "Q+Qv", "(#-#v)/2", "C_AT", "Q+Qv (AT)", "(#-#v)/2 (AT)", "coefficient"}, {}};
    for (std::size_t j = 0; j < ba.size(); ++j) {
        const auto &a = ba.entries[j];
        for (std::size_t i = 0; i < bt.size(); ++i) {
            if (D[i][j].is_zero()) continue;
            const auto &b = bt.entries[i];
            t.add({mono_cell(a.mono), Cell(a.gradings.total()), Cell(a.gradings.half_sharp_diff()), mono_cell(b.mono),
                   Cell(b.gradings.total()), Cell(b.gradings.half_sharp_diff()), pi_cell(D[i][j])});
        }
    }
    return t;
}

} // namespace bhlab
