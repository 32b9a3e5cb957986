// End-to-end checks against the worked example x1^2 x2 + x2^3, the x1^2
// Frobenius entries, and the corpus-wide identities. One line per criterion.

#include <bhlab/corpus.hpp>
#include <bhlab/dwork.hpp>
#include <bhlab/random.hpp>
#include <bhlab/report.hpp>
#include <bhlab/threads.hpp>
#include <bhlab/verify.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace bhlab;

namespace {

struct Failure {
    std::string what;
};

void need(bool ok, const std::string &what)
{
    if (!ok) throw Failure{what};
}

Monomial mono(IntVec g, IntVec l, Mask I) { return Monomial{std::move(g), std::move(l), I}; }

const BHMatrix &chain23()
{
    static const BHMatrix m = BHMatrix::validate({{2, 1}, {0, 3}});
    return m;
}

std::vector<std::string> column(const Table &t, std::size_t c)
{
    std::vector<std::string> out;
    for (const auto &r : t.rows) out.push_back(r[c].text);
    return out;
}

void group_rows()
{
    using Rows = std::vector<std::vector<std::string>>;
    const Rows ga{{"(0,0)", "(0,0)"}, {"(1,0)", "(1/2,0)"}, {"(1,1)", "(1/3,1/3)"},
                  {"(1,2)", "(1/6,2/3)"}, {"(2,1)", "(5/6,1/3)"}, {"(2,2)", "(2/3,2/3)"}};
    const Rows gat{{"(0,0)", "(0,0)"}, {"(0,1)", "(0,1/3)"}, {"(0,2)", "(0,2/3)"},
                   {"(1,1)", "(1/2,1/6)"}, {"(1,2)", "(1/2,1/2)"}, {"(1,3)", "(1/2,5/6)"}};
    auto check = [&](const Table &t, const Rows &first, const Rows &second) {
        need(t.rows.size() == 12, "expected 6+6 rows");
        for (std::size_t i = 0; i < 12; ++i) {
            const auto &want = i < 6 ? first[i] : second[i - 6];
            std::string got = t.rows[i][1].text + " " + t.rows[i][2].text;
            need(t.rows[i][0].text == (i < 6 ? "G_A" : "G_AT"), "group label in row " + std::to_string(i));
            need(got == want[0] + " " + want[1], "row " + std::to_string(i) + ": " + got);
        }
    };
    check(group_table(chain23()), ga, gat);
    check(group_table(chain23().transpose()), gat, ga);
}

void basis_rows()
{
    const std::vector<std::string> ca{"x1x2e1e2", "x1x2²e1e2", "x1x2³e1e2", "x1²x2e1e2", "x2y1e2",
                                      "x2²y1e2",  "y1y2",      "y1y2²",     "y1²y2",     "y1²y2²"};
    const std::vector<std::string> cat{"y1y2",     "y1y2²",     "y1y2³",     "x1x2³e1e2", "x1y2e1",
                                       "x1y2²e1",  "x1x2e1e2", "x1x2²e1e2", "x1²x2e1e2", "x1²x2²e1e2"};
    const std::vector<std::string> qa{"2", "2", "2", "2", "3", "3", "4", "4", "4", "4"};
    const std::vector<std::string> ha{"1", "1", "1", "0", "0", "0", "-1", "-1", "-1", "-1"};
    const std::vector<std::string> qat{"4", "4", "4", "2", "3", "3", "2", "2", "2", "2"};
    const std::vector<std::string> hat{"-1", "-1", "-1", "0", "0", "0", "1", "1", "1", "1"};

    auto b = basis_table(chain23());
    need(column(b, 1) == ca, "C_A monomials");
    need(column(b, 2) == qa, "Q+Qv column");
    need(column(b, 3) == ha, "(#-#v)/2 column");

    auto bt = basis_table(chain23().transpose());
    auto s1 = column(bt, 1);
    need(std::set<std::string>(s1.begin(), s1.end()) == std::set<std::string>(cat.begin(), cat.end()),
         "C_AT monomials");

    auto d = dual_table(chain23());
    need(d.rows.size() == 10, "expected one partner per basis element");
    need(column(d, 0) == ca, "dual rows");
    need(column(d, 3) == cat, "duality partners");
    need(column(d, 4) == qat, "Q+Qv column on the dual side");
    need(column(d, 5) == hat, "(#-#v)/2 column on the dual side");
}

void frobenius_x1sq()
{
    auto m = BHMatrix::validate({{2}});
    for (std::int64_t p : {5, 7}) {
        const std::int64_t prec = 2 * (p - 1), h = (p - 1) / 2;
        auto T = tfr_matrix(m, p, prec);
        const std::string at = "p=" + std::to_string(p) + ": ";
        need(T.size() == 2 && T.is_diagonal(), at + "not diagonal");
        need(T.certified() >= prec, at + "certified precision too low");
        const auto &ex = T.entries[0][0];
        need(T.basis.entries[0].mono == mono({1}, {0}, 1), at + "first basis element is not x1e1");
        need(ex.sigma_power() == h, at + "sigma power");
        // entry = p sigma^h pi^{-h} u
        auto u = ex.component(h).shifted(h).scaled(ratio(1, p));
        std::int64_t f = 1;
        for (std::int64_t k = 2; k <= h; ++k) f *= k;
        need(u.valuation() == 0, at + "u is not a unit");
        need(u.unit_residue() == f % p, at + "u mod pi is " + std::to_string(u.unit_residue()));
        need((ex - T.entries[1][1]).is_zero(), at + "x1e1 and y1 entries differ");
    }
}

void commutation()
{
    for (std::int64_t p : {7, 13}) {
        auto r = verify_commutation(chain23(), p, 2 * (p - 1));
        need(r.ok(), "p=" + std::to_string(p) + ": min valuation " + std::to_string(r.min_valuation) +
                         ", certified " + std::to_string(r.certified));
    }
}

void chain_commutation()
{
    auto r = verify_chain_commutation(chain23(), 7, 2, 2024, 100);
    need(r.cases == 100, "expected 100 cases");
    need(r.ok(), r.first_failure);
}

void eigenvalues()
{
    std::vector<BHMatrix> ms;
    for (std::size_t n = 1; n <= 3; ++n) {
        IntVec a(n, 2);
        while (true) {
            ms.push_back(BHMatrix::validate(chain_matrix(a)));
            if (n >= 2) ms.push_back(BHMatrix::validate(loop_matrix(a)));
            std::size_t k = 0;
            while (k < n && a[k] == 4) a[k++] = 2;
            if (k == n) break;
            ++a[k];
        }
    }
    need(ms.size() >= 30, "corpus too small");
    auto r = suite_eigenvalue(ms);
    need(r.ok(), r.first_failure);
}

void property_suites()
{
    const auto ms = corpus();
    const std::uint64_t seed = 2024;
    const std::size_t per = 12;
    for (const auto &r : {suite_chain(ms, seed, per), suite_grading(ms, seed, per), suite_star(ms, seed, per),
                          suite_duality(ms, seed, per)}) {
        need(r.cases >= 1000, r.name + ": only " + std::to_string(r.cases) + " cases");
        need(r.ok(), r.name + ": " + r.first_failure);
    }
}

/// Random top-degree element of a sector.
Monomial top_degree(Sampler &s, const BHMatrix &m, const Sector &sec, std::int64_t spread)
{
    Monomial mo{IntVec(m.n(), 0), sec.lambda, fixed_mask(sec)};
    for (std::size_t i : sec.fixed) mo.gamma[i] = s.uniform(1, spread);
    for (std::size_t i = 0; i < m.n(); ++i) {
        if (!sec.jvee[i]) continue;
        std::int64_t k = s.uniform(0, 1);
        for (std::size_t j = 0; j < m.n(); ++j) mo.lam[j] += k * m(j, i);
    }
    return mo;
}

void oracle()
{
    const auto ms = corpus();
    std::vector<std::string> bad(ms.size());
    parallel_for(ms.size(), [&](std::size_t i) {
        const auto &m = ms[i];
        auto rep = verify_quasi_iso(m, 6);
        Rational expect = 0;
        for (const auto &s : group_elements(m)) expect += milnor_number_from_weights(s.sub);
        if (!rep.ok() || Rational(static_cast<long>(rep.total_B)) != expect)
            bad[i] = m.str() + " ranks " + rank_list(rep) + " expected total " + to_string(expect);
    });
    for (const auto &b : bad) need(b.empty(), b);

    Sampler s(7);
    std::size_t cases = 0;
    for (const auto &m : small_corpus(12)) {
        auto basis = orbifold_basis(m);
        auto groups = group_elements(m);
        for (int t = 0; t < 12; ++t) {
            const auto &sec =
                groups[static_cast<std::size_t>(s.uniform(0, static_cast<std::int64_t>(groups.size()) - 1))];
            ChainElement v;
            for (int j = 0; j < 2; ++j) v.add(top_degree(s, m, sec, 6), s.coefficient());
            auto cf = reduce_closed_form(m, v);
            if (!cf.unresolved.is_zero()) continue;
            TruncatedComplex tc(m, window_for(m, v));
            auto r = reduce_by_oracle(tc, v, basis.monomials());
            std::vector<PiLaurent> got(basis.size());
            for (const auto &[mo, k] : cf.reduced.terms()) got[*basis.find(mo)] += k;
            need(got == r.coords, m.str() + " on " + v.str());
            ++cases;
        }
    }
    need(cases >= 200, "only " + std::to_string(cases) + " oracle comparisons");

    // x1^{2k+1} e1 = (-2 pi)^{-k} (2k-1)!! x1 e1
    auto m1 = BHMatrix::validate({{2}});
    auto b1 = orbifold_basis(m1);
    Rational dfact = 1;
    for (std::int64_t k = 0; k <= 5; ++k) {
        if (k) dfact *= 2 * k - 1;
        Rational want = dfact;
        for (std::int64_t j = 0; j < k; ++j) want /= -2;
        ChainElement v(mono({2 * k + 1}, {0}, 1));
        TruncatedComplex tc(m1, window_for(m1, v));
        auto r = reduce_by_oracle(tc, v, b1.monomials());
        auto cf = reduce_closed_form(m1, v);
        const ChainElement target(mono({1}, {0}, 1), PiLaurent::monomial(-k, want));
        need(cf.reduced == target, "closed form of x1^" + std::to_string(2 * k + 1) + "e1");
        need(r.coords[*b1.find(mono({1}, {0}, 1))] == PiLaurent::monomial(-k, want),
             "oracle on x1^" + std::to_string(2 * k + 1) + "e1");
    }

    // y1^2 y2 = -+3 pi x1 x2^3 e1 e2 for x1^2 + x1 x2^3
    auto mt = chain23().transpose();
    auto bt = orbifold_basis(mt);
    ChainElement y(mono({0, 0}, {2, 1}, 0));
    TruncatedComplex tc(mt, window_for(mt, y));
    auto r = reduce_by_oracle(tc, y, bt.monomials());
    auto k = *bt.find(mono({1, 3}, {0, 0}, 3));
    for (std::size_t i = 0; i < bt.size(); ++i)
        if (i != k) need(r.coords[i].is_zero(), "y1^2y2 has other components");
    need(r.coords[k] == PiLaurent::monomial(1, 3) || r.coords[k] == PiLaurent::monomial(1, -3),
         "y1^2y2 coefficient " + r.coords[k].str());
}

void totals()
{
    for (const auto &m : corpus())
        need(orbifold_basis(m).size() == orbifold_basis(m.transpose()).size(), m.str());
    need(orbifold_basis(chain23()).size() == 10 && orbifold_basis(chain23().transpose()).size() == 10,
         "chain(2,3) totals");
}

struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<void()> run;
};

} // namespace

int main()
{
    const std::vector<Criterion> all{
        {1, "group elements of x1^2x2 + x2^3", 1, group_rows},
        {2, "bases and duality pairs of x1^2x2 + x2^3", 5, basis_rows},
        {3, "Frobenius entries of x1^2", 10, frobenius_x1sq},
        {4, "TFr commutes with duality", 300, commutation},
        {5, "chain-level commutation", 60, chain_commutation},
        {6, "eigenvalue identity", 60, eigenvalues},
        {7, "property suites", 120, property_suites},
        {8, "oracle agreement", 300, oracle},
        {9, "duality of totals", 1, totals},
    };
    int failed = 0;
    for (const auto &c : all) {
        std::string why;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run();
        } catch (const Failure &f) {
            why = f.what;
        } catch (const std::exception &e) {
            why = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (why.empty() && secs > c.limit_s) why = "over the time limit";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2f", secs);
        std::cout << (why.empty() ? "PASS" : "FAIL") << " " << c.id << " " << c.name << " (" << buf << " s / "
                  << c.limit_s << " s)";
        if (!why.empty()) std::cout << ": " << why;
        std::cout << std::endl;
        if (!why.empty()) ++failed;
    }
    return failed ? 1 : 0;
}
