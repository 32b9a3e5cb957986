#include <catch_amalgamated.hpp>

#include <bhlab/cohoring.hpp>
#include <bhlab/corpus.hpp>
#include <bhlab/random.hpp>

using namespace bhlab;

namespace {

Monomial mono(IntVec g, IntVec l, Mask I) { return Monomial{std::move(g), std::move(l), I}; }

/// Random top-degree monomial of a sector that closed form can handle.
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

} // namespace

TEST_CASE("Milnor bases of atoms")
{
    auto chain = decompose(BHMatrix::validate({{2, 1}, {0, 3}})).atoms[0];
    REQUIRE(milnor_basis(chain) == std::vector<IntVec>{{1, 1}, {1, 2}, {1, 3}, {2, 1}});
    auto loop = decompose(BHMatrix::validate({{3, 1}, {1, 2}})).atoms[0];
    REQUIRE(milnor_basis(loop).size() == 6);
    REQUIRE(milnor_basis(BHMatrix::validate({{2}})) == std::vector<IntVec>{{1}});
    REQUIRE(milnor_basis(BHMatrix()) == std::vector<IntVec>{{}});
    for (const auto &m : corpus()) REQUIRE(milnor_basis(m).size() == milnor_dimension(m));
}

TEST_CASE("orbifold basis of chain(2,3) and its gradings")
{
    auto m = BHMatrix::validate({{2, 1}, {0, 3}});
    auto b = orbifold_basis(m);
    std::vector<Monomial> want{
        mono({1, 1}, {0, 0}, 3), mono({1, 2}, {0, 0}, 3), mono({1, 3}, {0, 0}, 3), mono({2, 1}, {0, 0}, 3),
        mono({0, 1}, {1, 0}, 2), mono({0, 2}, {1, 0}, 2), mono({0, 0}, {1, 1}, 0), mono({0, 0}, {1, 2}, 0),
        mono({0, 0}, {2, 1}, 0), mono({0, 0}, {2, 2}, 0)};
    REQUIRE(b.monomials() == want);
    std::vector<std::int64_t> total{2, 2, 2, 2, 3, 3, 4, 4, 4, 4};
    std::vector<Rational> half{1, 1, 1, 0, 0, 0, -1, -1, -1, -1};
    for (std::size_t k = 0; k < b.size(); ++k) {
        INFO(b.entries[k].mono.str());
        REQUIRE(b.entries[k].gradings.total() == total[k]);
        REQUIRE(b.entries[k].gradings.half_sharp_diff() == half[k]);
    }
    auto bt = orbifold_basis(m.transpose());
    REQUIRE(bt.size() == 10);
    REQUIRE(bt.find(mono({1, 3}, {0, 0}, 3)));
    REQUIRE(bt.find(mono({1, 0}, {0, 1}, 1)));
}

TEST_CASE("orbifold basis invariants over the corpus")
{
    for (const auto &m : corpus()) {
        INFO(m.str());
        auto b = orbifold_basis(m);
        auto bt = orbifold_basis(m.transpose());
        REQUIRE(b.size() == bt.size());
        std::size_t sum = 0;
        for (const auto &s : group_elements(m)) sum += milnor_dimension(s.sub);
        REQUIRE(b.size() == sum);
        const auto n = static_cast<std::int64_t>(m.n());
        for (const auto &e : b.entries) {
            const auto &g = e.gradings;
            Rational lhs(2 * g.ext - n - 2 * g.qhat + 2 * g.qvee);
            REQUIRE(lhs == -Rational(g.sharp - g.sharpvee));
        }
    }
}

TEST_CASE("closed form on x1^2")
{
    auto m = BHMatrix::validate({{2}});
    Rational dfact = 1;
    for (std::int64_t k = 0; k <= 6; ++k) {
        if (k) dfact *= 2 * k - 1;
        auto r = reduce_closed_form(m, mono({2 * k + 1}, {0}, 1));
        REQUIRE(r.unresolved.is_zero());
        Rational want = dfact;
        for (std::int64_t j = 0; j < k; ++j) want /= -2;
        REQUIRE(r.reduced == ChainElement(mono({1}, {0}, 1), PiLaurent::monomial(-k, want)));
    }
    REQUIRE_THROWS_AS(reduce_closed_form(m, mono({1}, {0}, 0)), Error);
}

TEST_CASE("closed form errors and fallbacks")
{
    auto m = BHMatrix::validate({{2, 0}, {1, 3}});
    ChainElement mixed(mono({1, 1}, {0, 0}, 3));
    mixed.add(mono({1, 0}, {0, 1}, 1), 1);
    try {
        reduce_closed_form(m, mixed);
        FAIL("expected MixedSectors");
    } catch (const Error &e) {
        REQUIRE(e.kind() == ErrorKind::MixedSectors);
    }
    try {
        reduce_closed_form(m, mono({0, 0}, {2, 1}, 0));
        FAIL("expected NotTopDegree");
    } catch (const Error &e) {
        REQUIRE(e.kind() == ErrorKind::NotTopDegree);
    }
    auto basis = orbifold_basis(m);
    auto nf = normal_form(m, basis, mono({0, 0}, {2, 1}, 0));
    auto k = *basis.find(mono({1, 3}, {0, 0}, 3));
    for (std::size_t b = 0; b < basis.size(); ++b)
        if (b != k) REQUIRE(nf[b].is_zero());
    REQUIRE((nf[k] == PiLaurent::monomial(1, 3) || nf[k] == PiLaurent::monomial(1, -3)));
}

TEST_CASE("closed form agrees with the oracle")
{
    Sampler s(7);
    std::size_t cases = 0;
    for (const auto &m : small_corpus(12)) {
        auto basis = orbifold_basis(m);
        auto groups = group_elements(m);
        for (int t = 0; t < 12; ++t) {
            const auto &sec = groups[static_cast<std::size_t>(s.uniform(0, static_cast<std::int64_t>(groups.size()) - 1))];
            ChainElement v;
            for (int j = 0; j < 2; ++j) v.add(top_degree(s, m, sec, 6), s.coefficient());
            INFO(m.str() << " on " << v.str());
            auto cf = reduce_closed_form(m, v);
            if (!cf.unresolved.is_zero()) continue;
            TruncatedComplex tc(m, window_for(m, v));
            auto r = reduce_by_oracle(tc, v, basis.monomials());
            std::vector<PiLaurent> got(basis.size());
            for (const auto &[mo, k] : cf.reduced.terms()) got[*basis.find(mo)] += k;
            REQUIRE(got == r.coords);
            ++cases;
        }
    }
    REQUIRE(cases >= 200);
}

TEST_CASE("duality matrix of chain(2,3)")
{
    auto m = BHMatrix::validate({{2, 1}, {0, 3}});
    auto ba = orbifold_basis(m), bt = orbifold_basis(m.transpose());
    auto D = duality_matrix(m, ba, bt);
    std::vector<Monomial> partner{
        mono({0, 0}, {1, 1}, 0), mono({0, 0}, {1, 2}, 0), mono({0, 0}, {1, 3}, 0), mono({1, 3}, {0, 0}, 3),
        mono({1, 0}, {0, 1}, 1), mono({1, 0}, {0, 2}, 1), mono({1, 1}, {0, 0}, 3), mono({1, 2}, {0, 0}, 3),
        mono({2, 1}, {0, 0}, 3), mono({2, 2}, {0, 0}, 3)};
    for (std::size_t b = 0; b < ba.size(); ++b) {
        INFO(ba.entries[b].mono.str());
        auto r = *bt.find(partner[b]);
        for (std::size_t k = 0; k < bt.size(); ++k) REQUIRE(D[k][b].is_zero() == (k != r));
    }
}

TEST_CASE("duality matrices compose to a diagonal")
{
    for (const auto &m : small_corpus(12)) {
        INFO(m.str());
        auto ba = orbifold_basis(m), bt = orbifold_basis(m.transpose());
        auto D = duality_matrix(m, ba, bt);
        auto Dt = duality_matrix(m.transpose(), bt, ba);
        for (std::size_t i = 0; i < ba.size(); ++i)
            for (std::size_t j = 0; j < ba.size(); ++j) {
                PiLaurent s;
                for (std::size_t k = 0; k < bt.size(); ++k) s += Dt[i][k] * D[k][j];
                REQUIRE(s.is_zero() == (i != j));
            }
    }
}

TEST_CASE("closed form steps up before reducing")
{
    auto m = BHMatrix::validate({{2, 1}, {0, 2}});
    ChainElement v(mono({7, 2}, {0, 0}, 3));
    auto cf = reduce_closed_form(m, v);
    REQUIRE(cf.unresolved.is_zero());
    auto basis = orbifold_basis(m);
    TruncatedComplex tc(m, window_for(m, v));
    auto r = reduce_by_oracle(tc, v, basis.monomials());
    auto k = *basis.find(mono({1, 1}, {0, 0}, 3));
    REQUIRE(cf.reduced == ChainElement(basis.entries[k].mono, r.coords[k]));
}
