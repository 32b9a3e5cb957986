#include <catch_amalgamated.hpp>

#include <bhlab/clifford.hpp>
#include <bhlab/corpus.hpp>

using namespace bhlab;

namespace {

PiLaurent pi(std::int64_t k, long c = 1) { return PiLaurent::monomial(k, Rational(c)); }

ExtElement e(Mask I, PiLaurent c = 1) { return ExtElement::basis(I, c); }

} // namespace

TEST_CASE("wedge and contraction")
{
    REQUIRE(mul_e(0, e(0b10)) == e(0b11));
    REQUIRE(mul_e(1, e(0b01)) == e(0b11, -1));
    REQUIRE(contract_e(0, e(0b11)) == e(0b10));
    REQUIRE(contract_e(1, e(0b11)) == e(0b01, -1));
    REQUIRE(mul_e(0, e(0b01)).is_zero());
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (Mask I = 0; I < 8; ++I) {
                auto v = e(I);
                auto comm = mul_e(i, contract_e(j, v)) + contract_e(j, mul_e(i, v));
                REQUIRE(comm == (i == j ? v : ExtElement()));
            }
}

TEST_CASE("skewed generators")
{
    auto mt = BHMatrix::validate({{2, 0}, {1, 3}});
    REQUIRE(E(mt, 0, ExtElement::unit()) == e(0b01, pi(1, 2)));
    REQUIRE(E(mt, 1, ExtElement::unit()) == e(0b01, pi(1)) + e(0b10, pi(1, 3)));
    for (const auto &m : corpus())
        for (std::size_t i = 0; i < m.n(); ++i)
            for (std::size_t j = 0; j < m.n(); ++j)
                for (Mask I = 0; I < (Mask(1) << m.n()); ++I) {
                    auto v = e(I);
                    auto comm = E(m, i, E_vee(m, j, v)) + E_vee(m, j, E(m, i, v));
                    REQUIRE(comm == (i == j ? v : ExtElement()));
                }
}

TEST_CASE("star on chain(2,3)")
{
    auto m = BHMatrix::validate({{2, 1}, {0, 3}});
    REQUIRE(star(m, ExtElement::unit()) == e(0b11, pi(2, 6)));
    REQUIRE(star(m, e(0b10)) == e(0b01, pi(1, -2)));
    // the sign in top degree follows the wedge convention
    REQUIRE(star(m, e(0b11)) == e(0, -1));
}

TEST_CASE("star on chain(2)")
{
    auto m = BHMatrix::validate({{2}});
    REQUIRE(star(m, e(1)) == e(0));
    REQUIRE(star(m, e(0)) == e(1, pi(1, 2)));
}

TEST_CASE("star intertwines the generators")
{
    std::size_t cases = 0;
    for (const auto &m : corpus()) {
        StarTable s(m), st(m.transpose());
        const std::size_t n = m.n();
        for (Mask I = 0; I < (Mask(1) << n); ++I) {
            auto v = e(I);
            for (std::size_t i = 0; i < n; ++i) {
                REQUIRE(s(E(m, i, v)) == contract_e(i, s(v)));
                REQUIRE(s(E_vee(m, i, v)) == mul_e(i, s(v)));
                auto dd = [&](const ExtElement &w) { return st(s(w)); };
                REQUIRE(dd(mul_e(i, v)) == mul_e(i, dd(v)));
                REQUIRE(dd(contract_e(i, v)) == contract_e(i, dd(v)));
                cases += 4;
            }
            auto sv = s(v);
            REQUIRE(apply_ext(sv) == PiLaurent(Rational(static_cast<long>(n))) * sv - s(apply_ext(v)));
        }
    }
    REQUIRE(cases >= 1000);
}

TEST_CASE("exterior degree")
{
    REQUIRE(ext_degree(e(0b11)) == 2);
    REQUIRE(ext_degree(e(0)) == 0);
    REQUIRE(ext_degree(e(0b10, pi(3))) == 1);
    REQUIRE_THROWS_AS(ext_degree(e(0) + e(1)), Error);
}
