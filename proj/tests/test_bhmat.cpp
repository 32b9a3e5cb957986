#include <catch_amalgamated.hpp>

#include <bhlab/bhmat.hpp>
#include <bhlab/corpus.hpp>

using namespace bhlab;

namespace {

RatVec rv(std::initializer_list<const char *> xs)
{
    RatVec v;
    for (const char *s : xs) v.push_back(parse_rational(s));
    return v;
}

} // namespace

TEST_CASE("validate classifies chains and loops")
{
    auto a = BHMatrix::validate({{2}});
    REQUIRE(a.decomposition().str() == "chain(2)");

    auto b = BHMatrix::validate({{2, 1}, {0, 3}});
    REQUIRE(b.decomposition().str() == "chain(2,3)");
    REQUIRE(b.decomposition().permutation == std::vector<std::size_t>{0, 1});
    REQUIRE(b.det() == 6);

    auto c = BHMatrix::validate({{3, 1}, {1, 2}});
    REQUIRE(c.decomposition().str() == "loop(3,2)");

    auto d = BHMatrix::validate({{2, 0}, {0, 3}});
    REQUIRE(d.decomposition().str() == "chain(2) + chain(3)");
}

TEST_CASE("validate rejects bad input")
{
    auto kind = [](auto f) {
        try {
            f();
        } catch (const Error &e) {
            return e.kind();
        }
        FAIL("no error");
        return ErrorKind::BadShape;
    };
    REQUIRE(kind([] { BHMatrix::validate({{1, 1}, {1, 1}}); }) == ErrorKind::Singular);
    REQUIRE(kind([] { BHMatrix::validate({{1, 2}}); }) == ErrorKind::BadShape);
    REQUIRE(kind([] { BHMatrix::validate({{2, 1, 1}, {0, 2, 0}, {0, 0, 2}}); }) ==
            ErrorKind::NotInvertiblePolynomial);
    REQUIRE(kind([] { BHMatrix::validate({{1}}); }) == ErrorKind::NotInvertiblePolynomial);
    REQUIRE(kind([] { BHMatrix::validate({{2, 2}, {0, 3}}); }) == ErrorKind::NotInvertiblePolynomial);
}

TEST_CASE("permuted input decomposes with a permutation")
{
    // x2^2 x1 + x1^3, rows swapped
    auto m = BHMatrix::validate({{3, 0}, {1, 2}});
    const auto &d = m.decomposition();
    REQUIRE(d.str() == "chain(2,3)");
    REQUIRE(d.permutation == std::vector<std::size_t>{1, 0});
    REQUIRE(d.row_permutation == std::vector<std::size_t>{1, 0});
    IntMatrix p(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) p(i, j) = m(d.row_permutation[i], d.permutation[j]);
    REQUIRE(p == d.block_sum());
}

TEST_CASE("weights")
{
    REQUIRE(weights(BHMatrix::validate({{2, 1}, {0, 3}})) == rv({"1/3", "1/3"}));
    REQUIRE(weights(BHMatrix::validate({{2}})) == rv({"1/2"}));
    REQUIRE(weights(BHMatrix::validate({{3, 1}, {1, 2}})) == rv({"1/5", "2/5"}));
}

TEST_CASE("group elements of chain(2,3)")
{
    auto m = BHMatrix::validate({{2, 1}, {0, 3}});
    auto g = group_elements(m);
    REQUIRE(g.size() == 6);
    std::vector<IntVec> lam{{0, 0}, {1, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}};
    std::vector<RatVec> ch{rv({"0", "0"}), rv({"1/2", "0"}), rv({"1/3", "1/3"}),
                           rv({"1/6", "2/3"}), rv({"5/6", "1/3"}), rv({"2/3", "2/3"})};
    for (std::size_t k = 0; k < 6; ++k) {
        REQUIRE(g[k].lambda == lam[k]);
        REQUIRE(g[k].charges == ch[k]);
    }
    REQUIRE(g[1].jvee == std::vector<bool>{true, false});
    REQUIRE(g[1].sub.n() == 1);
    REQUIRE(g[1].sub(0, 0) == 3);
}

TEST_CASE("group elements of one-variable chains")
{
    auto g = group_elements(BHMatrix::validate({{2}}));
    REQUIRE(g.size() == 2);
    REQUIRE(g[0].lambda == IntVec{0});
    REQUIRE(!g[0].jvee[0]);
    REQUIRE(g[1].lambda == IntVec{1});
    REQUIRE(g[1].charges == rv({"1/2"}));
    REQUIRE(g[1].jvee[0]);
    REQUIRE(g[1].sub.n() == 0);
    REQUIRE(group_elements(BHMatrix::validate({{3}})).size() == 3);
}

TEST_CASE("orbifold matrix of chain(2,3)")
{
    auto o = orbifold_matrix(BHMatrix::validate({{2, 1}, {0, 3}}));
    REQUIRE(o.size() == 6);
    REQUIRE(o[0].second.n() == 2);
    REQUIRE(o[1].second.n() == 1);
    REQUIRE(o[1].second(0, 0) == 3);
    for (std::size_t k = 2; k < 6; ++k) REQUIRE(o[k].second.n() == 0);
}

TEST_CASE("noninteger propagation")
{
    auto c = BHMatrix::validate({{2, 1}, {0, 3}});
    REQUIRE(check_noninteger_propagation(c, {1, 1}));
    REQUIRE(check_noninteger_propagation(c, {0, 0}));
    REQUIRE_THROWS_AS(check_noninteger_propagation(BHMatrix::validate({{2, 0}, {0, 3}}), {1, 1}), Error);

    for (std::int64_t n = 1; n <= 4; ++n) {
        std::vector<IntVec> exps{{}};
        for (std::int64_t k = 0; k < n; ++k) {
            std::vector<IntVec> next;
            for (const auto &e : exps)
                for (std::int64_t a = 2; a <= 5; ++a) {
                    auto f = e;
                    f.push_back(a);
                    next.push_back(f);
                }
            exps = next;
        }
        for (const auto &e : exps) {
            std::vector<BHMatrix> ms{BHMatrix::validate(chain_matrix(e))};
            if (n >= 2) ms.push_back(BHMatrix::validate(loop_matrix(e)));
            for (const auto &m : ms) {
                std::int64_t d = to_i64(abs(m.det()));
                if (n >= 3) d = std::min<std::int64_t>(d, 7);
                IntVec beta(n, 0);
                while (true) {
                    REQUIRE(check_noninteger_propagation(m, beta));
                    std::size_t k = 0;
                    while (k < beta.size() && ++beta[k] == d) beta[k++] = 0;
                    if (k == beta.size()) break;
                }
            }
        }
    }
}

TEST_CASE("corpus invariants")
{
    auto cs = corpus();
    REQUIRE(cs.size() >= 30);
    for (const auto &m : cs) {
        auto t = m.transpose();
        REQUIRE(t.decomposition().atoms.size() == m.decomposition().atoms.size());
        auto g = group_elements(m);
        REQUIRE(Integer(static_cast<long>(g.size())) == abs(m.det()));
        REQUIRE(Integer(static_cast<long>(group_elements(t).size())) == abs(m.det()));
        for (const auto &s : g) {
            REQUIRE(s.sub.n() == s.fixed.size());
            for (const auto &c : s.charges) REQUIRE((c >= 0 && c < 1));
            REQUIRE(canonical_lambda(m, s.lambda) == s.lambda);
        }
    }
    auto a = chain_matrix({2, 3});
    auto b = loop_matrix({3, 2});
    REQUIRE_NOTHROW(BHMatrix::validate(direct_sum(a, b)));
}

TEST_CASE("transposed atoms")
{
    // transpose of a chain is a chain read backwards, loops stay loops
    auto m = BHMatrix::validate(chain_matrix({2, 3, 4}));
    auto t = m.transpose();
    REQUIRE(t.decomposition().atoms.size() == 1);
    REQUIRE(t.decomposition().atoms[0].kind == AtomKind::Chain);
    REQUIRE(t.decomposition().atoms[0].exponents == IntVec{4, 3, 2});
    auto l = BHMatrix::validate(loop_matrix({2, 3, 4})).transpose();
    REQUIRE(l.decomposition().atoms[0].kind == AtomKind::Loop);
}
