#include <doctest.h>

#include <algorithm>
#include <random>

#include "floerforge/exactalg.hpp"

using namespace ff;

namespace {

LaurentPoly P(const std::string& s, const std::string& v = "t") { return parse_laurent(s, v); }

// plain dense elimination, kept deliberately naive
size_t dense_rank(std::vector<std::vector<Rational>> a) {
    size_t rank = 0, rows = a.size(), cols = rows ? a[0].size() : 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t p = rank;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rank]);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            Rational f = a[r][c] / a[rank][c];
            for (size_t k = 0; k < cols; ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

LaurentPoly random_poly(std::mt19937_64& rng, int span) {
    LaurentPoly p({"t"});
    int terms = 1 + static_cast<int>(rng() % 5);
    for (int k = 0; k < terms; ++k)
        p.add_term({2 * (static_cast<int64_t>(rng() % (2 * span + 1)) - span), 0}, Rational(static_cast<int>(rng() % 7) - 3));
    return p;
}

}  // namespace

TEST_CASE("half-integers keep their parity") {
    HalfInt a = HalfInt::parse("3/2"), b = HalfInt::parse("-1/2");
    CHECK(a.doubled() == 3);
    CHECK_FALSE(a.is_integer());
    CHECK((a + b) == HalfInt(1));
    CHECK((a - b).str() == "2");
    CHECK(b.str() == "-1/2");
    CHECK(HalfInt::parse("-5/2").floor() == -3);
    CHECK_THROWS(HalfInt::parse("1/3"));
}

TEST_CASE("field scalars") {
    FieldScalar x(Field::GF2, 3), y(Field::GF2, 1);
    CHECK(x.value() == 1);
    CHECK((x + y).is_zero());
    FieldScalar q(Field::Q, Rational(6, 4));
    CHECK(q.str() == "3/2");
    CHECK((q * q.inverse()).value() == 1);
    CHECK_THROWS(FieldScalar(Field::GF2, Rational(1, 2)));
    CHECK_THROWS(x + q);
}

TEST_CASE("laurent_mul examples") {
    LaurentPoly p = P("2t^{3/2} - t^-1 + 5");
    CHECK(laurent_mul(p, LaurentPoly::constant(1)) == p);
    LaurentPoly a = P("t^{-1/2} - t^{1/2}");
    CHECK(laurent_mul(a, P("t^{1/2}")) == P("1 - t"));
    LaurentPoly lhs = laurent_mul(P("t^-1 - t"), P("-t^-12 + 2t^-10 - t^-8 + 2t^-2 - 4 + 2t^2 - t^8 + 2t^10 - t^12"));
    CHECK(lhs == P("t^13 - 3t^11 + 3t^9 - t^7 - 2t^3 + 6t - 6t^-1 + 2t^-3 + t^-7 - 3t^-9 + 3t^-11 - t^-13"));
    CHECK_THROWS(laurent_mul(P("t"), LaurentPoly::monomial2(1, 1, 1)));
}

TEST_CASE("canonical rendering") {
    CHECK(P("t^{3/2} - 3 + t^-1").str() == "t^{3/2} - 3 + t^{-1}");
    CHECK(P("-u^13 + 2u", "u").str() == "-u^{13} + 2u");
    CHECK(LaurentPoly({"t"}).str() == "0");
    CHECK(P("t^2 + 1/2t").str() == "t^{2} + 1/2t");
}

TEST_CASE("rewrite_in_z examples") {
    auto r1 = rewrite_in_z(P("t - t^-1"));
    REQUIRE(r1.ok);
    CHECK(r1.q == P("u", "u"));

    auto r2 = rewrite_in_z(P("t^13 - t^-13 - 3t^11 + 3t^-11 + 3t^9 - 3t^-9 - t^7 + t^-7 - 2t^3 + 2t^-3 + 6t - 6t^-1"));
    REQUIRE(r2.ok);
    CHECK(r2.q == P("u^13 + 10u^11 + 35u^9 + 50u^7 + 25u^5", "u"));

    auto r3 = rewrite_in_z(P("-t^9 + t^-9 + 3t^7 - 3t^-7 - 3t^5 + 3t^-5 + 3t^3 - 3t^-3 - 6t + 6t^-1"));
    REQUIRE(r3.ok);
    CHECK(r3.q == P("-u^9 - 6u^7 - 9u^5", "u"));

    auto bad = rewrite_in_z(P("t^{1/2}"));
    CHECK_FALSE(bad.ok);
    CHECK(bad.residual == P("t^{1/2}"));
    auto bad2 = rewrite_in_z(P("t^-2"));
    CHECK_FALSE(bad2.ok);
}

TEST_CASE("rewrite_in_z round trip on random odd polynomials") {
    std::mt19937_64 rng(17);
    for (int n = 0; n < 200; ++n) {
        LaurentPoly q({"u"});
        for (int k = 1; k <= 15; k += 2)
            if (rng() % 2) q.add_term({2 * k, 0}, Rational(static_cast<int>(rng() % 11) - 5));
        LaurentPoly p = substitute_z(q);
        CHECK(p.is_antisymmetric());
        auto r = rewrite_in_z(p);
        REQUIRE(r.ok);
        CHECK(r.q == q);
    }
}

TEST_CASE("laurent_mul is commutative and associative") {
    std::mt19937_64 rng(5);
    for (int n = 0; n < 100; ++n) {
        auto a = random_poly(rng, 4), b = random_poly(rng, 4), c = random_poly(rng, 4);
        CHECK(laurent_mul(a, b) == laurent_mul(b, a));
        CHECK(laurent_mul(laurent_mul(a, b), c) == laurent_mul(a, laurent_mul(b, c)));
        CHECK(laurent_mul(a, LaurentPoly({"t"})).is_zero());
    }
}

TEST_CASE("rank_and_kernel trivial cases") {
    SparseMatrix id(3, 3, Field::GF2);
    for (size_t i = 0; i < 3; ++i) id.set(i, i, 1);
    auto r = rank_and_kernel(id);
    CHECK(r.rank == 3);
    CHECK(r.kernel.empty());
    SparseMatrix z(2, 5, Field::Q);
    auto rz = rank_and_kernel(z);
    CHECK(rz.rank == 0);
    CHECK(rz.kernel.size() == 5);
}

TEST_CASE("rank_and_kernel agrees with dense elimination") {
    std::mt19937_64 rng(99);
    for (int n = 0; n < 60; ++n) {
        SparseMatrix m(8, 8, Field::Q);
        std::vector<std::vector<Rational>> dense(8, std::vector<Rational>(8, Rational(0)));
        // low-rank products make the test meaningful
        int k = static_cast<int>(rng() % 9);
        std::vector<std::vector<int>> u(8, std::vector<int>(k)), v(k, std::vector<int>(8));
        for (auto& row : u) for (auto& x : row) x = static_cast<int>(rng() % 5) - 2;
        for (auto& row : v) for (auto& x : row) x = static_cast<int>(rng() % 5) - 2;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                int s = 0;
                for (int t = 0; t < k; ++t) s += u[i][t] * v[t][j];
                dense[i][j] = s;
                m.set(i, j, s);
            }
        auto rk = rank_and_kernel(m);
        CHECK(rk.rank == dense_rank(dense));
        CHECK(rk.rank + rk.kernel.size() == 8);
        for (auto& kv : rk.kernel)
            for (int i = 0; i < 8; ++i) {
                Rational s = 0;
                for (auto& [c, x] : kv) s += dense[i][c] * x;
                CHECK(s == 0);
            }
        // pivot-order independence
        std::vector<int> perm(8);
        for (int i = 0; i < 8; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        SparseMatrix shuffled(8, 8, Field::Q);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) shuffled.set(perm[i], j, dense[i][j]);
        CHECK(rank_of(shuffled) == rk.rank);
    }
}

TEST_CASE("GF(2) kernels are annihilated") {
    std::mt19937_64 rng(3);
    for (int n = 0; n < 50; ++n) {
        SparseMatrix m(6, 9, Field::GF2);
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 9; ++j)
                if (rng() % 3 == 0) m.set(i, j, 1);
        auto rk = rank_and_kernel(m);
        CHECK(rk.rank + rk.kernel.size() == 9);
        for (auto& kv : rk.kernel)
            for (int i = 0; i < 6; ++i) {
                int s = 0;
                for (auto& [c, x] : kv) s += static_cast<int>(m.get(i, c) * x);
                CHECK(s % 2 == 0);
            }
    }
}
