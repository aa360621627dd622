#include <doctest.h>

#include "support.hpp"

using namespace ff;
using namespace fftest;

TEST_CASE("descriptor strings") {
    auto s = SummandDescriptor::parse("Y[-1]^1[3/2,3/2]");
    CHECK(s.kind == SummandKind::Y);
    CHECK(s.d == HalfInt(-1));
    CHECK(s.l == 1);
    CHECK(s.i == half(3));
    CHECK(s.str() == "Y[-1]^1[3/2,3/2]");
    CHECK(SummandDescriptor::parse("B[-4][0,0]").str() == "B[-4][0,0]");
    CHECK(SummandDescriptor::parse("X[0]^0[1,1]").str() == "Y[0]^0[1,1]");
    CHECK_THROWS(SummandDescriptor::parse("B[-4]^1[0,0]"));
    CHECK_THROWS(SummandDescriptor::parse("V[0]^0[0,0]"));
    CHECK_THROWS(SummandDescriptor::parse("Q[0]^0[0,0]"));
}

TEST_CASE("realize_summand examples") {
    auto y = realize_summand(Y(0, 0, 2, 2), Field::Q);
    REQUIRE(y.size() == 1);
    CHECK(y.gen(0).gr == Grading{2, 2, 0});

    for (Field f : {Field::GF2, Field::Q}) {
        auto y1 = realize_summand(SummandDescriptor::parse("Y[-1]^1[3/2,3/2]"), f);
        auto m = module_of_generators(y1);
        CHECK(m.rank_at({2, 1, -1}) == 1);
        CHECK(m.rank_at({1, 2, -1}) == 1);
        CHECK(m.rank_at({1, 1, -2}) == 1);
        CHECK(m.total() == 3);
        auto t = total_homology(y1);
        CHECK(t.size() == 1);
        CHECK(t[HalfInt(-1)] == 1);
    }

    // the square on (0,0),(-1,0),(0,-1),(-1,-1) with top Maslov -4
    auto box = realize_summand(B(-6, -1, -1), Field::Q);
    CHECK(validate_complex(box).empty());
    auto mb = module_of_generators(box);
    CHECK(mb.rank_at({0, 0, -4}) == 1);
    CHECK(mb.rank_at({-1, -1, -6}) == 1);
    int negs = 0;
    for (auto& [k, v] : box.differential()) negs += v == -1;
    CHECK(negs == 1);
    CHECK(total_homology(box).empty());

    for (Field f : {Field::GF2, Field::Q})
        for (int l = 0; l <= 4; ++l) {
            for (auto s : {X(-1, l, 0, 0), Y(2, l, half(1), half(-1))}) {
                auto c = realize_summand(s, f);
                CHECK(validate_complex(c).empty());
                CHECK(static_cast<int>(c.size()) == 2 * l + 1);
                auto t = total_homology(c);
                CHECK(t.size() == 1);
                CHECK(t[s.d] == 1);
            }
            if (l >= 1)
                for (auto s : {V(0, l, 0, 0), H(1, l, 2, 0)}) {
                    auto c = realize_summand(s, f);
                    CHECK(validate_complex(c).empty());
                    CHECK(total_homology(c).empty());
                }
        }
}

TEST_CASE("decompose T(2,8) and small complexes") {
    for (Field f : {Field::GF2, Field::Q}) {
        auto d = t28_decomposition();
        auto c = realize(d, f);
        auto got = decompose_e2(c);
        CHECK(got.strings() == d.strings());
        CHECK(summand_census_oracle(c).strings() == d.strings());
        CHECK(verify_decomposition(c, got).ok);
        CHECK(check_pairing(got).ok);
    }
    BifilteredComplex one(Field::Q);
    one.add_generator("g", {3, -1, 2});
    CHECK(decompose_e2(one).strings() == std::vector<std::string>{"Y[2]^0[3,-1]"});
    auto v = realize_summand(V(0, 1, 0, 0), Field::Q);
    CHECK(summand_census_oracle(v).strings() == std::vector<std::string>{"V[0]^1[0,0]"});
    CHECK(verify_decomposition(BifilteredComplex(Field::Q), Decomposition{}).ok);
}

TEST_CASE("verify_decomposition distinguishes a box from vertical pairs") {
    auto box = realize_summand(B(-2, 1, 1), Field::GF2);
    Decomposition pairs = parse_decomposition({"V[0]^1[2,2]", "V[-1]^1[1,2]"});
    auto rep = verify_decomposition(box, pairs);
    CHECK_FALSE(rep.ok);
    bool horiz = false;
    for (auto& m : rep.mismatches) horiz |= m.find("horizontal-only") != std::string::npos;
    CHECK(horiz);
}

TEST_CASE("check_pairing") {
    CHECK_FALSE(check_pairing(parse_decomposition({"V[0]^1[0,0]"})).ok);
    CHECK(check_pairing(parse_decomposition({"X[0]^1[1/2,1/2]", "X[-1]^1[-1/2,-1/2]", "B[-3][0,0]"})).ok);
    CHECK(check_pairing(parse_decomposition(
                            {"Y[0]^0[0,0]", "Y[-1]^0[0,0]", "V[1]^2[0,0]", "V[0]^2[0,-1]", "H[1]^1[1,1]", "H[0]^1[0,1]"}))
              .ok);
    CHECK_FALSE(check_pairing(parse_decomposition({"Y[0]^0[0,0]", "Y[0]^0[1,1]"})).ok);
}

TEST_CASE("scrambled sums round trip") {
    std::mt19937_64 rng(1234);
    for (int n = 0; n < 120; ++n) {
        Field f = n % 2 ? Field::Q : Field::GF2;
        auto d = random_decomposition(rng, 12, 3, 2);
        auto c = random_filtered_scramble(realize(d, f), rng, 30);
        REQUIRE(validate_complex(c).empty());
        auto got = decompose_e2(c);
        CHECK(got.strings() == d.strings());
        auto census = summand_census_oracle(c);
        CHECK(census.strings() == d.strings());
        CHECK(verify_decomposition(c, got).ok);
        CHECK(got.rank() == static_cast<int>(c.size()));
    }
}

TEST_CASE("non-family zigzag is rejected") {
    // p0 -> c1 <- p1 -> c2 : an even zigzag, acyclic but not one of the five shapes
    BifilteredComplex z(Field::GF2);
    z.add_generator("p0", {0, 2, 0});
    z.add_generator("p1", {1, 1, 0});
    z.add_generator("c1", {0, 1, -1});
    z.add_generator("c2", {1, 0, -1});
    z.add_arrow("p0", "c1", 1);
    z.add_arrow("p1", "c1", 1);
    z.add_arrow("p1", "c2", 1);
    REQUIRE(validate_complex(z).empty());
    CHECK_THROWS_AS(decompose_e2(z), DecompositionError);
}
