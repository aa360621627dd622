#include <doctest.h>

#include "floerforge/invariants.hpp"
#include "support.hpp"

using namespace ff;
using namespace fftest;

namespace {

LaurentPoly P(const std::string& s, const std::string& v = "t") { return parse_laurent(s, v); }

BigradedModule t28_module() { return module_of(t28_decomposition()); }

BigradedModule t28_variant(int x) {
    auto b = [](int d, int i, int j) { return B(d, i, j).str(); };
    return module_of_strings({"Y[0]^0[2,2]", "Y[-1]^1[3/2,3/2]", "B[-8][-2,-2]", b(-4, x, -x), b(-6, -x - 1, x - 1)});
}

}  // namespace

TEST_CASE("euler_two_variable") {
    CHECK(euler_two_variable(BigradedModule{}).is_zero());
    BigradedModule one;
    one.add({0, 0, 0}, 1);
    CHECK(euler_two_variable(one) == LaurentPoly::constant(1, {"t1", "t2"}));
    BigradedModule mixed;
    mixed.add({0, 0, 0}, 1);
    mixed.add({0, 0, half(1)}, 1);
    CHECK_THROWS(euler_two_variable(mixed));
    // collapsing t1 = t2 = t reproduces the Torres-route numerator
    auto e = euler_two_variable(t28_module());
    LaurentPoly collapsed({"t"});
    for (auto& [k, c] : e.terms()) collapsed.add_term({k[0] + k[1], 0}, c);
    CHECK(collapsed == alexander_single(t28_module(), ConwayRoute::Torres).cofactor);
}

TEST_CASE("alexander_single printed forms") {
    auto a = alexander_single(golden_module_a());
    CHECK(a.cofactor == P("-t^-6 + 2t^-5 - t^-4 + 2t^-1 - 4 + 2t - t^4 + 2t^5 - t^6"));
    CHECK(a.delta == laurent_mul(P("t^{-1/2} - t^{1/2}"), a.cofactor));
    auto b = alexander_single(golden_module_b());
    CHECK(b.cofactor == P("t^4 + t^-4 - 2t^3 - 2t^-3 + t^2 + t^-2 - 2t - 2t^-1 + 4"));
    auto c = alexander_single(golden_module_c());
    // printed with "+t^3 - t^{-3}"; only the symmetric reading is reachable
    CHECK(c.cofactor == P("t^5 + t^-5 - 2t^4 - 2t^-4 + t^3 + t^-3 + 3t - 6 + 3t^-1"));
    // the two-box sibling carries the other printed bracket
    auto two = module_of_strings({"Y[0]^0[5/2,5/2]", "Y[-1]^1[2,2]", "B[-10][-5/2,-5/2]", "B[-6][3/2,-5/2]", "B[-6][-5/2,3/2]"});
    CHECK(alexander_single(two).cofactor == P("t^5 + t^-5 - 2t^4 - 2t^-4 + t^3 + t^-3 + 2t - 4 + 2t^-1"));
    auto two_nabla = conway(two);
    CHECK(two_nabla.nabla_t == P("-t^11 + t^-11 + 3t^9 - 3t^-9 - 3t^7 + 3t^-7 + t^5 - t^-5 - 2t^3 + 2t^-3 + 6t - 6t^-1"));
    CHECK(two_nabla.nabla == P("-u^11 - 8u^9 - 20u^7 - 16u^5 - 4u^3", "u"));

    BigradedModule one;
    one.add({0, 0, 0}, 1);
    auto s = alexander_single(one);
    CHECK(s.cofactor == LaurentPoly::constant(1));
    CHECK(s.factored == "(t^{-1/2} - t^{1/2})(1)");
}

TEST_CASE("conway golden pipelines") {
    auto a = conway(golden_module_a());
    CHECK(a.nabla_t == P("t^13 - t^-13 - 3t^11 + 3t^-11 + 3t^9 - 3t^-9 - t^7 + t^-7 - 2t^3 + 2t^-3 + 6t - 6t^-1"));
    CHECK(a.nabla == P("u^13 + 10u^11 + 35u^9 + 50u^7 + 25u^5", "u"));
    CHECK(*linking_from_conway(a.nabla, LinkingMode::PaperLowest) == 25);
    CHECK(*linking_from_conway(a.nabla, LinkingMode::StrictHoste) == 0);

    auto b = conway(golden_module_b());
    CHECK(b.nabla_t == P("-t^9 + t^-9 + 3t^7 - 3t^-7 - 3t^5 + 3t^-5 + 3t^3 - 3t^-3 - 6t + 6t^-1"));
    CHECK(b.nabla == P("-u^9 - 6u^7 - 9u^5", "u"));
    CHECK(*linking_from_conway(b.nabla, LinkingMode::PaperLowest) == -9);

    auto c = conway(golden_module_c());
    CHECK(c.nabla == P("-u^11 - 8u^9 - 20u^7 - 16u^5 - 5u^3", "u"));
    CHECK(*linking_from_conway(c.nabla, LinkingMode::PaperLowest) == -5);
}

TEST_CASE("linking_from_conway") {
    CHECK(*linking_from_conway(P("3u", "u"), LinkingMode::StrictHoste) == 3);
    CHECK(*linking_from_conway(P("3u", "u"), LinkingMode::PaperLowest) == 3);
    CHECK_FALSE(linking_from_conway(LaurentPoly({"u"}), LinkingMode::PaperLowest).has_value());
    CHECK(parse_linking_mode("strict-hoste") == LinkingMode::StrictHoste);
    CHECK_THROWS(parse_linking_mode("hoste"));
}

TEST_CASE("torres route recovers the linking number of T(2,2n)") {
    auto c = conway(t28_module(), ConwayRoute::Torres);
    CHECK(c.nabla == P("u^7 + 6u^5 + 10u^3 + 4u", "u"));
    CHECK(*linking_from_conway(c.nabla, LinkingMode::StrictHoste) == 4);
    for (int n = 1; n <= 5; ++n) {
        std::vector<std::string> items = {Y(0, 0, half(n), half(n)).str(), Y(-1, 1, half(n - 1), half(n - 1)).str()};
        for (int k = 2; k <= n; ++k) items.push_back(B(-2 * k, half(n - 2 * k), half(n - 2 * k)).str());
        auto m = module_of_strings(items);
        auto nab = conway(m, ConwayRoute::Torres).nabla;
        CHECK(nab.is_odd());
        CHECK(*linking_from_conway(nab, LinkingMode::StrictHoste) == n);
        CHECK(alexander_single(m, ConwayRoute::Torres).delta.evaluate_at_one() == 0);
        CHECK(conway(m).nabla.is_odd());
    }
}

TEST_CASE("conway is odd on random symmetric modules") {
    std::mt19937_64 rng(41);
    int done = 0;
    for (int n = 0; n < 300 && done < 100; ++n) {
        auto d = random_decomposition(rng, 10, 2, 2);
        auto m = module_of(d);
        // symmetrize by adding the image of each generator
        BigradedModule s = m;
        for (auto& [g, r] : symmetry_transform(m).ranks) s.add(g, r);
        bool single_coset = true;
        for (auto& [g, r] : s.ranks) single_coset &= g.maslov.is_integer();
        bool same_lk = true;
        for (auto& [g, r] : s.ranks) same_lk &= (g.a1 - s.ranks.begin()->first.a1).is_integer() &&
                                               (g.a2 - s.ranks.begin()->first.a2).is_integer() &&
                                               (g.a1 - g.a2).is_integer();
        if (!single_coset || !same_lk) continue;
        ++done;
        auto rw = rewrite_in_z(conway(s).nabla_t);
        CHECK(rw.ok);
        CHECK(rw.q.is_odd());
    }
    CHECK(done > 20);
}

TEST_CASE("alexander_from_hfk") {
    auto h = project_to_hfk(t28_module(), 2);
    auto d = alexander_from_hfk(h, 2);
    REQUIRE(d.has_value());
    CHECK(d->evaluate_at_one() == 0);
    HfkRanks odd = {{{HalfInt(0), half(1)}, 1}};
    CHECK_FALSE(alexander_from_hfk(odd, 2).has_value());
    CHECK(divide_by_unit_step(P("t^{1/2} - t^{-1/2}"))->str() == "1");
}

TEST_CASE("floer_polytope") {
    auto fp = floer_polytope(t28_module());
    CHECK(fp.str() == "[(-2,-2), (-1,-2), (2,1), (2,2), (1,2), (-2,-1)]");
    BigradedModule one;
    one.add({1, 1, 0}, 3);
    CHECK(floer_polytope(one).vertices.size() == 1);
    BigradedModule seg;
    for (int k = -2; k <= 2; ++k) seg.add({k, k, 0}, 1);
    CHECK(floer_polytope(seg).str() == "[(-2,-2), (2,2)]");
    CHECK_THROWS(floer_polytope(BigradedModule{}));
    // invariant under the symmetry involution
    auto m = golden_module_c();
    BigradedModule neg;
    for (auto& [g, r] : m.ranks) neg.add({-g.a1, -g.a2, g.maslov}, r);
    auto p1 = floer_polytope(m).vertices, p2 = floer_polytope(neg).vertices;
    std::sort(p1.begin(), p1.end());
    std::sort(p2.begin(), p2.end());
    CHECK(p1 == p2);
}

TEST_CASE("dual thurston slices") {
    auto s = dual_thurston_axis_slice(t28_module(), 2);
    CHECK_FALSE(s.empty);
    CHECK(s.lo == 0);
    CHECK(s.hi == 0);
    CHECK(s.strictly_inside_unit());
    CHECK(dual_thurston_axis_slice(t28_module(), 1).strictly_inside_unit());
    for (int x : {-1, 1}) {
        auto v = dual_thurston_axis_slice(t28_variant(x), 2);
        CHECK_FALSE(v.strictly_inside_unit());
        CHECK(v.hi >= 1);
    }
    CHECK(dual_thurston_axis_slice(t28_variant(0), 2).strictly_inside_unit());

    BigradedModule one;
    one.add({0, 0, 0}, 1);
    auto z = dual_thurston_axis_slice(one, 2);
    CHECK(z.lo == z.hi);
    BigradedModule lop;
    lop.add({1, 0, 0}, 1);
    CHECK_THROWS(dual_thurston_axis_slice(lop, 2));
}

TEST_CASE("delta spectrum") {
    auto d = delta_spectrum(t28_module());
    CHECK(d.size() == 16);
    CHECK(d.front() == HalfInt(4));
    CHECK(is_thin(t28_module()));
    CHECK(is_thin(BigradedModule{}));
    BigradedModule two;
    two.add({0, 0, 0}, 1);
    two.add({1, 0, 0}, 1);
    CHECK_FALSE(is_thin(two));
}
