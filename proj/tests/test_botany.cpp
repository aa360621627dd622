#include <doctest.h>

#include "floerforge/botany.hpp"

using namespace ff;

namespace {

Decomposition dec(std::vector<std::string> items) {
    auto d = parse_decomposition(items);
    d.normalize();
    return d;
}

const BigradedModule& catalog_module(const std::string& id) { return *default_catalog().lookup(id).module; }

std::vector<std::string> labels(const std::vector<Candidate>& cs) {
    std::vector<std::string> out;
    for (auto& c : cs) out.push_back(c.label);
    return out;
}

std::vector<Candidate> t28_candidates() {
    auto w = SearchWindow::symmetric(HalfInt(2), 16, 4);
    FreeTemplate t{SummandKind::B, HalfInt(-4), 0, HalfInt(0), HalfInt(0), 1, -1};
    return enumerate_candidates(w, dec({"Y[0]^0[2,2]", "Y[-1]^1[3/2,3/2]", "B[-8][-2,-2]"}), t);
}

Hypotheses t22n_hypotheses(int64_t lk) {
    Hypotheses h;
    h.cd.n_components = 2;
    h.cd.set_linking(1, 2, lk);
    h.cd.unknotted = {true, true};
    HfkRanks u{{{HalfInt(0), HalfInt(0)}, 1}};
    h.component_hfk = {u, u};
    h.infer_braid_axis = true;
    return h;
}

}  // namespace

TEST_CASE("symmetric partners") {
    CHECK(symmetric_partner(B(HalfInt(-8), HalfInt(-2), HalfInt(-2)))->str() == "B[-2][1,1]");
    CHECK(symmetric_partner(B(HalfInt(-4), HalfInt(1), HalfInt(-1)))->str() == "B[-6][-2,0]");
    CHECK(symmetric_partner(B(HalfInt(-6), HalfInt(-1), HalfInt(-1)))->str() == "B[-4][0,0]");
    CHECK(symmetric_partner(V(HalfInt(0), 1, HalfInt(0), HalfInt(1)))->kind == SummandKind::V);
    for (auto s : {Y(HalfInt(0), 0, HalfInt(2), HalfInt(2)), Y(HalfInt(-1), 1, half(3), half(3)), X(HalfInt(0), 1, HalfInt(0), HalfInt(0))}) {
        auto p = symmetric_partner(s);
        REQUIRE(p);
        CHECK(symmetric_partner(*p)->str() == s.str());
    }
}

TEST_CASE("enumerate_candidates on T(2,8)") {
    auto cs = t28_candidates();
    CHECK(labels(cs) == std::vector<std::string>{"x=-1", "x=0", "x=1"});
    for (auto& c : cs) {
        CHECK(c.module.total() == 16);
        CHECK(symmetry_transform(c.module) == c.module);
        CHECK(project_to_hfk(c.module, 2) == *default_catalog().lookup("T(2,8)").hfk);
    }
    CHECK(cs[1].module == catalog_module("T(2,8)"));
    CHECK(cs[2].decomposition.strings() ==
          std::vector<std::string>{"B[-4][1,-1]", "B[-6][-2,0]", "B[-8][-2,-2]", "Y[-1]^1[3/2,3/2]", "Y[0]^0[2,2]"});
}

TEST_CASE("enumerate_candidates on T(2,10)") {
    auto w = SearchWindow::symmetric(half(5), 20, 5);
    FreeTemplate t{SummandKind::B, HalfInt(-4), 0, half(1), half(1), 1, -1};
    auto fixed = dec({"Y[0]^0[5/2,5/2]", "Y[-1]^1[2,2]", "B[-10][-5/2,-5/2]", "B[-6][-1/2,-1/2]"});
    auto cs = enumerate_candidates(w, fixed, t);
    CHECK(labels(cs) == std::vector<std::string>{"x=-1", "x=0", "x=1"});
    CHECK(cs[1].module == catalog_module("T(2,10)"));
}

TEST_CASE("window and budget edges") {
    FreeTemplate t{SummandKind::B, HalfInt(-4), 0, HalfInt(0), HalfInt(0), 1, -1};
    auto fixed = dec({"Y[0]^0[2,2]", "Y[-1]^1[3/2,3/2]", "B[-8][-2,-2]"});

    // nothing fits in a one-point window: only the fixed part comes back
    auto tiny = enumerate_candidates(SearchWindow::symmetric(HalfInt(0), 16, 0), fixed, t);
    REQUIRE(tiny.size() == 1);
    CHECK(tiny[0].label == "fixed");
    CHECK(tiny[0].decomposition.strings() == fixed.strings());

    CHECK_THROWS_AS(enumerate_candidates(SearchWindow::symmetric(HalfInt(2), 12, 4), fixed, t), TruncationError);
    CHECK_THROWS_AS(enumerate_candidates(SearchWindow::symmetric(HalfInt(2), 4, 4), fixed, t), TruncationError);
    CHECK_THROWS_AS(SearchWindow::symmetric(HalfInt(2), 25, 0).check(), std::invalid_argument);
    CHECK_THROWS_AS(SearchWindow::parse("1:0,0:1", 4, 0).check(), std::invalid_argument);

    EnumOptions o;
    o.max_candidates = 1;
    o.thin_only = true;
    CHECK_THROWS_AS(enumerate_completions(SearchWindow::symmetric(HalfInt(1), 4, 0), Decomposition{}, o), TruncationError);

    auto w = SearchWindow::parse("-1:2,-1/2:3/2", 4, 1);
    CHECK(w.a1_hi == HalfInt(2));
    CHECK(w.a2_lo == half(-1));
    CHECK(w.in_coset(half(1)));
    CHECK_FALSE(w.in_coset(HalfInt(1)));
}

TEST_CASE("gauntlet on the T(2,8) candidates") {
    auto none = run_gauntlet(t28_candidates(), {}, Hypotheses{});
    CHECK(none.survivors.size() == 3);
    CHECK(none.eliminated.empty());

    auto rules = std::vector<std::string>{"parity", "symmetry", "component-degeneration", "complex-degeneration", "braid-axis",
                                          "braid-polytope"};
    auto g = run_gauntlet(t28_candidates(), rules, t22n_hypotheses(4));
    REQUIRE(g.survivors.size() == 1);
    CHECK(g.survivors[0].label == "x=0");
    REQUIRE(g.eliminated.size() == 2);
    for (auto& c : g.eliminated) CHECK(c.first_failure()->rule == "braid-polytope");

    // survivors are honest complexes
    for (auto& c : g.survivors) {
        CHECK(validate_complex(realize(c.decomposition, Field::GF2)).empty());
        CHECK(validate_complex(realize(c.decomposition, Field::Q)).empty());
        CHECK_FALSE(check_symmetry(c.module).failed());
    }

    // order and content do not depend on the thread count
    auto a = gauntlet_to_json(run_gauntlet(t28_candidates(), rules, t22n_hypotheses(4), 1));
    auto b = gauntlet_to_json(run_gauntlet(t28_candidates(), rules, t22n_hypotheses(4), 4));
    auto c = gauntlet_to_json(run_gauntlet(t28_candidates(), rules, t22n_hypotheses(4), 1));
    CHECK(a.dump() == b.dump());
    CHECK(a.dump() == c.dump());
}

TEST_CASE("complex-level degeneration") {
    for (int n : {-5, -4, -3, -2, -1, 1, 2, 3, 4, 5}) {
        auto& e = default_catalog().lookup("T(2," + std::to_string(2 * n) + ")");
        HfkRanks u{{{HalfInt(0), HalfInt(0)}, 1}};
        for (int del : {1, 2}) {
            auto r = check_complex_degeneration(*e.hfl, e.cd, del, u);
            CHECK_MESSAGE(!r.failed(), (e.id + ": " + r.witness));
        }
    }
    // a vertical pair passes the rank inequality at its Alexander line but leaves two
    // classes behind when the first component is deleted
    auto d = dec({"Y[0]^0[1/2,1/2]", "Y[-1]^1[0,0]", "V[-1]^1[1/2,1/2]", "H[-1]^1[1/2,1/2]"});
    ComponentData cd;
    cd.n_components = 2;
    cd.set_linking(1, 2, 1);
    HfkRanks u{{{HalfInt(0), HalfInt(0)}, 1}};
    CHECK(check_complex_degeneration(d, cd, 1, u).failed());
    CHECK_FALSE(check_complex_degeneration(dec({"Y[0]^0[1/2,1/2]", "Y[-1]^1[0,0]"}), cd, 1, u).failed());
}

TEST_CASE("detection pipelines") {
    auto r8 = detect_t22n(4);
    CHECK(r8.n_components == 2);
    CHECK(r8.skeleton.strings() == std::vector<std::string>{"B[-8][-2,-2]", "Y[-1]^1[3/2,3/2]", "Y[0]^0[2,2]"});
    REQUIRE(r8.candidates.size() == 3);
    REQUIRE(r8.survivors.size() == 1);
    CHECK(r8.survivors[0].label == "B[-4][0,0] + B[-6][-1,-1]");
    for (auto& c : r8.candidates)
        if (c.first_failure()) CHECK(c.first_failure()->rule == "braid-polytope");
    CHECK(r8.matches_catalog);

    auto r10 = detect_t22n(5);
    CHECK(r10.skeleton.strings() ==
          std::vector<std::string>{"B[-10][-5/2,-5/2]", "B[-6][-1/2,-1/2]", "Y[-1]^1[2,2]", "Y[0]^0[5/2,5/2]"});
    CHECK(r10.candidates.size() == 3);
    CHECK(r10.survivors.size() == 1);
    CHECK(r10.matches_catalog);
}

TEST_CASE("rank-4 thin classification") {
    auto c = classify_rank_thin(4, SearchWindow::symmetric(half(3), 4, 1));
    REQUIRE(c.survivors.size() == 2);
    CHECK(c.unlink_flagged.empty());
    std::set<std::vector<std::string>> got;
    for (auto& s : c.survivors) got.insert(s.decomposition.strings());
    std::set<std::vector<std::string>> hopf;
    for (auto id : {"Hopf+", "Hopf-"}) hopf.insert(default_catalog().lookup(id).hfl->strings());
    CHECK(got == hopf);
    // the two Maslov anchors
    std::set<HalfInt> tops;
    for (auto& s : c.survivors) {
        HalfInt top = s.module.ranks.begin()->first.maslov;
        for (auto& [g, r] : s.module.ranks) top = std::max(top, g.maslov);
        tops.insert(top);
    }
    CHECK(tops.count(HalfInt(0)));
    CHECK(tops.count(HalfInt(1)));

    auto unlink = classify_rank_thin(4, SearchWindow::symmetric(HalfInt(2), 4, 0));
    CHECK(unlink.survivors.empty());
    REQUIRE(unlink.unlink_flagged.size() == 1);
    CHECK(unlink.unlink_flagged[0].decomposition.strings() ==
          std::vector<std::string>{"Y[-1]^0[0,0]", "Y[-1]^0[0,0]", "Y[-2]^0[0,0]", "Y[0]^0[0,0]"});

    auto two = classify_rank_thin(2, SearchWindow::symmetric(HalfInt(2), 2, 0));
    CHECK(two.survivors.empty());
    REQUIRE(two.unlink_flagged.size() == 1);
    BigradedModule v;
    v.add({HalfInt(0), HalfInt(0), HalfInt(0)}, 1);
    v.add({HalfInt(0), HalfInt(0), HalfInt(-1)}, 1);
    CHECK(two.unlink_flagged[0].module == v);
    CHECK(classify_rank_thin(2, SearchWindow::symmetric(half(3), 2, 1)).survivors.empty());
}

TEST_CASE("enumeration is deterministic") {
    EnumOptions o;
    o.thin_only = true;
    o.require_symmetric = false;
    auto w = SearchWindow::symmetric(HalfInt(1), 3, 0);
    auto a = enumerate_completions(w, Decomposition{}, o);
    auto b = enumerate_completions(w, Decomposition{}, o);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].decomposition.strings() == b[i].decomposition.strings());
    CHECK(std::is_sorted(a.begin(), a.end(), [](auto& x, auto& y) { return x.decomposition.strings() < y.decomposition.strings(); }));
}

namespace {

void compare_with_brute_force(int max_rank) {
    auto brute = brute_force_thin(1, max_rank);
    std::set<std::vector<std::string>> enumerated;
    for (int r = 1; r <= max_rank; ++r) {
        EnumOptions o;
        o.thin_only = true;
        o.delta = HalfInt(0);
        o.require_symmetric = false;
        o.max_l = max_rank;
        for (auto& c : enumerate_completions(SearchWindow::symmetric(HalfInt(1), r, 0), Decomposition{}, o))
            enumerated.insert(c.decomposition.strings());
    }
    CHECK(brute.complexes > brute.decompositions.size());
    CHECK(enumerated == brute.decompositions);
}

}  // namespace

TEST_CASE("summand enumeration matches generator-level brute force, rank <= 4") { compare_with_brute_force(4); }

TEST_SUITE("slow") {
    TEST_CASE("summand enumeration matches generator-level brute force, rank <= 6") { compare_with_brute_force(6); }
}
