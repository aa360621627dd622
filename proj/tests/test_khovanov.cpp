#include <doctest.h>

#include "floerforge/catalog.hpp"
#include "floerforge/khovanov.hpp"

using namespace ff;

namespace {

const KhTable& table(const std::string& id) { return *default_catalog().lookup(id).kh; }

}  // namespace

TEST_CASE("T(2,8) and T(2,10) totals") {
    auto& t8 = table("T(2,8)");
    CHECK(kh_total(t8, Field::GF2) == 16);
    CHECK(kh_total(t8, Field::Q) == 10);
    CHECK(t8.torsion_count() == 3);
    CHECK(reduced_rank_f2(t8) == 8);
    CHECK(dowlin_bound(8, 2) == 16);

    auto& t10 = table("T(2,10)");
    CHECK(kh_total(t10, Field::GF2) == 20);
    CHECK(kh_total(t10, Field::Q) == 12);
    CHECK(t10.torsion_count() == 4);
    CHECK(reduced_rank_f2(t10) == 10);
    CHECK(dowlin_bound(10, 2) == 20);

    CHECK(reduced_rank_f2(table("unknot")) == 1);
    CHECK(dowlin_bound(1, 1) == 1);
}

TEST_CASE("uct bookkeeping") {
    KhTable t;
    t.add_free(0, 0);
    t.add_torsion(2, 4, 2);
    t.add_torsion(2, 4, 3);
    auto f2 = uct_ranks(t, Field::GF2);
    CHECK(f2[{2, 4}] == 1);
    CHECK(f2[{1, 4}] == 1);
    CHECK(kh_total(t, Field::Q) == 1);
    CHECK(validate_kh(t).empty());
    t.add_torsion(3, 4, 6);
    CHECK_FALSE(validate_kh(t).empty());
    KhTable odd;
    odd.add_free(0, 1);
    odd.add_free(0, 0);
    CHECK_FALSE(validate_kh(odd).empty());
    KhTable one;
    one.add_free(0, 1);
    CHECK_THROWS_AS(reduced_rank_f2(one), std::domain_error);

    auto round = kh_from_json(kh_to_json(table("T(2,10)")));
    CHECK(kh_to_json(round) == kh_to_json(table("T(2,10)")));

    // Q ranks never exceed GF(2) ranks in any homological grading
    for (auto& e : default_catalog().entries()) {
        if (!e.kh) continue;
        std::map<int, int64_t> q, f;
        for (auto& [k, r] : uct_ranks(*e.kh, Field::Q)) q[k.first] += r;
        for (auto& [k, r] : uct_ranks(*e.kh, Field::GF2)) f[k.first] += r;
        for (auto& [i, r] : q) CHECK(r <= f[i]);
    }
}

TEST_CASE("kh_tensor") {
    auto trefoil = ranks_by_i_minus_j(table("T(2,3)"));
    CHECK(delta_ranks_str(trefoil) == "Q_{-6}+Q^2_{-3}+Q_{-1}");
    auto unknot = ranks_by_i_minus_j(table("unknot"));
    CHECK(delta_ranks_str(unknot) == "Q_{-1}+Q_{1}");
    CHECK(delta_ranks_str(kh_tensor(trefoil, unknot)) == "Q_{-7}+Q_{-5}+Q^2_{-4}+Q^3_{-2}+Q_{0}");
    CHECK(kh_tensor(trefoil, DeltaRanks{{0, 1}}) == trefoil);

    auto fig8 = ranks_by_i_minus_j(table("fig8"));
    CHECK(delta_ranks_str(fig8) == "Q_{-3}+Q_{-1}+Q^2_{0}+Q_{1}+Q_{3}");
    auto f = kh_tensor(fig8, unknot);
    CHECK(delta_ranks_str(f) == "Q_{-4}+Q^2_{-2}+Q^2_{-1}+Q^2_{0}+Q^2_{1}+Q^2_{2}+Q_{4}");

    int64_t ta = 0, tb = 0, tt = 0;
    for (auto& [l, r] : fig8) ta += r;
    for (auto& [l, r] : trefoil) tb += r;
    for (auto& [l, r] : kh_tensor(fig8, trefoil)) tt += r;
    CHECK(tt == ta * tb);
}

TEST_CASE("batson_seed_check") {
    auto unknot = ranks_by_i_minus_j(table("unknot"));
    auto t8 = ranks_by_i_minus_j(table("T(2,8)"));
    auto r = batson_seed_check(t8, kh_tensor(ranks_by_i_minus_j(table("T(2,3)")), unknot), 4);
    CHECK(r.report.verdict == Verdict::Fail);
    REQUIRE_FALSE(r.violations.empty());
    CHECK(r.violations.front() == -12);
    CHECK(t8.at(-12) == 1);
    CHECK(r.report.witness == "l=-12: rank^{i-j=-12}(link)=1 < rank^{i-j=-4}(tensor)=2");

    auto t10 = ranks_by_i_minus_j(table("T(2,10)"));
    auto m = batson_seed_check(t10, kh_tensor(ranks_by_i_minus_j(table("T(2,-3)")), unknot), 5);
    CHECK(m.report.verdict == Verdict::Fail);
    // the link has rank one in the grading the tensor needs rank three
    CHECK(m.report.witness.find("(link)=1") != std::string::npos);

    CHECK(batson_seed_check(t8, t8, 0).report.verdict == Verdict::Pass);
    // T(2,8) vs two unknots is consistent
    CHECK(batson_seed_check(t8, kh_tensor(unknot, unknot), 4).report.verdict == Verdict::Pass);
}

TEST_CASE("lee_constraint") {
    auto t8 = lee_inference(table("T(2,8)"));
    CHECK(t8.gradings == std::vector<int>{0, 8});
    CHECK(t8.max_components == 2);
    CHECK(t8.linking == 4);
    CHECK(lee_constraint(table("T(2,8)"), 2, 4).verdict == Verdict::Pass);
    CHECK(lee_constraint(table("T(2,8)"), 2, 4).witness == "Lee gradings {0,8}");
    CHECK(lee_constraint(table("T(2,8)"), 2, 3).verdict == Verdict::Fail);

    auto t10 = lee_inference(table("T(2,10)"));
    CHECK(t10.linking == 5);
    CHECK(lee_constraint(table("T(2,10)"), 2, 5).witness == "Lee gradings {0,10}");

    auto u = lee_inference(table("unknot"));
    CHECK(u.max_components == 1);
    CHECK_FALSE(u.linking.has_value());
    CHECK(lee_constraint(table("unknot"), 1, std::nullopt).verdict == Verdict::Pass);
    CHECK(lee_constraint(table("unknot"), 2, 0).verdict == Verdict::Fail);

    CHECK(lee_inference(table("T(2,-8)")).linking == -4);
}

TEST_CASE("thinness and s") {
    auto a = kh_thin_s_chi(table("T(2,8)"));
    CHECK(a.thin);
    CHECK(a.diagonals == std::vector<int>{6, 8});
    CHECK(a.s == 5);
    CHECK(a.chi_bound == -6);
    auto b = kh_thin_s_chi(table("T(2,10)"));
    CHECK(b.thin);
    CHECK(b.s == 6);
    CHECK(b.chi_bound == -8);

    KhTable wide;
    wide.add_free(0, 0);
    wide.add_free(0, 2);
    wide.add_free(1, 8);
    auto w = kh_thin_s_chi(wide);
    CHECK_FALSE(w.thin);
    CHECK_FALSE(w.s.has_value());
}
