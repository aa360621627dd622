#include "floerforge/constraints.hpp"

#include <algorithm>
#include <sstream>

#include "floerforge/invariants.hpp"

namespace ff {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        default: return "inapplicable";
    }
}

json report_to_json(const ConstraintReport& r) {
    json j = json::object();
    j["rule"] = r.rule;
    j["verdict"] = verdict_name(r.verdict);
    j["witness"] = r.witness;
    return j;
}

json reports_to_json(const std::vector<ConstraintReport>& rs) {
    json j = json::array();
    for (auto& r : rs) j.push_back(report_to_json(r));
    return j;
}

namespace {

ConstraintReport make(std::string rule, Verdict v, std::string witness = "") {
    ConstraintReport r;
    r.rule = std::move(rule);
    r.verdict = v;
    r.witness = std::move(witness);
    return r;
}

std::string gstr(HalfInt a1, HalfInt a2) { return "(" + a1.str() + "," + a2.str() + ")"; }

HalfInt a_of(const Grading& g, int i) { return i == 1 ? g.a1 : g.a2; }

std::map<HalfInt, int64_t> line_ranks(const BigradedModule& m, int i) {
    std::map<HalfInt, int64_t> out;
    for (auto& [g, r] : m.ranks) out[a_of(g, i)] += r;
    return out;
}

int64_t pow2(int k) { return k <= 0 ? 1 : (int64_t(1) << k); }

}  // namespace

ConstraintReport check_symmetry(const BigradedModule& m, bool exchange) {
    std::vector<std::string> bad;
    auto img = symmetry_transform(m);
    std::set<Grading> keys;
    for (auto& [g, r] : m.ranks) keys.insert(g);
    for (auto& [g, r] : img.ranks) keys.insert(g);
    // generators the module has in excess come first: they are what a reader moved
    std::vector<std::string> deficit;
    for (auto& g : keys)
        if (m.rank_at(g) != img.rank_at(g))
            (m.rank_at(g) > img.rank_at(g) ? bad : deficit).push_back(g.str() + " rank " + std::to_string(m.rank_at(g)) + " vs conjugate " + std::to_string(img.rank_at(g)));
    bad.insert(bad.end(), deficit.begin(), deficit.end());
    if (exchange)
        for (auto& [g, r] : m.ranks) {
            Grading s{g.a2, g.a1, g.maslov};
            if (m.rank_at(s) != r)
                bad.push_back(g.str() + " rank " + std::to_string(r) + " vs exchanged " + std::to_string(m.rank_at(s)));
        }
    if (bad.empty()) return make("symmetry", Verdict::Pass);
    std::string w;
    for (size_t k = 0; k < bad.size() && k < 8; ++k) w += (k ? "; " : "") + bad[k];
    if (bad.size() > 8) w += "; ...";
    return make("symmetry", Verdict::Fail, w);
}

ConstraintReport check_component_degeneration(const BigradedModule& m, const ComponentData& cd, int deleted,
                                              const HfkRanks& target) {
    std::string rule = "component-degeneration." + std::to_string(deleted);
    if (deleted != 1 && deleted != 2) return make(rule, Verdict::Inapplicable, "only two-component modules");
    int keep = 3 - deleted;
    HalfInt shift = half(cd.linking(1, 2));
    auto lines = line_ranks(m, keep);
    std::map<HalfInt, int64_t> need;
    for (auto& [a, r] : hfk_by_alexander(target)) need[a + shift] += 2 * r;
    std::set<HalfInt> keys;
    for (auto& [a, r] : lines) keys.insert(a);
    for (auto& [a, r] : need) keys.insert(a);
    for (auto a : keys) {
        int64_t have = lines.count(a) ? lines[a] : 0, want = need.count(a) ? need[a] : 0;
        std::string where = "A_" + std::to_string(keep) + "=" + a.str();
        if (have < want)
            return make(rule, Verdict::Fail, where + ": rank " + std::to_string(have) + " < " + std::to_string(want) + " needed by target x V");
        if ((have - want) % 2)
            return make(rule, Verdict::Fail, where + ": rank " + std::to_string(have) + " and target rank " + std::to_string(want) + " differ in parity");
    }
    return make(rule, Verdict::Pass, "shift " + shift.str());
}

ConstraintReport check_global_degeneration(const HfkRanks& hfk, int n) {
    std::string rule = "global-degeneration";
    int64_t total = hfk_total(hfk), need = pow2(n - 1);
    if (total < need) return make(rule, Verdict::Fail, "total rank " + std::to_string(total) + " < 2^" + std::to_string(n - 1));
    HalfInt coset = HalfInt::from_doubled(n - 1);
    std::optional<HalfInt> top;
    for (auto& [k, r] : hfk) {
        if (!(k.second - coset).is_integer())
            return make(rule, Verdict::Fail, "Maslov " + k.second.str() + " outside Z + " + coset.str());
        if (!top || k.second > *top) top = k.second;
    }
    if (*top < coset) return make(rule, Verdict::Fail, "maximal Maslov " + top->str() + " < " + coset.str());
    return make(rule, Verdict::Pass, "max Maslov " + top->str());
}

ConstraintReport check_fibered_top(const HfkRanks& hfk, std::optional<bool> fibered, std::optional<int64_t> chi, int n) {
    std::string rule = "fibered-top";
    if (!fibered || !*fibered) return make(rule, Verdict::Inapplicable, "not declared fibered");
    if (!chi) return make(rule, Verdict::Inapplicable, "Euler characteristic not declared");
    HalfInt top = HalfInt::from_doubled(n - *chi);
    auto by_a = hfk_by_alexander(hfk);
    for (auto& [a, r] : by_a)
        if (a > top) return make(rule, Verdict::Fail, "support at A=" + a.str() + " above (n-chi)/2=" + top.str());
    int64_t r = by_a.count(top) ? by_a[top] : 0;
    if (r != 1) return make(rule, Verdict::Fail, "rank " + std::to_string(r) + " at A=" + top.str());
    return make(rule, Verdict::Pass, "rank 1 at A=" + top.str());
}

ConstraintReport check_braid_axis(const BigradedModule& m, int component, int n) {
    std::string rule = "braid-axis." + std::to_string(component);
    if (m.empty()) return make(rule, Verdict::Fail, "empty module");
    auto lines = line_ranks(m, component);
    auto [amax, r] = *lines.rbegin();
    ConstraintReport rep = make(rule, Verdict::Pass, "rank " + std::to_string(r) + " at max A_" + std::to_string(component) + "=" + amax.str());
    rep.flag = r == pow2(n - 1);
    if (!rep.flag) rep.verdict = Verdict::Fail;
    return rep;
}

HalfInt loss_alexander_grading(const LegendrianData& ld) {
    int64_t sum = 0;
    for (size_t i = 0; i < ld.tb.size(); ++i)
        sum += ld.tb[i] + ld.rot.at(i) + ld.cd.total_linking(static_cast<int>(i) + 1);
    return HalfInt::from_doubled(sum);
}

ConstraintReport check_loss_bound_at(const HfkRanks& hfk, HalfInt a, int n) {
    std::string rule = "loss-bound";
    auto by_a = hfk_by_alexander(hfk);
    auto at = [&](HalfInt x) { return by_a.count(x) ? by_a[x] : int64_t(0); };
    if (at(a) == 0) return make(rule, Verdict::Fail, "no support at the LOSS grading A=" + a.str());
    int64_t s = at(a - HalfInt(1)) + at(a + HalfInt(1));
    std::string w = "rank(A-1)+rank(A+1)=" + std::to_string(s) + " at A=" + a.str() + ", n=" + std::to_string(n);
    return make(rule, s >= n ? Verdict::Pass : Verdict::Fail, w);
}

ConstraintReport check_loss_bound(const HfkRanks& hfk, const LegendrianData& ld, int n) {
    return check_loss_bound_at(hfk, loss_alexander_grading(ld), n);
}

namespace {

ConstraintReport alexander_at_one(const HfkRanks& hfk, int n) {
    std::string rule = "parity.alexander";
    if (n < 2) return make(rule, Verdict::Inapplicable, "knot");
    auto d = alexander_from_hfk(hfk, n);
    if (!d) return make(rule, Verdict::Fail, "graded Euler characteristic not divisible by (t^{1/2}-t^{-1/2})^{n-1}");
    Rational v = d->evaluate_at_one();
    if (v != 0) return make(rule, Verdict::Fail, "Delta(1) = " + rational_to_string(v));
    return make(rule, Verdict::Pass, "Delta(1) = 0");
}

ConstraintReport odd_rank_hfk(const HfkRanks& hfk, int n) {
    std::string rule = "parity.odd-rank";
    if (n < 2) return make(rule, Verdict::Inapplicable, "knot");
    int64_t total = hfk_total(hfk);
    for (auto& [a, r] : hfk_by_alexander(hfk))
        if (r % 2 && total < pow2(n))
            return make(rule, Verdict::Fail, "odd rank at A=" + a.str() + " but total " + std::to_string(total) + " < 2^" + std::to_string(n));
    return make(rule, Verdict::Pass);
}

ConstraintReport unlink_pattern(bool single, int64_t total, int n) {
    ConstraintReport r = make("parity.unlink", Verdict::Pass);
    if (single) {
        r.flag = true;
        r.witness = "supported in a single Alexander grading: unlink";
    } else if (n >= 2 && total == pow2(n - 1)) {
        r.flag = true;
        r.witness = "rank 2^{n-1} = " + std::to_string(total) + ": unlink";
    }
    return r;
}

}  // namespace

ParityReports check_parity_rules(const BigradedModule& m, const ComponentData& cd) {
    ParityReports out;
    int n = cd.n_components;
    out.hyperplanes = make("parity.hyperplanes", Verdict::Pass);
    HalfInt coset = half(cd.linking(1, 2));
    for (int i = 1; i <= 2 && out.hyperplanes.verdict == Verdict::Pass; ++i)
        for (auto& [a, r] : line_ranks(m, i)) {
            if (!(a - coset).is_integer()) {
                out.hyperplanes = make("parity.hyperplanes", Verdict::Fail, "A_" + std::to_string(i) + "=" + a.str() + " outside Z + lk/2");
                break;
            }
            if (r % 2) {
                out.hyperplanes = make("parity.hyperplanes", Verdict::Fail,
                                       "odd rank " + std::to_string(r) + " in hyperplane A_" + std::to_string(i) + "=" + a.str());
                break;
            }
        }
    out.odd_rank = make("parity.odd-rank", Verdict::Pass);
    std::map<std::pair<HalfInt, HalfInt>, int64_t> at;
    for (auto& [g, r] : m.ranks) at[{g.a1, g.a2}] += r;
    for (auto& [p, r] : at)
        if (r % 2) {
            int64_t need = pow2(n) + (r - 1);
            if (m.total() < need) {
                out.odd_rank = make("parity.odd-rank", Verdict::Fail,
                                    "rank " + std::to_string(r) + " at " + gstr(p.first, p.second) + " forces total >= " + std::to_string(need));
                break;
            }
        }
    out.alexander_at_one = alexander_at_one(project_to_hfk(m, n), n);
    out.unlink = unlink_pattern(at.size() == 1, m.total(), n);
    return out;
}

ParityReports check_parity_rules_hfk(const HfkRanks& hfk, int n) {
    ParityReports out;
    out.hyperplanes = make("parity.hyperplanes", Verdict::Inapplicable, "needs multi-graded input");
    out.odd_rank = odd_rank_hfk(hfk, n);
    out.alexander_at_one = alexander_at_one(hfk, n);
    out.unlink = unlink_pattern(hfk_by_alexander(hfk).size() == 1, hfk_total(hfk), n);
    if (n < 2) out.unlink.flag = out.unlink.flag && hfk_total(hfk) == 1;
    return out;
}

ConstraintReport check_braid_polytope(const BigradedModule& m, const ComponentData& cd, std::optional<int> axis) {
    std::string rule = "braid-polytope";
    if (!axis) return make(rule, Verdict::Inapplicable, "no braid axis declared");
    int64_t lk = cd.linking(1, 2);
    if (lk <= 1 && lk >= -1) return make(rule, Verdict::Inapplicable, "|lk| <= 1: Hopf link");
    if (static_cast<size_t>(*axis) <= cd.unknotted.size() && !cd.unknotted[*axis - 1])
        return make(rule, Verdict::Inapplicable, "axis component not unknotted");
    int other = 3 - *axis;
    try {
        auto s = dual_thurston_axis_slice(m, other);
        return make(rule, s.strictly_inside_unit() ? Verdict::Pass : Verdict::Fail, "axis " + std::to_string(*axis) + ": dual Thurston slice on " + s.str());
    } catch (const std::invalid_argument& e) {
        return make(rule, Verdict::Fail, e.what());
    }
}

std::map<HalfInt, RankInterval> exact_triangle_bounds(const HfkRanks& a, const HfkRanks& b, EulerRelation rel) {
    auto euler = [](const HfkRanks& h) {
        std::map<HalfInt, int64_t> e;
        for (auto& [k, r] : h) e[k.first] += maslov_sign(k.second) * r;
        return e;
    };
    auto ra = hfk_by_alexander(a), rb = hfk_by_alexander(b);
    auto ea = euler(a), eb = euler(b);
    std::set<HalfInt> keys;
    for (auto& [k, r] : ra) keys.insert(k);
    for (auto& [k, r] : rb) keys.insert(k);
    std::map<HalfInt, RankInterval> out;
    for (auto k : keys) {
        int64_t x = ra[k], y = rb[k];
        RankInterval iv{std::abs(x - y), x + y, static_cast<int>((x + y) % 2)};
        if (rel != EulerRelation::None) {
            int64_t c = rel == EulerRelation::Sum ? ea[k] + eb[k] : ea[k] - eb[k];
            iv.lo = std::max(iv.lo, std::abs(c));
        }
        out[k] = iv;
    }
    return out;
}

const std::vector<std::string>& gauntlet_rule_order() {
    static const std::vector<std::string> order = {"parity", "symmetry", "global-degeneration", "fibered-top",
                                                   "component-degeneration", "braid-axis", "loss-bound", "braid-polytope"};
    return order;
}

std::vector<std::string> parse_rule_list(const std::string& spec) {
    if (spec == "all") return gauntlet_rule_order();
    std::vector<std::string> out;
    if (spec.empty() || spec == "none") return out;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto& order = gauntlet_rule_order();
        if (std::find(order.begin(), order.end(), item) == order.end()) throw std::invalid_argument("unknown rule: " + item);
        out.push_back(item);
    }
    return out;
}

std::vector<ConstraintReport> run_rules(const BigradedModule& m, const Hypotheses& h, const std::vector<std::string>& rules) {
    std::vector<ConstraintReport> out;
    int n = h.cd.n_components;
    auto want = [&](const std::string& r) { return std::find(rules.begin(), rules.end(), r) != rules.end(); };
    std::vector<int> axes;
    if (!h.braid_axis && h.infer_braid_axis && !m.empty())
        for (int i = 1; i <= std::min(n, 2); ++i)
            if (check_braid_axis(m, i, n).flag) axes.push_back(i);
    for (auto& rule : gauntlet_rule_order()) {
        if (!want(rule)) continue;
        if (rule == "parity") {
            auto p = check_parity_rules(m, h.cd);
            if (h.exclude_unlinks && p.unlink.flag) p.unlink.verdict = Verdict::Fail;
            for (auto& r : p.all()) out.push_back(r);
        } else if (rule == "symmetry") {
            out.push_back(check_symmetry(m, h.exchange_symmetric));
        } else if (rule == "global-degeneration") {
            out.push_back(check_global_degeneration(project_to_hfk(m, n), n));
        } else if (rule == "fibered-top") {
            out.push_back(check_fibered_top(project_to_hfk(m, n), h.fibered, h.chi, n));
        } else if (rule == "component-degeneration") {
            if (h.component_hfk.empty()) out.push_back(make("component-degeneration", Verdict::Inapplicable, "no component data"));
            for (size_t k = 0; k < h.component_hfk.size() && k < 2; ++k)
                out.push_back(check_component_degeneration(m, h.cd, 2 - static_cast<int>(k), h.component_hfk[k]));
        } else if (rule == "braid-axis") {
            if (h.braid_axis) out.push_back(check_braid_axis(m, *h.braid_axis, n));
            else if (axes.empty()) out.push_back(make("braid-axis", Verdict::Inapplicable, "no braid axis declared or detected"));
            for (int a : axes) {
                auto r = check_braid_axis(m, a, n);
                r.verdict = Verdict::Pass;
                out.push_back(r);
            }
        } else if (rule == "loss-bound") {
            if (!h.legendrian) out.push_back(make("loss-bound", Verdict::Inapplicable, "no Legendrian data"));
            else out.push_back(check_loss_bound(project_to_hfk(m, n), *h.legendrian, n));
        } else if (rule == "braid-polytope") {
            if (h.braid_axis || axes.empty()) out.push_back(check_braid_polytope(m, h.cd, h.braid_axis));
            for (int a : axes) out.push_back(check_braid_polytope(m, h.cd, a));
        }
    }
    return out;
}

}  // namespace ff
