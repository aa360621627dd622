#include "floerforge/botany.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

namespace ff {

SearchWindow SearchWindow::symmetric(HalfInt bound, int budget, int64_t lk) {
    SearchWindow w;
    w.a1_lo = w.a2_lo = -bound;
    w.a1_hi = w.a2_hi = bound;
    w.budget = budget;
    w.lk = lk;
    return w;
}

SearchWindow SearchWindow::parse(const std::string& s, int budget, int64_t lk) {
    auto comma = s.find(',');
    if (comma == std::string::npos) return symmetric(HalfInt::parse(s), budget, lk);
    auto range = [](const std::string& r) {
        auto colon = r.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("window range needs lo:hi, got '" + r + "'");
        return std::pair{HalfInt::parse(r.substr(0, colon)), HalfInt::parse(r.substr(colon + 1))};
    };
    SearchWindow w;
    std::tie(w.a1_lo, w.a1_hi) = range(s.substr(0, comma));
    std::tie(w.a2_lo, w.a2_hi) = range(s.substr(comma + 1));
    w.budget = budget;
    w.lk = lk;
    return w;
}

bool SearchWindow::in_coset(HalfInt a) const {
    // a - lk/2 must be an integer
    return ((a.doubled() - lk) % 2 + 2) % 2 == 0;
}

bool SearchWindow::contains(const Grading& g) const {
    return g.a1 >= a1_lo && g.a1 <= a1_hi && g.a2 >= a2_lo && g.a2 <= a2_hi && g.maslov >= maslov_lo &&
           g.maslov <= maslov_hi && in_coset(g.a1) && in_coset(g.a2);
}

void SearchWindow::check() const {
    if (a1_lo > a1_hi || a2_lo > a2_hi) throw std::invalid_argument("empty search window");
    if (budget < 0 || budget > 24) throw std::invalid_argument("rank budget must lie in [0, 24]");
}

std::optional<ConstraintReport> Candidate::first_failure() const {
    for (auto& r : reports)
        if (r.failed()) return r;
    return std::nullopt;
}

namespace {

BigradedModule module_of_summand(const SummandDescriptor& s) {
    BigradedModule m;
    for (auto& g : s.gradings()) m.add(g, 1);
    return m;
}

Grading min_grading(const BigradedModule& m) { return m.ranks.begin()->first; }

bool single_delta(const SummandDescriptor& s, HalfInt* delta = nullptr) {
    auto gs = s.gradings();
    for (auto& g : gs)
        if (g.delta() != gs.front().delta()) return false;
    if (delta) *delta = gs.front().delta();
    return true;
}

std::map<HalfInt, int64_t> staircase_homology(const SummandDescriptor& s) {
    if (s.kind == SummandKind::X || s.kind == SummandKind::Y) return {{s.d, 1}};
    return {};
}

Candidate make_candidate(Decomposition d, std::string label = "") {
    d.normalize();
    Candidate c;
    c.module = module_of(d);
    c.decomposition = std::move(d);
    c.label = std::move(label);
    return c;
}

void sort_candidates(std::vector<Candidate>& cs) {
    std::stable_sort(cs.begin(), cs.end(), [](const Candidate& a, const Candidate& b) {
        return a.decomposition.strings() < b.decomposition.strings();
    });
}

}  // namespace

std::optional<SummandDescriptor> symmetric_partner(const SummandDescriptor& s) {
    BigradedModule img = symmetry_transform(module_of_summand(s));
    Grading lo = min_grading(img);
    for (SummandKind k : {SummandKind::B, SummandKind::V, SummandKind::H, SummandKind::X, SummandKind::Y}) {
        if ((k == SummandKind::B) != (s.kind == SummandKind::B)) continue;
        if (k == SummandKind::X && s.l == 0) continue;
        if ((k == SummandKind::V || k == SummandKind::H) && s.l < 1) continue;
        SummandDescriptor t{k, HalfInt(0), k == SummandKind::B ? 0 : s.l, HalfInt(0), HalfInt(0)};
        if (k == SummandKind::X || k == SummandKind::Y) t.i = t.j = half(s.l % 2);
        Grading base = min_grading(module_of_summand(t));
        SummandDescriptor cand = t.translated(lo.a1 - base.a1, lo.a2 - base.a2, lo.maslov - base.maslov);
        if (module_of_summand(cand) == img) return cand;
    }
    return std::nullopt;
}

std::vector<Candidate> enumerate_candidates(const SearchWindow& w, const Decomposition& fixed, const FreeTemplate& t) {
    w.check();
    if (fixed.rank() > w.budget) throw TruncationError("fixed part has rank " + std::to_string(fixed.rank()) + " above the budget");
    auto inside = [&](const SummandDescriptor& s) {
        for (auto& g : s.gradings())
            if (!w.contains(g)) return false;
        return true;
    };
    std::vector<Candidate> out;
    // x only matters while the template stays inside the window
    int reach = static_cast<int>((w.a1_hi - w.a1_lo).floor() + (w.a2_hi - w.a2_lo).floor()) + 4;
    for (int x = -reach; x <= reach; ++x) {
        SummandDescriptor s{t.kind, t.d, t.l, t.i0 + HalfInt(t.ci * x), t.j0 + HalfInt(t.cj * x)};
        if (!inside(s)) continue;
        Decomposition d = fixed;
        d.summands.push_back(s);
        auto p = symmetric_partner(s);
        if (!p || !inside(*p)) continue;
        if (!(module_of_summand(*p) == module_of_summand(s))) d.summands.push_back(*p);
        if (d.rank() > w.budget)
            throw TruncationError("completion x=" + std::to_string(x) + " has rank " + std::to_string(d.rank()) + " above the budget");
        auto c = make_candidate(d, "x=" + std::to_string(x));
        if (symmetry_transform(c.module) == c.module) out.push_back(std::move(c));
    }
    if (out.empty()) {
        auto c = make_candidate(fixed, "fixed");
        if (symmetry_transform(c.module) == c.module) out.push_back(std::move(c));
    }
    sort_candidates(out);
    return out;
}

std::vector<SummandDescriptor> vocabulary(const SearchWindow& w, const EnumOptions& o) {
    std::vector<SummandDescriptor> out;
    std::set<std::string> seen;
    HalfInt mlo = w.maslov_lo, mhi = w.maslov_hi;
    if (o.target_hfk && !o.target_hfk->empty()) {
        HalfInt shift = HalfInt::from_doubled(o.n_components - 1);
        mlo = std::max(mlo, o.target_hfk->begin()->first.second - shift);
        mhi = mlo;
        for (auto& [k, r] : *o.target_hfk) {
            mlo = std::min(mlo, k.second - shift);
            mhi = std::max(mhi, k.second - shift);
        }
        mlo = std::max(mlo, w.maslov_lo);
        mhi = std::min(mhi, w.maslov_hi);
    }
    auto fits_target = [&](const SummandDescriptor& s) {
        if (!o.target_hfk) return true;
        auto h = project_to_hfk(module_of_summand(s), o.n_components);
        for (auto& [k, r] : h) {
            auto it = o.target_hfk->find(k);
            if (it == o.target_hfk->end() || it->second < r) return false;
        }
        return true;
    };
    for (SummandKind k : o.kinds) {
        int lmin = 0, lmax = 0;
        if (k == SummandKind::V || k == SummandKind::H) lmin = 1, lmax = o.thin_only ? 1 : o.max_l;
        if (k == SummandKind::X) lmin = 1, lmax = o.max_l;
        if (k == SummandKind::Y) lmin = 0, lmax = o.max_l;
        for (int l = lmin; l <= lmax; ++l) {
            HalfInt pad = HalfInt(l + 1);
            for (HalfInt i = w.a1_lo - pad; i <= w.a1_hi + pad; i += half(1))
                for (HalfInt j = w.a2_lo - pad; j <= w.a2_hi + pad; j += half(1))
                    for (HalfInt d = mlo.floor() - 4; d <= mhi + HalfInt(4); d += HalfInt(1)) {
                        SummandDescriptor s{k, d, l, i, j};
                        auto gs = s.gradings();
                        bool ok = true;
                        for (auto& g : gs) ok = ok && w.contains(g) && g.maslov >= mlo && g.maslov <= mhi;
                        if (!ok) continue;
                        HalfInt delta;
                        bool thin = single_delta(s, &delta);
                        if (o.thin_only && !thin) continue;
                        if (o.delta && (!thin || delta != *o.delta)) continue;
                        if (!fits_target(s)) continue;
                        if (o.total_homology) {
                            bool fits = true;
                            for (auto& [m, r] : staircase_homology(s)) {
                                auto it = o.total_homology->find(m);
                                fits = fits && it != o.total_homology->end() && it->second >= r;
                            }
                            if (!fits) continue;
                        }
                        if (seen.insert(s.str()).second) out.push_back(s);
                    }
        }
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.str() < b.str(); });
    return out;
}

namespace {

struct Search {
    const SearchWindow& w;
    const EnumOptions& o;
    std::vector<SummandDescriptor> vocab;
    std::vector<HfkRanks> vocab_hfk;
    std::vector<std::map<HalfInt, int64_t>> vocab_hom;
    std::vector<int> vocab_rank;
    std::vector<std::optional<HalfInt>> vocab_delta;
    std::vector<std::array<DegenerationRanks, 2>> vocab_deg;
    std::array<DegenerationRanks, 2> remaining_deg;
    Decomposition fixed;
    HfkRanks remaining_hfk;
    std::map<HalfInt, int64_t> remaining_hom;
    std::optional<HalfInt> delta;
    std::vector<size_t> chosen;
    std::vector<Candidate> out;
    size_t nodes = 0;

    template <class K>
    bool take(const std::map<K, int64_t>& need, std::map<K, int64_t>& have, int sign) {
        for (auto& [k, r] : need) have[k] -= sign * r;
        if (sign > 0)
            for (auto& [k, r] : need)
                if (have[k] < 0) return false;
        return true;
    }

    bool take_hfk(const HfkRanks& need, int sign) {
        bool ok = true;
        for (auto& [k, r] : need) {
            remaining_hfk[k] -= sign * r;
            if (remaining_hfk[k] < 0) ok = false;
        }
        return ok;
    }

    void leaf() {
        if (o.target_hfk)
            for (auto& [k, r] : remaining_hfk)
                if (r) return;
        if (o.total_homology)
            for (auto& [k, r] : remaining_hom)
                if (r) return;
        if (o.degeneration)
            for (auto& side : remaining_deg)
                for (auto& [k, r] : side)
                    if (r) return;
        Decomposition d = fixed;
        for (size_t i : chosen) d.summands.push_back(vocab[i]);
        auto c = make_candidate(d);
        if (o.require_symmetric && !(symmetry_transform(c.module) == c.module)) return;
        if (out.size() >= o.max_candidates)
            throw TruncationError("more than " + std::to_string(o.max_candidates) + " candidates; narrow the window");
        out.push_back(std::move(c));
    }

    void dfs(size_t start, int remaining) {
        if (++nodes > o.max_nodes) throw TruncationError("search exceeded " + std::to_string(o.max_nodes) + " nodes");
        if (remaining == 0) {
            leaf();
            return;
        }
        for (size_t i = start; i < vocab.size(); ++i) {
            if (vocab_rank[i] > remaining) continue;
            if (o.thin_only && delta && vocab_delta[i] != delta) continue;
            bool ok = take_hfk(vocab_hfk[i], 1);
            ok = take(vocab_hom[i], remaining_hom, 1) && ok;
            for (int k = 0; k < 2; ++k) ok = take(vocab_deg[i][k], remaining_deg[k], 1) && ok;
            auto saved = delta;
            if (o.thin_only && !delta) delta = vocab_delta[i];
            if (ok) {
                chosen.push_back(i);
                dfs(i, remaining - vocab_rank[i]);
                chosen.pop_back();
            }
            delta = saved;
            take_hfk(vocab_hfk[i], -1);
            take(vocab_hom[i], remaining_hom, -1);
            for (int k = 0; k < 2; ++k) take(vocab_deg[i][k], remaining_deg[k], -1);
        }
    }
};

}  // namespace

std::vector<Candidate> enumerate_completions(const SearchWindow& w, const Decomposition& fixed, const EnumOptions& o) {
    w.check();
    int remaining = w.budget - fixed.rank();
    if (remaining < 0) throw TruncationError("fixed part has rank " + std::to_string(fixed.rank()) + " above the budget");
    Search s{w, o};
    s.fixed = fixed;
    s.vocab = vocabulary(w, o);
    for (auto& v : s.vocab) {
        s.vocab_hfk.push_back(o.target_hfk ? project_to_hfk(module_of_summand(v), o.n_components) : HfkRanks{});
        s.vocab_hom.push_back(o.total_homology ? staircase_homology(v) : std::map<HalfInt, int64_t>{});
        s.vocab_rank.push_back(v.rank());
        std::array<DegenerationRanks, 2> deg;
        if (o.degeneration)
            for (int k = 0; k < 2; ++k) deg[k] = degeneration_homology(Decomposition{{v}}, 2 - k);
        s.vocab_deg.push_back(std::move(deg));
        HalfInt dl;
        s.vocab_delta.push_back(single_delta(v, &dl) ? std::optional<HalfInt>(dl) : std::nullopt);
    }
    if (o.target_hfk) s.remaining_hfk = *o.target_hfk;
    if (o.total_homology) s.remaining_hom = *o.total_homology;
    if (o.degeneration) {
        for (int k = 0; k < 2; ++k) {
            s.remaining_deg[k] = degeneration_target(o.degeneration->component_hfk.at(k), o.degeneration->cd.linking(1, 2));
            if (!fixed.summands.empty() && !s.take(degeneration_homology(fixed, 2 - k), s.remaining_deg[k], 1)) return {};
        }
    }
    BigradedModule fm = module_of(fixed);
    if (o.target_hfk && !s.take_hfk(project_to_hfk(fm, o.n_components), 1)) return {};
    for (auto& f : fixed.summands) {
        if (o.total_homology && !s.take(staircase_homology(f), s.remaining_hom, 1)) return {};
        HalfInt dl;
        if (o.thin_only) {
            if (!single_delta(f, &dl) || (s.delta && *s.delta != dl)) return {};
            s.delta = dl;
        }
    }
    if (o.delta) {
        if (s.delta && *s.delta != *o.delta) return {};
        s.delta = o.delta;
    }
    s.dfs(0, remaining);
    sort_candidates(s.out);
    return std::move(s.out);
}

namespace {

void parallel_for(size_t n, int threads, const std::function<void(size_t)>& f) {
    if (threads <= 1 || n < 2) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex mu;
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (size_t i; (i = next++) < n;) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

GauntletResult split_results(std::vector<Candidate> cands) {
    GauntletResult g;
    for (auto& c : cands) (c.first_failure() ? g.eliminated : g.survivors).push_back(c);
    g.all = std::move(cands);
    return g;
}

}  // namespace

DegenerationRanks degeneration_homology(const Decomposition& d, int deleted) {
    bool keep_first = deleted == 2;
    auto a = [&](const Grading& g) { return keep_first ? g.a1 : g.a2; };
    auto h = homology_by_blocks(
        realize(d, Field::GF2), [&](const Grading& g) { return Grading{a(g), HalfInt(0), g.maslov}; },
        [&](const Grading& s, const Grading& t) { return a(s) == a(t); });
    DegenerationRanks out;
    for (auto& [g, r] : h) out[{g.a1, g.maslov}] += r;
    return out;
}

DegenerationRanks degeneration_target(const HfkRanks& kept_hfk, int64_t lk) {
    DegenerationRanks want;
    HalfInt shift = half(lk);
    for (auto& [k, r] : kept_hfk) {
        want[{k.first + shift, k.second}] += r;
        want[{k.first + shift, k.second - HalfInt(1)}] += r;
    }
    return want;
}

ConstraintReport check_complex_degeneration(const Decomposition& d, const ComponentData& cd, int deleted,
                                            const HfkRanks& kept_hfk) {
    ConstraintReport rep;
    rep.rule = "complex-degeneration." + std::to_string(deleted);
    if (deleted != 1 && deleted != 2) {
        rep.verdict = Verdict::Inapplicable;
        rep.witness = "only two-component complexes";
        return rep;
    }
    auto have = degeneration_homology(d, deleted);
    auto want = degeneration_target(kept_hfk, cd.linking(1, 2));
    std::string keep = "A_" + std::to_string(3 - deleted);
    for (auto* side : {&have, &want})
        for (auto& [k, r] : *side) {
            int64_t x = have.count(k) ? have.at(k) : 0, y = want.count(k) ? want.at(k) : 0;
            if (x != y) {
                rep.verdict = Verdict::Fail;
                rep.witness = keep + "=" + k.first.str() + ", M=" + k.second.str() + ": homology rank " + std::to_string(x) +
                              " but HFK x V has " + std::to_string(y);
                return rep;
            }
        }
    rep.witness = keep + "-preserving homology is HFK x V shifted by " + half(cd.linking(1, 2)).str();
    return rep;
}

GauntletResult run_gauntlet(std::vector<Candidate> cands, const std::vector<std::string>& rules, const Hypotheses& h,
                            int threads) {
    return run_gauntlet(std::move(cands), rules, [&](const Candidate&) { return std::vector<Hypotheses>{h}; }, threads);
}

GauntletResult run_gauntlet(std::vector<Candidate> cands, const std::vector<std::string>& rules, const HypothesesFor& hs,
                            int threads) {
    parallel_for(cands.size(), threads, [&](size_t i) {
        auto& c = cands[i];
        std::vector<ConstraintReport> first;
        bool have_first = false;
        bool exact = std::find(rules.begin(), rules.end(), "complex-degeneration") != rules.end();
        for (auto& h : hs(c)) {
            auto reps = run_rules(c.module, h, rules);
            if (exact)
                for (size_t k = 0; k < h.component_hfk.size() && k < 2 && h.cd.n_components == 2; ++k)
                    reps.push_back(check_complex_degeneration(c.decomposition, h.cd, 2 - static_cast<int>(k), h.component_hfk[k]));
            bool failed = std::any_of(reps.begin(), reps.end(), [](auto& r) { return r.failed(); });
            if (!failed) {
                c.reports = std::move(reps);
                return;
            }
            if (!have_first) first = std::move(reps), have_first = true;
        }
        c.reports = std::move(first);
    });
    return split_results(std::move(cands));
}

namespace {

HfkRanks unknot_hfk() { return {{{HalfInt(0), HalfInt(0)}, 1}}; }

Hypotheses two_component(int64_t lk, bool unknots) {
    Hypotheses h;
    h.cd.n_components = 2;
    h.cd.set_linking(1, 2, lk);
    h.cd.unknotted = {unknots, unknots};
    if (unknots) h.component_hfk = {unknot_hfk(), unknot_hfk()};
    return h;
}

}  // namespace

ThinClassification classify_rank_thin(int rank, const SearchWindow& w0, int threads) {
    SearchWindow w = w0;
    w.budget = rank;
    // a component knot K has HFK(K) x V inside the module, so rank(HFK(K)) <= rank/2;
    // below 3 that forces rank 1, the unknot
    bool unknots = rank / 2 < 3;
    HalfInt reach = std::max({-w.a1_lo, w.a1_hi, -w.a2_lo, w.a2_hi});
    int64_t max_lk = reach.floor() * 2 + 2;
    std::vector<int64_t> lks;
    for (int64_t lk = -max_lk; lk <= max_lk; ++lk)
        if (((lk - w.lk) % 2 + 2) % 2 == 0) lks.push_back(lk);

    EnumOptions o;
    o.thin_only = true;
    o.max_l = std::max(1, rank);
    o.total_homology = std::map<HalfInt, int64_t>{{HalfInt(0), 1}, {HalfInt(-1), 1}};
    std::map<std::vector<std::string>, Candidate> found;
    auto collect = [&](std::vector<Candidate> cs) {
        for (auto& c : cs) found.emplace(c.decomposition.strings(), std::move(c));
    };
    if (unknots) {
        for (int64_t lk : lks) {
            o.degeneration = two_component(lk, true);
            collect(enumerate_completions(w, Decomposition{}, o));
        }
    } else {
        collect(enumerate_completions(w, Decomposition{}, o));
    }
    std::vector<Candidate> cands;
    for (auto& [k, c] : found) cands.push_back(std::move(c));

    ThinClassification out;
    out.enumerated = cands.size();
    auto hyps = [&](const Candidate&) {
        std::vector<Hypotheses> hs;
        for (int64_t lk : lks) hs.push_back(two_component(lk, unknots));
        return hs;
    };
    std::vector<std::string> rules = {"parity", "symmetry", "global-degeneration", "component-degeneration"};
    if (unknots) rules.push_back("complex-degeneration");
    auto g = run_gauntlet(std::move(cands), rules, hyps, threads);
    for (auto& c : g.survivors) {
        bool unlink = std::any_of(c.reports.begin(), c.reports.end(), [](auto& r) { return r.rule == "parity.unlink" && r.flag; });
        (unlink ? out.unlink_flagged : out.survivors).push_back(c);
    }
    out.eliminated = std::move(g.eliminated);

    // Modules in a single Alexander grading are not thin, so the search above never sees them.
    // Symmetry pins that grading to the origin; there the rank 2^{n-1} unlink pattern
    // F_0 x V^{n-1} is tried as an n-component module.
    int n = 1;
    while ((int64_t{1} << n) <= rank) ++n;
    HalfInt zero(0);
    if ((int64_t{1} << (n - 1)) == rank && n >= 2 && w.contains({zero, zero, zero})) {
        SearchWindow origin = w;
        origin.a1_lo = origin.a1_hi = origin.a2_lo = origin.a2_hi = zero;
        EnumOptions so;
        so.kinds = {SummandKind::Y};
        so.max_l = 0;
        std::map<HalfInt, int64_t> hom;
        int64_t binom = 1;  // C(n-1, k)
        for (int k = 0; k < n; ++k) {
            hom[HalfInt(-k)] = binom;
            binom = binom * (n - 1 - k) / (k + 1);
        }
        so.total_homology = hom;
        Hypotheses h;
        h.cd.n_components = n;
        auto split = run_gauntlet(enumerate_completions(origin, Decomposition{}, so), {"parity", "symmetry", "global-degeneration"}, h, threads);
        out.enumerated += split.all.size();
        for (auto& c : split.survivors) {
            bool unlink = std::any_of(c.reports.begin(), c.reports.end(), [](auto& r) { return r.rule == "parity.unlink" && r.flag; });
            (unlink ? out.unlink_flagged : out.survivors).push_back(c);
        }
        for (auto& c : split.eliminated) out.eliminated.push_back(c);
    }
    return out;
}

DetectionReport detect_t22n(int n, int threads, const Catalog& cat) {
    DetectionReport rep;
    rep.link = "T(2," + std::to_string(2 * n) + ")";
    auto& entry = cat.lookup(rep.link);
    HfkRanks target = *entry.hfk;

    // component count from the collapsed gradings alone
    HalfInt top = target.begin()->first.second;
    for (auto& [k, r] : target) top = std::max(top, k.second);
    int ncomp = 0;
    for (int c = 1; c <= 8; ++c) {
        HfkRanks probe = target;
        if (!check_global_degeneration(probe, c).failed() && HalfInt::from_doubled(c - 1) == top) ncomp = c;
    }
    rep.n_components = ncomp;
    rep.log.push_back("global degeneration: Maslov coset and top grading " + top.str() + " give " + std::to_string(ncomp) + " components");
    if (ncomp != 2) return rep;

    // the argument supplies: linking number n, unknotted components, and the braid-axis bound |A_i| <= n/2
    int64_t lk = n;
    SearchWindow w = SearchWindow::symmetric(half(n), static_cast<int>(hfk_total(target)), lk);
    EnumOptions o;
    o.thin_only = true;
    o.target_hfk = target;
    o.max_l = 2 * n;
    o.total_homology = std::map<HalfInt, int64_t>{{HalfInt(0), 1}, {HalfInt(-1), 1}};
    Hypotheses h = two_component(lk, true);
    h.infer_braid_axis = true;
    o.degeneration = h;
    auto all = enumerate_completions(w, Decomposition{}, o);
    rep.log.push_back(std::to_string(all.size()) + " symmetric thin completions of the HFK pattern degenerating to unknots");

    auto lemma = run_gauntlet(all, {"parity", "component-degeneration", "complex-degeneration"}, h, threads);
    rep.candidates = lemma.survivors;
    rep.log.push_back(std::to_string(rep.candidates.size()) + " candidates pass the parity and degeneration rules");
    if (rep.candidates.empty()) return rep;

    // skeleton: summands present in every candidate
    std::map<std::string, int> common;
    for (auto& s : rep.candidates.front().decomposition.strings()) common[s]++;
    for (auto& c : rep.candidates) {
        std::map<std::string, int> here;
        for (auto& s : c.decomposition.strings()) here[s]++;
        for (auto& [s, k] : common) k = std::min(k, here[s]);
    }
    for (auto& [s, k] : common)
        for (int i = 0; i < k; ++i) rep.skeleton.summands.push_back(SummandDescriptor::parse(s));
    rep.skeleton.normalize();
    for (auto& c : rep.candidates) {
        std::map<std::string, int> rest;
        for (auto& s : c.decomposition.strings()) rest[s]++;
        for (auto& [s, k] : common) rest[s] -= k;
        std::string label;
        for (auto& [s, k] : rest)
            for (int i = 0; i < k; ++i) label += (label.empty() ? "" : " + ") + s;
        c.label = label;
    }

    auto g = run_gauntlet(rep.candidates, {"parity", "symmetry", "component-degeneration", "complex-degeneration", "braid-axis", "braid-polytope"}, h, threads);
    rep.candidates = g.all;
    rep.survivors = g.survivors;
    rep.log.push_back(std::to_string(rep.survivors.size()) + " survivor(s) after the braid-axis and braid-polytope rules");
    rep.matches_catalog = rep.survivors.size() == 1 && entry.module && rep.survivors.front().module == *entry.module;
    return rep;
}

json candidate_to_json(const Candidate& c) {
    json j;
    j["summands"] = c.decomposition.strings();
    if (!c.label.empty()) j["label"] = c.label;
    j["rank"] = c.module.total();
    j["reports"] = reports_to_json(c.reports);
    auto f = c.first_failure();
    j["eliminated_by"] = f ? json(f->rule) : json(nullptr);
    return j;
}

json gauntlet_to_json(const GauntletResult& g) {
    json j;
    j["candidates"] = json::array();
    for (auto& c : g.all) j["candidates"].push_back(candidate_to_json(c));
    j["survivors"] = g.survivors.size();
    j["eliminated"] = g.eliminated.size();
    return j;
}

BruteForceResult brute_force_thin(int bound, int max_rank) {
    BruteForceResult out;
    std::vector<std::pair<int, int>> pos;
    for (int x = -bound; x <= bound; ++x)
        for (int y = -bound; y <= bound; ++y) pos.push_back({x, y});
    std::vector<int> count(pos.size(), 0);

    auto run = [&](const std::vector<int>& cnt) {
        std::vector<std::pair<int, int>> gens;
        for (size_t p = 0; p < pos.size(); ++p)
            for (int k = 0; k < cnt[p]; ++k) gens.push_back(pos[p]);
        size_t g = gens.size();
        std::vector<std::pair<size_t, size_t>> slots;  // possible unit arrows
        for (size_t a = 0; a < g; ++a)
            for (size_t b = 0; b < g; ++b) {
                auto [xa, ya] = gens[a];
                auto [xb, yb] = gens[b];
                if ((xb == xa - 1 && yb == ya) || (xb == xa && yb == ya - 1)) slots.push_back({a, b});
            }
        if (slots.size() > 20) throw TruncationError("brute force window too large");
        for (uint32_t mask = 0; mask < (1u << slots.size()); ++mask) {
            // d^2 = 0 over GF(2)
            std::vector<uint32_t> out_of(g, 0);
            for (size_t s = 0; s < slots.size(); ++s)
                if (mask >> s & 1) out_of[slots[s].first] |= 1u << slots[s].second;
            bool ok = true;
            for (size_t a = 0; a < g && ok; ++a) {
                uint32_t twice = 0;
                for (size_t b = 0; b < g; ++b)
                    if (out_of[a] >> b & 1) twice ^= out_of[b];
                ok = twice == 0;
            }
            if (!ok) continue;
            BifilteredComplex c(Field::GF2);
            for (size_t a = 0; a < g; ++a) {
                HalfInt x(gens[a].first), y(gens[a].second);
                c.add_generator("g" + std::to_string(a), {x, y, x + y});
            }
            for (size_t s = 0; s < slots.size(); ++s)
                if (mask >> s & 1) c.add_arrow(slots[s].first, slots[s].second, Rational(1));
            ++out.complexes;
            try {
                out.decompositions.insert(decompose_e2(c).strings());
            } catch (const DecompositionError&) {
                ++out.undecomposable;
            }
        }
    };

    // every multiset of positions with 1..max_rank generators
    std::function<void(size_t, int)> rec = [&](size_t p, int left) {
        if (p == pos.size()) {
            if (left < max_rank) run(count);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            count[p] = k;
            rec(p + 1, left - k);
        }
        count[p] = 0;
    };
    rec(0, max_rank);
    return out;
}

}  // namespace ff
