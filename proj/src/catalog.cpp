#include "floerforge/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "floerforge/constraints.hpp"
#include "floerforge/invariants.hpp"

#ifndef FLOERFORGE_DEFAULT_ASSETS
#define FLOERFORGE_DEFAULT_ASSETS "assets"
#endif

namespace ff {

namespace fs = std::filesystem;

namespace {

HfkRanks read_hfk(const json& arr) {
    HfkRanks h;
    for (auto& e : arr) {
        int64_t r = e.value("rank", int64_t(1));
        if (r) h[{HalfInt::parse(e.at("a").get<std::string>()), HalfInt::parse(e.at("m").get<std::string>())}] += r;
    }
    return h;
}

json write_hfk(const HfkRanks& h) {
    json arr = json::array();
    for (auto it = h.rbegin(); it != h.rend(); ++it)
        arr.push_back({{"a", it->first.first.str()}, {"m", it->first.second.str()}, {"rank", it->second}});
    return arr;
}

HfkRanks hfk_tensor(const HfkRanks& a, const HfkRanks& b) {
    HfkRanks out;
    for (auto& [x, r] : a)
        for (auto& [y, s] : b) out[{x.first + y.first, x.second + y.second}] += r * s;
    return out;
}

// F_{1/2} + F_{-1/2} in Alexander grading 0
HfkRanks split_factor() { return {{{HalfInt(0), half(1)}, 1}, {{HalfInt(0), half(-1)}, 1}}; }

CatalogEntry parse_entry(const json& j) {
    CatalogEntry e;
    e.id = j.at("id").get<std::string>();
    if (j.contains("aliases")) e.aliases = j["aliases"].get<std::vector<std::string>>();
    e.cd.n_components = j.value("components", 1);
    if (e.cd.n_components == 2) e.cd.set_linking(1, 2, j.value("linking", int64_t(0)));
    if (j.contains("unknotted")) e.cd.unknotted = j["unknotted"].get<std::vector<bool>>();
    if (j.contains("chi")) e.chi = j["chi"].get<int64_t>();
    if (j.contains("fibered")) e.fibered = j["fibered"].get<bool>();
    if (j.contains("hfl")) {
        e.hfl = parse_decomposition(j["hfl"].get<std::vector<std::string>>());
        e.module = module_of(*e.hfl);
    }
    if (j.contains("hfk")) e.hfk = read_hfk(j["hfk"]);
    if (j.contains("candidates"))
        for (auto& c : j["candidates"]) e.candidates.push_back(read_hfk(c));
    e.status = j.value("status", std::string("known"));
    if (j.contains("kh")) e.kh = kh_from_json(j["kh"]);
    e.kh_thin = j.value("kh_thin", false);
    e.source = j.value("source", std::string());
    if (j.contains("construct")) e.construct = j["construct"];
    return e;
}

}  // namespace

json entry_to_json(const CatalogEntry& e) {
    json j;
    j["id"] = e.id;
    j["aliases"] = e.aliases;
    j["components"] = e.n();
    if (e.n() == 2) j["linking"] = e.cd.linking(1, 2);
    if (e.chi) j["chi"] = *e.chi;
    if (e.fibered) j["fibered"] = *e.fibered;
    j["status"] = e.status;
    j["source"] = e.source;
    if (e.hfl) j["hfl"] = e.hfl->strings();
    if (e.module) j["module"] = module_to_json(*e.module);
    if (e.hfk) {
        j["hfk"] = write_hfk(*e.hfk);
        j["hfk_rank"] = hfk_total(*e.hfk);
    }
    if (!e.candidates.empty()) {
        j["candidates"] = json::array();
        for (auto& c : e.candidates) j["candidates"].push_back(write_hfk(c));
    }
    if (e.kh) j["kh"] = kh_to_json(*e.kh);
    if (!e.construct.is_null()) j["construct"] = e.construct;
    return j;
}

Catalog Catalog::load(const std::string& dir) {
    if (!fs::is_directory(dir)) throw std::invalid_argument("catalog directory not found: " + dir);
    std::vector<fs::path> files;
    for (auto& p : fs::directory_iterator(dir))
        if (p.path().extension() == ".json") files.push_back(p.path());
    std::sort(files.begin(), files.end());
    Catalog cat;
    for (auto& f : files) {
        std::ifstream in(f);
        json j;
        try {
            in >> j;
            cat.entries_.push_back(parse_entry(j));
        } catch (const std::exception& ex) {
            throw std::invalid_argument("bad catalog file " + f.filename().string() + ": " + ex.what());
        }
    }
    std::sort(cat.entries_.begin(), cat.entries_.end(), [](auto& a, auto& b) { return a.id < b.id; });
    for (size_t i = 0; i < cat.entries_.size(); ++i) {
        auto& e = cat.entries_[i];
        if (!cat.index_.emplace(e.id, i).second) throw std::invalid_argument("duplicate catalog id " + e.id);
        for (auto& a : e.aliases)
            if (!cat.index_.emplace(a, i).second) throw std::invalid_argument("duplicate catalog alias " + a);
    }

    // derived entries, resolved in dependency order
    auto ready = [&](const CatalogEntry& e) { return e.construct.is_null() || e.hfk.has_value(); };
    for (size_t pass = 0; pass <= cat.entries_.size(); ++pass) {
        bool progress = false;
        for (auto& e : cat.entries_) {
            if (ready(e)) continue;
            std::string op = e.construct.at("op").get<std::string>();
            if (op == "unlink") {
                int n = e.construct.at("n").get<int>();
                HfkRanks h{{{HalfInt(0), HalfInt(0)}, 1}};
                for (int k = 1; k < n; ++k) h = hfk_tensor(h, split_factor());
                e.hfk = h;
                if (n == 2) {
                    BigradedModule m;
                    m.add({0, 0, 0}, 1);
                    m.add({0, 0, -1}, 1);
                    e.module = m;
                }
            } else if (op == "split") {
                auto parts = e.construct.at("of").get<std::vector<std::string>>();
                if (parts.size() != 2) throw std::invalid_argument(e.id + ": split needs two parts");
                auto& a = cat.entries_[cat.index_.at(parts[0])];
                auto& b = cat.entries_[cat.index_.at(parts[1])];
                if (!ready(a) || !ready(b)) continue;
                e.hfk = hfk_tensor(hfk_tensor(*a.hfk, *b.hfk), split_factor());
                if (a.n() == 1 && b.n() == 1) {
                    BigradedModule m;
                    for (auto& [x, r] : *a.hfk)
                        for (auto& [y, s] : *b.hfk) m.add({x.first, y.first, x.second + y.second}, r * s);
                    e.module = tensor_V(m);
                }
            } else if (op == "knot-sum") {
                auto& k = cat.entries_[cat.index_.at(e.construct.at("knot").get<std::string>())];
                auto& l = cat.entries_[cat.index_.at(e.construct.at("link").get<std::string>())];
                if (!ready(k) || !ready(l) || !l.module) continue;
                int c = e.construct.value("component", 1);
                BigradedModule m;
                for (auto& [x, r] : *k.hfk) {
                    auto s = shift_module(*l.module, c == 1 ? x.first : HalfInt(0), c == 2 ? x.first : HalfInt(0), x.second);
                    for (auto& [g, q] : s.ranks) m.add(g, q * r);
                }
                e.module = m;
                e.hfk = project_to_hfk(m, e.n());
            } else {
                throw std::invalid_argument(e.id + ": unknown construction " + op);
            }
            progress = true;
        }
        if (!progress) break;
    }
    for (auto& e : cat.entries_)
        if (!ready(e)) throw std::invalid_argument(e.id + ": construction could not be resolved");
    return cat;
}

const CatalogEntry& Catalog::lookup(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::out_of_range("unknown link id '" + id + "'");
    return entries_[it->second];
}

bool Catalog::has(const std::string& id) const { return index_.count(id) > 0; }

std::vector<std::string> Catalog::ids() const {
    std::vector<std::string> out;
    for (auto& e : entries_) out.push_back(e.id);
    return out;
}

std::string default_assets_dir() {
    if (const char* env = std::getenv("FLOERFORGE_ASSETS"); env && *env) return env;
    return FLOERFORGE_DEFAULT_ASSETS;
}

const Catalog& default_catalog() {
    static const Catalog cat = [] {
        fs::path dir = default_assets_dir();
        // accept either the assets root or the catalog directory itself
        if (fs::is_directory(dir / "catalog")) dir /= "catalog";
        return Catalog::load(dir.string());
    }();
    return cat;
}

std::vector<std::string> hfk_symmetry_mismatches(const HfkRanks& h) {
    std::vector<std::string> out;
    auto at = [&](HalfInt a, HalfInt m) {
        auto it = h.find({a, m});
        return it == h.end() ? int64_t(0) : it->second;
    };
    for (auto& [k, r] : h) {
        HalfInt a = k.first, m = k.second;
        int64_t s = at(-a, m - a.times(2));
        if (s != r) out.push_back("(" + a.str() + "," + m.str() + ") rank " + std::to_string(r) + " vs " + std::to_string(s));
    }
    return out;
}

HfkRanks mirror_hfk(const HfkRanks& h) {
    HfkRanks out;
    for (auto& [k, r] : h) out[{-k.first, -k.second}] += r;
    return out;
}

namespace {

void push(std::vector<SelfcheckItem>& out, const std::string& id, const std::string& check, bool ok, std::string detail = "") {
    out.push_back({id, check, ok, std::move(detail)});
}

std::string first_of(const std::vector<std::string>& v) { return v.empty() ? "" : v.front(); }

}  // namespace

std::vector<SelfcheckItem> selfcheck_entry(const CatalogEntry& e) {
    std::vector<SelfcheckItem> out;
    const std::string& id = e.id;
    if (e.hfl) {
        for (Field f : {Field::GF2, Field::Q}) {
            std::string tag = "realize." + field_name(f);
            try {
                auto c = realize(*e.hfl, f);
                auto v = validate_complex(c);
                bool ok = v.empty() && associated_graded_homology(c) == *e.module;
                auto back = decompose_e2(c);
                auto want = *e.hfl;
                back.normalize();
                want.normalize();
                ok = ok && back == want;
                push(out, id, tag, ok, v.empty() ? "" : v.front().kind + ": " + v.front().detail);
            } catch (const std::exception& ex) {
                push(out, id, tag, false, ex.what());
            }
        }
    }
    if (e.module && e.n() == 2) {
        auto s = check_symmetry(*e.module);
        push(out, id, "symmetry", !s.failed(), s.witness);
        auto p = check_parity_rules(*e.module, e.cd);
        for (auto& r : p.all()) push(out, id, r.rule, !r.failed(), r.witness);
        try {
            auto cw = conway(*e.module, ConwayRoute::Torres);
            auto lk = linking_from_conway(cw.nabla, LinkingMode::StrictHoste);
            // a zero polynomial leaves the linking number indeterminate, which only a split link may do
            bool ok = lk ? *lk == Rational(e.cd.linking(1, 2)) : e.cd.linking(1, 2) == 0;
            push(out, id, "conway-linking", ok, lk ? cw.nabla.str() : "indeterminate");
        } catch (const std::exception& ex) {
            push(out, id, "conway-linking", false, ex.what());
        }
    }
    if (e.hfk) {
        auto mm = hfk_symmetry_mismatches(*e.hfk);
        push(out, id, "hfk-symmetry", mm.empty(), first_of(mm));
        auto g = check_global_degeneration(*e.hfk, e.n());
        push(out, id, "global-degeneration", !g.failed(), g.witness);
        if (!e.module) {
            auto p = check_parity_rules_hfk(*e.hfk, e.n());
            for (auto& r : {p.odd_rank, p.alexander_at_one}) push(out, id, r.rule, !r.failed(), r.witness);
        }
        if (e.module) push(out, id, "projection", project_to_hfk(*e.module, e.n()) == *e.hfk);
        if (e.n() == 1) {
            auto d = alexander_from_hfk(*e.hfk, 1);
            bool ok = d && d->evaluate_at_one() == 1;
            push(out, id, "alexander-at-one", ok, d ? d->str() : "");
        }
    }
    for (size_t k = 0; k < e.candidates.size(); ++k) {
        std::string tag = "candidate-" + std::to_string(k + 1);
        auto mm = hfk_symmetry_mismatches(e.candidates[k]);
        auto g = check_global_degeneration(e.candidates[k], e.n());
        push(out, id, tag, mm.empty() && !g.failed(), mm.empty() ? g.witness : mm.front());
    }
    if (e.kh) {
        auto v = validate_kh(*e.kh);
        push(out, id, "kh-valid", v.empty(), first_of(v));
        if (e.n() <= 2) {
            auto lee = lee_constraint(*e.kh, e.n(), e.n() == 2 ? std::optional<int64_t>(e.cd.linking(1, 2)) : std::nullopt);
            push(out, id, "lee", !lee.failed(), lee.witness);
        }
        if (e.kh_thin) push(out, id, "kh-thin", kh_thin_s_chi(*e.kh).thin);
        if (e.hfk) {
            try {
                int64_t bound = dowlin_bound(reduced_rank_f2(*e.kh), e.n());
                int64_t r = hfk_total(*e.hfk);
                push(out, id, "dowlin", r <= bound, std::to_string(r) + (r == bound ? " = " : " <= ") + std::to_string(bound));
            } catch (const std::exception& ex) {
                push(out, id, "dowlin", false, ex.what());
            }
        }
    }
    return out;
}

std::vector<SelfcheckItem> selfcheck_catalog(const Catalog& c) {
    std::vector<SelfcheckItem> out;
    for (auto& e : c.entries()) {
        auto items = selfcheck_entry(e);
        out.insert(out.end(), items.begin(), items.end());
    }
    // mirror closure
    for (auto& e : c.entries()) {
        if (e.id.rfind("T(2,", 0) != 0 || e.id.find('_') != std::string::npos) continue;
        int k = std::stoi(e.id.substr(4));
        if (k <= 0) continue;
        std::string mid = "T(2," + std::to_string(-k) + ")";
        if (!c.has(mid)) {
            push(out, e.id, "mirror", false, mid + " missing");
            continue;
        }
        auto& m = c.lookup(mid);
        bool ok = true;
        if (e.module) ok = ok && m.module && mirror_module(*e.module, e.n()) == *m.module;
        if (e.hfk) ok = ok && m.hfk && mirror_hfk(*e.hfk) == *m.hfk;
        push(out, e.id, "mirror", ok, "vs " + mid);
    }
    if (c.has("fig8")) {
        auto& f = c.lookup("fig8");
        push(out, f.id, "amphichiral", f.hfk && mirror_hfk(*f.hfk) == *f.hfk);
    }
    return out;
}

json selfcheck_to_json(const std::vector<SelfcheckItem>& items) {
    json arr = json::array();
    for (auto& i : items) arr.push_back({{"id", i.id}, {"check", i.check}, {"ok", i.ok}, {"detail", i.detail}});
    return arr;
}

}  // namespace ff
