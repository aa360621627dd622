#include "floerforge/complexes.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace ff {

std::string Grading::str() const {
    return "(" + a1.str() + "," + a2.str() + ";" + maslov.str() + ")";
}

size_t BifilteredComplex::add_generator(std::string id, Grading gr) {
    if (index_.count(id)) throw std::invalid_argument("duplicate generator id '" + id + "'");
    index_[id] = gens_.size();
    gens_.push_back({std::move(id), gr});
    return gens_.size() - 1;
}

void BifilteredComplex::add_arrow(size_t from, size_t to, const Rational& c) {
    if (from >= gens_.size() || to >= gens_.size()) throw std::out_of_range("arrow endpoint");
    Arith ar{field_};
    auto key = std::make_pair(from, to);
    auto it = diff_.find(key);
    Rational v = ar.add(it == diff_.end() ? Rational(0) : it->second, ar.norm(c));
    if (v == 0) diff_.erase(key);
    else diff_[key] = v;
}

void BifilteredComplex::add_arrow(const std::string& from, const std::string& to, const Rational& c) {
    add_arrow(index_of(from), index_of(to), c);
}

size_t BifilteredComplex::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown generator id '" + id + "'");
    return it->second;
}

size_t BifilteredComplex::append(const BifilteredComplex& o, const std::string& prefix) {
    if (o.field() != field_ && !o.gens_.empty()) throw std::invalid_argument("field mismatch in direct sum");
    size_t off = gens_.size();
    for (auto& g : o.gens_) add_generator(prefix + g.id, g.gr);
    for (auto& [k, v] : o.diff_) add_arrow(k.first + off, k.second + off, v);
    return off;
}

void BigradedModule::add(const Grading& g, int64_t r) {
    if (r == 0) return;
    int64_t& x = ranks[g];
    x += r;
    if (x < 0) throw std::invalid_argument("negative rank");
    if (x == 0) ranks.erase(g);
}

int64_t BigradedModule::rank_at(const Grading& g) const {
    auto it = ranks.find(g);
    return it == ranks.end() ? 0 : it->second;
}

int64_t BigradedModule::total() const {
    int64_t s = 0;
    for (auto& [g, r] : ranks) s += r;
    return s;
}

std::set<std::pair<HalfInt, HalfInt>> BigradedModule::support() const {
    std::set<std::pair<HalfInt, HalfInt>> s;
    for (auto& [g, r] : ranks) s.insert({g.a1, g.a2});
    return s;
}

int64_t hfk_total(const HfkRanks& h) {
    int64_t s = 0;
    for (auto& [k, r] : h) s += r;
    return s;
}

std::map<HalfInt, int64_t> hfk_by_alexander(const HfkRanks& h) {
    std::map<HalfInt, int64_t> out;
    for (auto& [k, r] : h) out[k.first] += r;
    return out;
}

int64_t ComponentData::linking(int i, int j) const {
    if (i == j) return 0;
    auto it = lk.find({std::min(i, j), std::max(i, j)});
    return it == lk.end() ? 0 : it->second;
}

void ComponentData::set_linking(int i, int j, int64_t v) {
    if (i == j) throw std::invalid_argument("self-linking is not stored");
    lk[{std::min(i, j), std::max(i, j)}] = v;
}

int64_t ComponentData::total_linking(int i) const {
    int64_t s = 0;
    for (int j = 1; j <= n_components; ++j) s += linking(i, j);
    return s;
}

namespace {

bool preserves_alexander(const Grading& a, const Grading& b) { return a.a1 == b.a1 && a.a2 == b.a2; }

}  // namespace

std::vector<Violation> validate_complex(const BifilteredComplex& c) {
    std::vector<Violation> out;
    const auto& gs = c.generators();
    Arith ar{c.field()};
    if (!gs.empty()) {
        auto p1 = gs[0].gr.a1.doubled() & 1, p2 = gs[0].gr.a2.doubled() & 1, pm = gs[0].gr.maslov.doubled() & 1;
        for (auto& g : gs) {
            if ((g.gr.a1.doubled() & 1) != p1 || (g.gr.a2.doubled() & 1) != p2)
                out.push_back({"coset", "generator " + g.id + " has Alexander grading outside the common coset"});
            if ((g.gr.maslov.doubled() & 1) != pm)
                out.push_back({"coset", "generator " + g.id + " has Maslov grading outside the common coset"});
        }
    }
    for (auto& [k, v] : c.differential()) {
        const auto& s = gs[k.first];
        const auto& t = gs[k.second];
        std::string arrow = s.id + "->" + t.id;
        if (c.field() == Field::GF2 && v != 1) out.push_back({"coefficient", arrow + " is not a GF(2) value"});
        if (s.gr.maslov - t.gr.maslov != HalfInt(1)) out.push_back({"maslov drop", arrow});
        if (t.gr.a1 > s.gr.a1 || t.gr.a2 > s.gr.a2) out.push_back({"filtration", arrow + " raises an Alexander grading"});
    }
    // d^2 = 0
    std::map<size_t, std::vector<std::pair<size_t, Rational>>> out_arrows;
    for (auto& [k, v] : c.differential()) out_arrows[k.first].push_back({k.second, v});
    for (auto& [src, lst] : out_arrows) {
        std::map<size_t, Rational> sq;
        for (auto& [mid, v1] : lst) {
            auto it = out_arrows.find(mid);
            if (it == out_arrows.end()) continue;
            for (auto& [dst, v2] : it->second) sq[dst] = ar.add(sq[dst], ar.mul(v1, v2));
        }
        for (auto& [dst, v] : sq)
            if (v != 0) out.push_back({"d^2", "d^2(" + gs[src].id + ") has coefficient " + rational_to_string(v) + " on " + gs[dst].id});
    }
    return out;
}

size_t rank_of_arrows(const BifilteredComplex& c, const std::vector<size_t>& sources,
                      const std::vector<size_t>& targets, const ArrowFilter& keep) {
    if (sources.empty() || targets.empty()) return 0;
    std::map<size_t, size_t> col;
    for (size_t i = 0; i < targets.size(); ++i) col[targets[i]] = i;
    std::map<size_t, size_t> row;
    for (size_t i = 0; i < sources.size(); ++i) row[sources[i]] = i;
    std::vector<SparseVec> rows(sources.size());
    for (auto& [k, v] : c.differential()) {
        auto r = row.find(k.first);
        auto q = col.find(k.second);
        if (r == row.end() || q == col.end()) continue;
        if (!keep(c.gen(k.first).gr, c.gen(k.second).gr)) continue;
        rows[r->second][q->second] = v;
    }
    return echelon(std::move(rows), c.field()).pivots.size();
}

std::map<Grading, int64_t> homology_by_blocks(const BifilteredComplex& c,
                                              const std::function<Grading(const Grading&)>& key,
                                              const ArrowFilter& keep) {
    std::map<Grading, std::vector<size_t>> blocks;
    for (size_t i = 0; i < c.size(); ++i) blocks[key(c.gen(i).gr)].push_back(i);
    // collect which block pairs carry arrows
    std::map<Grading, std::set<Grading>> next;
    for (auto& [k, v] : c.differential()) {
        const auto& s = c.gen(k.first).gr;
        const auto& t = c.gen(k.second).gr;
        if (keep(s, t)) next[key(s)].insert(key(t));
    }
    std::map<Grading, int64_t> out_rank, in_rank;
    for (auto& [b, tgts] : next) {
        std::vector<size_t> targets;
        for (auto& t : tgts) targets.insert(targets.end(), blocks[t].begin(), blocks[t].end());
        size_t r = rank_of_arrows(c, blocks[b], targets, keep);
        out_rank[b] += static_cast<int64_t>(r);
        if (tgts.size() != 1) throw std::logic_error("homology_by_blocks: block maps into several blocks");
        in_rank[*tgts.begin()] += static_cast<int64_t>(r);
    }
    std::map<Grading, int64_t> h;
    for (auto& [b, idx] : blocks) {
        int64_t r = static_cast<int64_t>(idx.size()) - out_rank[b] - in_rank[b];
        if (r < 0) throw std::logic_error("negative homology rank: complex is not valid");
        if (r > 0) h[b] = r;
    }
    return h;
}

BigradedModule associated_graded_homology(const BifilteredComplex& c) {
    BigradedModule m;
    auto h = homology_by_blocks(c, [](const Grading& g) { return g; }, preserves_alexander);
    for (auto& [g, r] : h) m.add(g, r);
    return m;
}

std::map<HalfInt, int64_t> total_homology(const BifilteredComplex& c) {
    auto h = homology_by_blocks(
        c, [](const Grading& g) { return Grading{0, 0, g.maslov}; },
        [](const Grading&, const Grading&) { return true; });
    std::map<HalfInt, int64_t> out;
    for (auto& [g, r] : h) out[g.maslov] = r;
    return out;
}

BifilteredComplex reduce_grading_preserving(const BifilteredComplex& c) {
    Arith ar{c.field()};
    size_t n = c.size();
    std::vector<std::map<size_t, Rational>> out(n);
    std::vector<std::set<size_t>> in(n);
    for (auto& [k, v] : c.differential()) {
        out[k.first][k.second] = v;
        in[k.second].insert(k.first);
    }
    std::vector<bool> alive(n, true);
    const auto& gs = c.generators();
    auto pivot_key = [&](size_t x, size_t y) {
        const auto& g = gs[x].gr;
        return std::make_tuple(-g.a1.doubled(), -g.a2.doubled(), -g.maslov.doubled(), gs[x].id, gs[y].id);
    };
    for (;;) {
        bool found = false;
        size_t bx = 0, by = 0;
        for (size_t x = 0; x < n; ++x) {
            if (!alive[x]) continue;
            for (auto& [y, v] : out[x]) {
                if (!preserves_alexander(gs[x].gr, gs[y].gr)) continue;
                if (!found || pivot_key(x, y) < pivot_key(bx, by)) {
                    bx = x;
                    by = y;
                    found = true;
                }
            }
        }
        if (!found) break;
        Rational cinv = ar.inv(out[bx][by]);
        std::vector<std::pair<size_t, Rational>> xs(out[bx].begin(), out[bx].end());
        std::vector<size_t> zs(in[by].begin(), in[by].end());
        for (size_t z : zs) {
            if (z == bx) continue;
            Rational a = out[z][by];
            for (auto& [w, b] : xs) {
                if (w == by) continue;
                Rational nv = ar.sub(out[z].count(w) ? out[z][w] : Rational(0), ar.mul(ar.mul(a, b), cinv));
                if (nv == 0) {
                    out[z].erase(w);
                    in[w].erase(z);
                } else {
                    out[z][w] = nv;
                    in[w].insert(z);
                }
            }
        }
        for (size_t v : {bx, by}) {
            for (auto& [w, c2] : out[v]) in[w].erase(v);
            for (size_t z : in[v]) out[z].erase(v);
            out[v].clear();
            in[v].clear();
            alive[v] = false;
        }
    }
    BifilteredComplex r(c.field());
    std::vector<size_t> newidx(n, 0);
    for (size_t i = 0; i < n; ++i)
        if (alive[i]) newidx[i] = r.add_generator(gs[i].id, gs[i].gr);
    for (size_t i = 0; i < n; ++i)
        if (alive[i])
            for (auto& [j, v] : out[i]) r.add_arrow(newidx[i], newidx[j], v);
    return r;
}

HfkRanks project_to_hfk(const BigradedModule& m, int n_components) {
    HfkRanks h;
    HalfInt shift = HalfInt::from_doubled(n_components - 1);
    for (auto& [g, r] : m.ranks) {
        int64_t& x = h[{g.a1 + g.a2, g.maslov + shift}];
        x += r;
    }
    return h;
}

BigradedModule module_of_generators(const BifilteredComplex& c) {
    BigradedModule m;
    for (auto& g : c.generators()) m.add(g.gr, 1);
    return m;
}

BigradedModule mirror_module(const BigradedModule& m, int n_components) {
    BigradedModule r;
    HalfInt off = HalfInt::from_doubled(2 * (n_components - 1));
    for (auto& [g, k] : m.ranks) r.add({-g.a1, -g.a2, -g.maslov - off}, k);
    return r;
}

BigradedModule symmetry_transform(const BigradedModule& m) {
    BigradedModule r;
    for (auto& [g, k] : m.ranks) r.add({-g.a1, -g.a2, g.maslov - g.a1.times(2) - g.a2.times(2)}, k);
    return r;
}

BigradedModule shift_module(const BigradedModule& m, HalfInt da1, HalfInt da2, HalfInt dm) {
    BigradedModule r;
    for (auto& [g, k] : m.ranks) r.add(g.shifted(da1, da2, dm), k);
    return r;
}

BigradedModule tensor_V(const BigradedModule& m) {
    BigradedModule r;
    for (auto& [g, k] : m.ranks) {
        r.add(g, k);
        r.add(g.shifted(0, 0, -1), k);
    }
    return r;
}

namespace {

json gr_json(const Grading& g) { return json::array({g.a1.doubled(), g.a2.doubled(), g.maslov.doubled()}); }

Grading gr_from(const json& a) {
    if (!a.is_array() || a.size() != 3) throw std::invalid_argument("grading must be [2a1,2a2,2m]");
    return {half(a[0].get<int64_t>()), half(a[1].get<int64_t>()), half(a[2].get<int64_t>())};
}

}  // namespace

json complex_to_json(const BifilteredComplex& c) {
    json j;
    j["field"] = field_name(c.field());
    std::vector<size_t> order(c.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return c.gen(a).id < c.gen(b).id; });
    json gens = json::array();
    for (size_t i : order) gens.push_back({{"id", c.gen(i).id}, {"gr", gr_json(c.gen(i).gr)}});
    j["generators"] = gens;
    std::vector<std::tuple<std::string, std::string, Rational>> arrows;
    for (auto& [k, v] : c.differential()) arrows.emplace_back(c.gen(k.first).id, c.gen(k.second).id, v);
    std::sort(arrows.begin(), arrows.end(), [](auto& a, auto& b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    json d = json::array();
    for (auto& [f, t, v] : arrows) d.push_back({{"from", f}, {"to", t}, {"c", rational_to_string(v)}});
    j["diff"] = d;
    return j;
}

BifilteredComplex complex_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("complex JSON must be an object");
    Field f = parse_field(j.value("field", std::string("GF2")));
    BifilteredComplex c(f);
    for (auto& g : j.value("generators", json::array())) c.add_generator(g.at("id").get<std::string>(), gr_from(g.at("gr")));
    for (auto& a : j.value("diff", json::array())) {
        Rational v = 1;
        if (a.contains("c")) v = a["c"].is_string() ? parse_rational(a["c"].get<std::string>()) : Rational(a["c"].get<int64_t>());
        c.add_arrow(a.at("from").get<std::string>(), a.at("to").get<std::string>(), v);
    }
    return c;
}

json module_to_json(const BigradedModule& m) {
    json arr = json::array();
    for (auto& [g, r] : m.ranks) arr.push_back({{"gr", gr_json(g)}, {"rank", r}});
    return {{"ranks", arr}};
}

BigradedModule module_from_json(const json& j) {
    BigradedModule m;
    for (auto& e : j.at("ranks")) m.add(gr_from(e.at("gr")), e.value("rank", int64_t{1}));
    return m;
}

json hfk_to_json(const HfkRanks& h) {
    json arr = json::array();
    for (auto it = h.rbegin(); it != h.rend(); ++it)
        arr.push_back({{"alexander2", it->first.first.doubled()}, {"maslov2", it->first.second.doubled()}, {"rank", it->second}});
    return arr;
}

HfkRanks hfk_from_json(const json& j) {
    HfkRanks h;
    for (auto& e : j) {
        int64_t r = e.value("rank", int64_t{1});
        if (r) h[{half(e.at("alexander2").get<int64_t>()), half(e.at("maslov2").get<int64_t>())}] += r;
    }
    return h;
}

}  // namespace ff
