#include "floerforge/decomposition.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <regex>
#include <unordered_map>

namespace ff {

namespace {

char kind_char(SummandKind k) {
    switch (k) {
        case SummandKind::B: return 'B';
        case SummandKind::V: return 'V';
        case SummandKind::H: return 'H';
        case SummandKind::X: return 'X';
        case SummandKind::Y: return 'Y';
    }
    return '?';
}

}  // namespace

SummandDescriptor B(HalfInt d, HalfInt i, HalfInt j) { return {SummandKind::B, d, 0, i, j}; }
SummandDescriptor V(HalfInt d, int l, HalfInt i, HalfInt j) { return {SummandKind::V, d, l, i, j}; }
SummandDescriptor H(HalfInt d, int l, HalfInt i, HalfInt j) { return {SummandKind::H, d, l, i, j}; }
SummandDescriptor X(HalfInt d, int l, HalfInt i, HalfInt j) {
    return {l == 0 ? SummandKind::Y : SummandKind::X, d, l, i, j};
}
SummandDescriptor Y(HalfInt d, int l, HalfInt i, HalfInt j) { return {SummandKind::Y, d, l, i, j}; }

std::string SummandDescriptor::str() const {
    std::string s(1, kind_char(kind));
    s += "[" + d.str() + "]";
    if (kind != SummandKind::B) s += "^" + std::to_string(l);
    s += "[" + i.str() + "," + j.str() + "]";
    return s;
}

SummandDescriptor SummandDescriptor::parse(const std::string& s) {
    static const std::regex re(R"(^\s*([BVHXY])\[\s*(-?\d+(?:/2)?)\s*\](?:\^(\d+))?\[\s*(-?\d+(?:/2)?)\s*,\s*(-?\d+(?:/2)?)\s*\]\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw std::invalid_argument("bad summand descriptor '" + s + "'");
    SummandDescriptor d;
    switch (m[1].str()[0]) {
        case 'B': d.kind = SummandKind::B; break;
        case 'V': d.kind = SummandKind::V; break;
        case 'H': d.kind = SummandKind::H; break;
        case 'X': d.kind = SummandKind::X; break;
        default: d.kind = SummandKind::Y; break;
    }
    d.d = HalfInt::parse(m[2].str());
    if (d.kind != SummandKind::B) {
        if (!m[3].matched) throw std::invalid_argument("descriptor '" + s + "' needs ^l");
        d.l = std::stoi(m[3].str());
    } else if (m[3].matched) {
        throw std::invalid_argument("box descriptor '" + s + "' takes no ^l");
    }
    if ((d.kind == SummandKind::V || d.kind == SummandKind::H) && d.l < 1)
        throw std::invalid_argument("V/H summands need l >= 1");
    if (d.kind == SummandKind::X && d.l == 0) d.kind = SummandKind::Y;
    d.i = HalfInt::parse(m[4].str());
    d.j = HalfInt::parse(m[5].str());
    return d;
}

int SummandDescriptor::rank() const {
    switch (kind) {
        case SummandKind::B: return 4;
        case SummandKind::V:
        case SummandKind::H: return 2;
        default: return 2 * l + 1;
    }
}

SummandDescriptor SummandDescriptor::translated(HalfInt da1, HalfInt da2, HalfInt dm) const {
    SummandDescriptor r = *this;
    r.i += da1;
    r.j += da2;
    r.d += dm;
    return r;
}

namespace {

struct Shape {
    std::vector<std::pair<std::string, Grading>> gens;
    std::vector<std::tuple<size_t, size_t, int>> arrows;
};

Shape shape_of(const SummandDescriptor& s) {
    Shape sh;
    auto add = [&](std::string id, HalfInt a1, HalfInt a2, HalfInt m) {
        sh.gens.push_back({std::move(id), Grading{a1, a2, m}});
        return sh.gens.size() - 1;
    };
    switch (s.kind) {
        case SummandKind::B: {
            size_t bot = add("bot", s.i, s.j, s.d);
            size_t rt = add("right", s.i + 1, s.j, s.d + 1);
            size_t lf = add("left", s.i, s.j + 1, s.d + 1);
            size_t top = add("top", s.i + 1, s.j + 1, s.d + 2);
            // the top horizontal arrow carries -1 so that d^2 = 0 over Q
            sh.arrows = {{top, lf, -1}, {top, rt, 1}, {lf, bot, 1}, {rt, bot, 1}};
            break;
        }
        case SummandKind::V: {
            size_t a = add("src", s.i, s.j, s.d);
            size_t b = add("tgt", s.i, s.j - s.l, s.d - 1);
            sh.arrows = {{a, b, 1}};
            break;
        }
        case SummandKind::H: {
            size_t a = add("src", s.i, s.j, s.d);
            size_t b = add("tgt", s.i - s.l, s.j, s.d - 1);
            sh.arrows = {{a, b, 1}};
            break;
        }
        case SummandKind::X:
        case SummandKind::Y: {
            HalfInt bi = s.i - half(s.l), bj = s.j - half(s.l);
            std::vector<size_t> p(s.l + 1), c(s.l + 1);
            for (int k = 0; k <= s.l; ++k) p[k] = add("p" + std::to_string(k), bi + k, bj + (s.l - k), s.d);
            for (int k = 1; k <= s.l; ++k) {
                if (s.kind == SummandKind::Y) {
                    c[k] = add("c" + std::to_string(k), bi + (k - 1), bj + (s.l - k), s.d - 1);
                    sh.arrows.push_back({p[k], c[k], 1});
                    sh.arrows.push_back({p[k - 1], c[k], 1});
                } else {
                    c[k] = add("q" + std::to_string(k), bi + k, bj + (s.l - k + 1), s.d + 1);
                    sh.arrows.push_back({c[k], p[k - 1], 1});
                    sh.arrows.push_back({c[k], p[k], 1});
                }
            }
            break;
        }
    }
    return sh;
}

}  // namespace

std::vector<Grading> SummandDescriptor::gradings() const {
    std::vector<Grading> out;
    for (auto& g : shape_of(*this).gens) out.push_back(g.second);
    return out;
}

void Decomposition::normalize() {
    std::sort(summands.begin(), summands.end(),
              [](const SummandDescriptor& a, const SummandDescriptor& b) { return a.str() < b.str(); });
}

std::vector<std::string> Decomposition::strings() const {
    Decomposition d = *this;
    d.normalize();
    std::vector<std::string> out;
    for (auto& s : d.summands) out.push_back(s.str());
    return out;
}

int Decomposition::rank() const {
    int r = 0;
    for (auto& s : summands) r += s.rank();
    return r;
}

bool Decomposition::operator==(const Decomposition& o) const { return strings() == o.strings(); }

Decomposition parse_decomposition(const std::vector<std::string>& items) {
    Decomposition d;
    for (auto& s : items) d.summands.push_back(SummandDescriptor::parse(s));
    d.normalize();
    return d;
}

BifilteredComplex realize_summand(const SummandDescriptor& s, Field f) {
    if (s.l < 0) throw std::invalid_argument("negative summand length");
    Shape sh = shape_of(s);
    BifilteredComplex c(f);
    for (auto& [id, g] : sh.gens) c.add_generator(id, g);
    for (auto& [a, b, v] : sh.arrows) c.add_arrow(a, b, Rational(v));
    return c;
}

BifilteredComplex realize(const Decomposition& d, Field f) {
    BifilteredComplex c(f);
    Decomposition n = d;
    n.normalize();
    for (size_t k = 0; k < n.summands.size(); ++k) c.append(realize_summand(n.summands[k], f), "s" + std::to_string(k) + ".");
    return c;
}

BigradedModule module_of(const Decomposition& d) {
    BigradedModule m;
    for (auto& s : d.summands)
        for (auto& g : s.gradings()) m.add(g, 1);
    return m;
}

namespace {

bool below(const Grading& y, const Grading& x) { return y.a1 <= x.a1 && y.a2 <= x.a2 && y.maslov == x.maslov; }

std::vector<std::vector<std::pair<size_t, Rational>>> out_lists(const BifilteredComplex& c) {
    std::vector<std::vector<std::pair<size_t, Rational>>> o(c.size());
    for (auto& [k, v] : c.differential()) o[k.first].push_back({k.second, v});
    return o;
}

// incremental span with combination tracking
class SpanSolver {
public:
    explicit SpanSolver(Field f) : ar_{f} {}

    // returns false if v is already in the span
    bool add(SparseVec v, size_t tag) {
        SparseVec comb;
        comb[tag] = 1;
        reduce(v, comb);
        if (v.empty()) return false;
        rows_.push_back({v.begin()->first, std::move(v), std::move(comb)});
        return true;
    }

    // coordinates of v in terms of added tags, if v lies in the span
    std::optional<SparseVec> solve(SparseVec v) const {
        SparseVec comb;
        reduce(v, comb);
        if (!v.empty()) return std::nullopt;
        for (auto& [k, x] : comb) x = ar_.neg(x);
        return comb;
    }

    bool contains(SparseVec v) const {
        SparseVec comb;
        reduce(v, comb);
        return v.empty();
    }

private:
    struct Row {
        size_t pivot;
        SparseVec v, comb;
    };

    static void axpy(SparseVec& a, const Rational& c, const SparseVec& b, const Arith& ar) {
        for (auto& [k, x] : b) {
            auto it = a.find(k);
            Rational nv = ar.sub(it == a.end() ? Rational(0) : it->second, ar.mul(c, x));
            if (nv == 0) {
                if (it != a.end()) a.erase(it);
            } else {
                a[k] = nv;
            }
        }
    }

    // v <- v - sum c_r row_r ; comb tracks v's expression (with the sign of subtraction)
    void reduce(SparseVec& v, SparseVec& comb) const {
        for (auto& r : rows_) {
            auto it = v.find(r.pivot);
            if (it == v.end()) continue;
            Rational c = ar_.mul(it->second, ar_.inv(r.v.at(r.pivot)));
            axpy(v, c, r.v, ar_);
            axpy(comb, c, r.comb, ar_);
        }
    }

    Arith ar_;
    std::vector<Row> rows_;
};

DenseMat zero_mat(size_t r, size_t c) { return DenseMat(r, std::vector<Rational>(c, Rational(0))); }

DenseMat mat_mul(const DenseMat& a, const DenseMat& b, const Arith& ar) {
    size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
    DenseMat r = zero_mat(n, m);
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (size_t j = 0; j < m; ++j)
                if (b[t][j] != 0) r[i][j] = ar.add(r[i][j], ar.mul(a[i][t], b[t][j]));
        }
    return r;
}

std::optional<DenseMat> mat_inverse(const DenseMat& a, const Arith& ar) {
    size_t n = a.size();
    DenseMat m = a, inv = zero_mat(n, n);
    for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && m[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        Rational s = ar.inv(m[col][col]);
        for (size_t j = 0; j < n; ++j) {
            m[col][j] = ar.mul(m[col][j], s);
            inv[col][j] = ar.mul(inv[col][j], s);
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0) continue;
            Rational f = m[r][col];
            for (size_t j = 0; j < n; ++j) {
                m[r][j] = ar.sub(m[r][j], ar.mul(f, m[col][j]));
                inv[r][j] = ar.sub(inv[r][j], ar.mul(f, inv[col][j]));
            }
        }
    }
    return inv;
}

struct HomSystem {
    std::vector<std::pair<size_t, size_t>> unknowns;
    SparseMatrix eqs{0, 0, Field::Q};
};

HomSystem build_hom_system(const BifilteredComplex& from, const BifilteredComplex& to) {
    HomSystem hs;
    std::map<std::pair<size_t, size_t>, size_t> uidx;
    for (size_t x = 0; x < from.size(); ++x)
        for (size_t y = 0; y < to.size(); ++y)
            if (below(to.gen(y).gr, from.gen(x).gr)) {
                uidx[{x, y}] = hs.unknowns.size();
                hs.unknowns.push_back({x, y});
            }
    auto out_to = out_lists(to);
    auto out_from = out_lists(from);
    std::map<std::pair<size_t, size_t>, size_t> eidx;
    std::vector<std::tuple<size_t, size_t, Rational>> entries;
    auto eq = [&](size_t x, size_t y2) {
        auto it = eidx.find({x, y2});
        if (it != eidx.end()) return it->second;
        size_t k = eidx.size();
        eidx[{x, y2}] = k;
        return k;
    };
    Arith ar{from.field()};
    // d_to(f(x)) terms
    for (auto& [xy, u] : uidx)
        for (auto& [y2, v] : out_to[xy.second]) entries.emplace_back(eq(xy.first, y2), u, v);
    // - f(d_from(x)) terms
    for (size_t x = 0; x < from.size(); ++x)
        for (auto& [x2, v] : out_from[x])
            for (size_t y2 = 0; y2 < to.size(); ++y2) {
                auto it = uidx.find({x2, y2});
                if (it != uidx.end()) entries.emplace_back(eq(x, y2), it->second, ar.neg(v));
            }
    hs.eqs = SparseMatrix(eidx.size(), hs.unknowns.size(), from.field());
    for (auto& [r, c, v] : entries) hs.eqs.add(r, c, v);
    return hs;
}

}  // namespace

std::vector<DenseMat> filtered_chain_maps(const BifilteredComplex& from, const BifilteredComplex& to) {
    if (from.field() != to.field()) throw std::invalid_argument("field mismatch");
    HomSystem hs = build_hom_system(from, to);
    std::vector<DenseMat> out;
    if (hs.unknowns.empty()) return out;
    RankKernel rk = rank_and_kernel(hs.eqs);
    for (auto& v : rk.kernel) {
        DenseMat m = zero_mat(from.size(), to.size());
        for (auto& [u, c] : v) m[hs.unknowns[u].first][hs.unknowns[u].second] = c;
        out.push_back(std::move(m));
    }
    return out;
}

size_t hom_dimension(const BifilteredComplex& from, const BifilteredComplex& to) {
    if (from.field() != to.field()) throw std::invalid_argument("field mismatch");
    HomSystem hs = build_hom_system(from, to);
    if (hs.unknowns.empty()) return 0;
    return hs.unknowns.size() - rank_of(hs.eqs);
}

namespace {

using Avail = std::map<Grading, int64_t>;

Avail gradings_of(const BifilteredComplex& c) {
    Avail a;
    for (auto& g : c.generators()) a[g.gr] += 1;
    return a;
}

bool fits(const SummandDescriptor& s, const Avail& avail) {
    Avail need;
    for (auto& g : s.gradings()) need[g] += 1;
    for (auto& [g, k] : need) {
        auto it = avail.find(g);
        if (it == avail.end() || it->second < k) return false;
    }
    return true;
}

// All five-family shapes whose generator gradings fit inside the available multiset.
std::vector<SummandDescriptor> candidate_shapes(const Avail& avail) {
    std::vector<SummandDescriptor> out;
    if (avail.empty()) return out;
    HalfInt min1 = avail.begin()->first.a1, min2 = avail.begin()->first.a2;
    for (auto& [g, k] : avail) {
        min1 = std::min(min1, g.a1);
        min2 = std::min(min2, g.a2);
    }
    for (auto& [g, k] : avail) {
        SummandDescriptor b = B(g.maslov, g.a1, g.a2);
        if (fits(b, avail)) out.push_back(b);
        for (int l = 1; g.a2 - l >= min2; ++l) {
            auto v = V(g.maslov, l, g.a1, g.a2);
            if (fits(v, avail)) out.push_back(v);
        }
        for (int l = 1; g.a1 - l >= min1; ++l) {
            auto h = H(g.maslov, l, g.a1, g.a2);
            if (fits(h, avail)) out.push_back(h);
        }
        // staircases with p_0 at g: p_0 = base + (0, l), centre = base + (l/2, l/2)
        for (SummandKind kind : {SummandKind::Y, SummandKind::X}) {
            for (int l = (kind == SummandKind::Y ? 0 : 1);; ++l) {
                SummandDescriptor s{kind, g.maslov, l, g.a1 + half(l), g.a2 - half(l)};
                if (!fits(s, avail)) break;
                out.push_back(s);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const SummandDescriptor& a, const SummandDescriptor& b) {
        if (a.rank() != b.rank()) return a.rank() > b.rank();
        return a.str() < b.str();
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Splits s off c if it is a direct summand; on success rest holds the complement.
bool try_split(const BifilteredComplex& c, const SummandDescriptor& s, BifilteredComplex& rest) {
    Arith ar{c.field()};
    BifilteredComplex S = realize_summand(s, c.field());
    auto F = filtered_chain_maps(S, c);
    if (F.empty()) return false;
    auto G = filtered_chain_maps(c, S);
    if (G.empty()) return false;
    std::optional<DenseMat> inv;
    const DenseMat* fsel = nullptr;
    const DenseMat* gsel = nullptr;
    for (auto& f : F) {
        for (auto& g : G) {
            inv = mat_inverse(mat_mul(f, g, ar), ar);
            if (inv) {
                fsel = &f;
                gsel = &g;
                break;
            }
        }
        if (inv) break;
    }
    if (!inv) {
        // End(S) is local, so a sum of non-invertible composites cannot be invertible
        // unless some single composite is; still try one generic combination.
        DenseMat fs = zero_mat(S.size(), c.size()), gs = zero_mat(c.size(), S.size());
        for (size_t k = 0; k < F.size(); ++k)
            for (size_t a = 0; a < S.size(); ++a)
                for (size_t b = 0; b < c.size(); ++b) fs[a][b] = ar.add(fs[a][b], ar.mul(Rational(k + 1), F[k][a][b]));
        for (size_t k = 0; k < G.size(); ++k)
            for (size_t a = 0; a < c.size(); ++a)
                for (size_t b = 0; b < S.size(); ++b) gs[a][b] = ar.add(gs[a][b], ar.mul(Rational(k + 2), G[k][a][b]));
        inv = mat_inverse(mat_mul(fs, gs, ar), ar);
        if (!inv) return false;
        F.push_back(fs);
        G.push_back(gs);
        fsel = &F.back();
        gsel = &G.back();
    }
    DenseMat e = mat_mul(*gsel, *inv, ar);  // C -> S with e f = id
    DenseMat p = mat_mul(e, *fsel, ar);     // idempotent on C
    size_t n = c.size();
    std::vector<SparseVec> comp(n);         // (1-p) e_x
    for (size_t x = 0; x < n; ++x) {
        SparseVec v;
        for (size_t y = 0; y < n; ++y) {
            Rational val = ar.sub(x == y ? Rational(1) : Rational(0), p[x][y]);
            if (val != 0) v[y] = val;
        }
        comp[x] = std::move(v);
    }
    // adapted basis of the complement, level by level in a linear extension of the order
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    const auto& gens = c.generators();
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        const auto& ga = gens[a].gr;
        const auto& gb = gens[b].gr;
        return std::make_tuple(ga.a1 + ga.a2, ga.a1, ga.maslov) < std::make_tuple(gb.a1 + gb.a2, gb.a1, gb.maslov);
    });
    Avail sneed;
    for (auto& g : S.generators()) sneed[g.gr] += 1;
    std::vector<size_t> chosen;
    size_t idx = 0;
    while (idx < n) {
        size_t end = idx;
        Grading lvl = gens[order[idx]].gr;
        while (end < n && gens[order[end]].gr == lvl) ++end;
        SpanSolver span(c.field());
        for (size_t k : chosen)
            if (gens[k].gr.a1 <= lvl.a1 && gens[k].gr.a2 <= lvl.a2) span.add(comp[k], k);
        int64_t want = static_cast<int64_t>(end - idx) - (sneed.count(lvl) ? sneed[lvl] : 0);
        int64_t got = 0;
        for (size_t t = idx; t < end; ++t) {
            size_t x = order[t];
            if (span.add(comp[x], x)) {
                chosen.push_back(x);
                ++got;
            }
        }
        if (got != want) return false;
        idx = end;
    }
    // express the differential in the complement basis
    auto outs = out_lists(c);
    SpanSolver all(c.field());
    for (size_t k : chosen) all.add(comp[k], k);
    BifilteredComplex r(c.field());
    std::map<size_t, size_t> newidx;
    for (size_t k : chosen) newidx[k] = r.add_generator(gens[k].id, gens[k].gr);
    for (size_t k : chosen) {
        SparseVec dv;
        for (auto& [x, a] : comp[k])
            for (auto& [y, b] : outs[x]) {
                Rational nv = ar.add(dv.count(y) ? dv[y] : Rational(0), ar.mul(a, b));
                if (nv == 0) dv.erase(y);
                else dv[y] = nv;
            }
        auto coords = all.solve(dv);
        if (!coords) throw std::logic_error("complement is not a subcomplex");
        for (auto& [t, v] : *coords) r.add_arrow(newidx[k], newidx[t], v);
    }
    rest = std::move(r);
    return true;
}

bool has_grading_preserving_arrows(const BifilteredComplex& c) {
    for (auto& [k, v] : c.differential()) {
        const auto& a = c.gen(k.first).gr;
        const auto& b = c.gen(k.second).gr;
        if (a.a1 == b.a1 && a.a2 == b.a2) return true;
    }
    return false;
}

}  // namespace

Decomposition decompose_e2(const BifilteredComplex& input) {
    auto viol = validate_complex(input);
    if (!viol.empty()) throw DecompositionError("invalid complex: " + viol.front().kind + " " + viol.front().detail);
    BifilteredComplex c = has_grading_preserving_arrows(input) ? reduce_grading_preserving(input) : input;
    Decomposition d;
    while (c.size() > 0) {
        bool split = false;
        for (auto& s : candidate_shapes(gradings_of(c))) {
            BifilteredComplex rest;
            if (try_split(c, s, rest)) {
                d.summands.push_back(s);
                c = std::move(rest);
                split = true;
                break;
            }
        }
        if (!split) {
            std::string left;
            for (auto& g : c.generators()) left += " " + g.id + g.gr.str();
            throw DecompositionError("complex is not a sum of B/V/H/X/Y summands; stuck on" + left);
        }
    }
    d.normalize();
    return d;
}

namespace {

std::map<HalfInt, std::vector<size_t>> by_maslov_on_line(const BifilteredComplex& c, bool vertical, HalfInt line) {
    std::map<HalfInt, std::vector<size_t>> out;
    for (size_t i = 0; i < c.size(); ++i) {
        const auto& g = c.gen(i).gr;
        if ((vertical ? g.a1 : g.a2) == line) out[g.maslov].push_back(i);
    }
    return out;
}

BarCounts bars(const BifilteredComplex& c, bool vertical) {
    BarCounts out;
    std::set<HalfInt> lines;
    for (auto& g : c.generators()) lines.insert(vertical ? g.gr.a1 : g.gr.a2);
    auto level = [&](size_t i) { return vertical ? c.gen(i).gr.a2 : c.gen(i).gr.a1; };
    ArrowFilter keep = [vertical](const Grading& a, const Grading& b) {
        return vertical ? a.a1 == b.a1 : a.a2 == b.a2;
    };
    for (HalfInt line : lines) {
        auto bym = by_maslov_on_line(c, vertical, line);
        for (auto& [m, srcs] : bym) {
            auto it = bym.find(m - 1);
            if (it == bym.end()) continue;
            const auto& tgts = it->second;
            std::set<HalfInt> slev, tlev;
            for (size_t s : srcs) slev.insert(level(s));
            for (size_t t : tgts) tlev.insert(level(t));
            // r(source level cut, target level cut)
            auto r = [&](HalfInt smax, bool sstrict, HalfInt tmin, bool tstrict) {
                std::vector<size_t> S, T;
                for (size_t s : srcs)
                    if (sstrict ? level(s) < smax : level(s) <= smax) S.push_back(s);
                for (size_t t : tgts)
                    if (tstrict ? level(t) > tmin : level(t) >= tmin) T.push_back(t);
                return static_cast<int64_t>(rank_of_arrows(c, S, T, keep));
            };
            for (HalfInt sl : slev)
                for (HalfInt tl : tlev) {
                    if (tl > sl) continue;
                    int64_t k = r(sl, false, tl, false) - r(sl, true, tl, false) - r(sl, false, tl, true) + r(sl, true, tl, true);
                    if (k) out[{line.doubled(), m.doubled(), sl.doubled(), tl.doubled()}] = k;
                }
        }
    }
    return out;
}

}  // namespace

BarCounts vertical_bars(const BifilteredComplex& c) { return bars(c, true); }
BarCounts horizontal_bars(const BifilteredComplex& c) { return bars(c, false); }

VerifyReport verify_decomposition(const BifilteredComplex& c, const Decomposition& d) {
    VerifyReport rep;
    BifilteredComplex r = realize(d, c.field());
    auto ag1 = associated_graded_homology(c), ag2 = associated_graded_homology(r);
    if (!(ag1 == ag2)) {
        rep.ok = false;
        std::string w;
        for (auto& [g, k] : ag1.ranks)
            if (ag2.rank_at(g) != k) { w = g.str(); break; }
        if (w.empty())
            for (auto& [g, k] : ag2.ranks)
                if (ag1.rank_at(g) != k) { w = g.str(); break; }
        rep.mismatches.push_back("associated graded rank differs at " + w);
    }
    auto t1 = total_homology(c), t2 = total_homology(r);
    if (t1 != t2) {
        rep.ok = false;
        rep.mismatches.push_back("total homology differs");
    }
    auto describe = [](const BarCounts& a, const BarCounts& b) {
        for (auto& [k, v] : a) {
            auto it = b.find(k);
            if (it == b.end() || it->second != v)
                return "line " + half(k[0]).str() + " maslov " + half(k[1]).str() + " bar " + half(k[2]).str() + "->" + half(k[3]).str();
        }
        for (auto& [k, v] : b)
            if (!a.count(k))
                return "line " + half(k[0]).str() + " maslov " + half(k[1]).str() + " bar " + half(k[2]).str() + "->" + half(k[3]).str();
        return std::string();
    };
    auto v1 = vertical_bars(c), v2 = vertical_bars(r);
    if (v1 != v2) {
        rep.ok = false;
        rep.mismatches.push_back("vertical-only ranks differ: " + describe(v1, v2));
    }
    auto h1 = horizontal_bars(c), h2 = horizontal_bars(r);
    if (h1 != h2) {
        rep.ok = false;
        rep.mismatches.push_back("horizontal-only ranks differ: " + describe(h1, h2));
    }
    return rep;
}

namespace {

struct HomCache {
    std::mutex mu;
    std::unordered_map<std::string, size_t> dims;
};

HomCache& hom_cache() {
    static HomCache c;
    return c;
}

bool hom_possible(const SummandDescriptor& from, const SummandDescriptor& to) {
    for (auto& x : from.gradings())
        for (auto& y : to.gradings())
            if (below(y, x)) return true;
    return false;
}

size_t shape_hom(const SummandDescriptor& from, const SummandDescriptor& to, Field f) {
    if (!hom_possible(from, to)) return 0;
    HalfInt di = -from.i, dj = -from.j, dm = -from.d;
    std::string key = field_name(f) + "|" + from.translated(di, dj, dm).str() + "|" + to.translated(di, dj, dm).str();
    auto& cache = hom_cache();
    {
        std::lock_guard<std::mutex> lk(cache.mu);
        auto it = cache.dims.find(key);
        if (it != cache.dims.end()) return it->second;
    }
    size_t v = hom_dimension(realize_summand(from, f), realize_summand(to, f));
    std::lock_guard<std::mutex> lk(cache.mu);
    cache.dims[key] = v;
    return v;
}

struct CensusSearch {
    std::vector<SummandDescriptor> cands;
    std::vector<std::vector<Grading>> cover;
    std::vector<std::vector<int64_t>> into, outof;  // per candidate S: dim Hom(T,S), dim Hom(S,T) over tests T
    std::vector<int64_t> target_in, target_out;
    Avail avail;
    std::vector<int> mult;
    std::vector<std::vector<int>> solutions;

    bool full_match(const std::vector<int64_t>& in, const std::vector<int64_t>& out) const {
        return in == target_in && out == target_out;
    }

    void dfs(size_t k, std::vector<int64_t>& in, std::vector<int64_t>& out, Avail& left) {
        if (solutions.size() >= 2) return;
        bool empty = true;
        for (auto& [g, n] : left)
            if (n) { empty = false; break; }
        if (empty) {
            if (full_match(in, out)) solutions.push_back(mult);
            return;
        }
        if (k == cands.size()) return;
        // the lowest remaining grading must be covered by some candidate from k on
        // try increasing multiplicities of candidate k
        int m = 0;
        std::vector<std::pair<Grading, int64_t>> used;
        for (;;) {
            dfs(k + 1, in, out, left);
            // add one more copy of candidate k
            bool ok = true;
            for (auto& g : cover[k]) {
                auto it = left.find(g);
                if (it == left.end() || it->second == 0) { ok = false; break; }
            }
            if (!ok) break;
            for (size_t t = 0; t < in.size(); ++t) {
                if (in[t] + into[k][t] > target_in[t] || out[t] + outof[k][t] > target_out[t]) { ok = false; break; }
            }
            if (!ok) break;
            for (auto& g : cover[k]) left[g] -= 1;
            for (size_t t = 0; t < in.size(); ++t) {
                in[t] += into[k][t];
                out[t] += outof[k][t];
            }
            ++m;
            mult[k] = m;
        }
        for (int r = 0; r < m; ++r) {
            for (auto& g : cover[k]) left[g] += 1;
            for (size_t t = 0; t < in.size(); ++t) {
                in[t] -= into[k][t];
                out[t] -= outof[k][t];
            }
        }
        mult[k] = 0;
    }
};

}  // namespace

Decomposition summand_census_oracle(const BifilteredComplex& input) {
    auto viol = validate_complex(input);
    if (!viol.empty()) throw DecompositionError("invalid complex: " + viol.front().kind);
    BifilteredComplex c = has_grading_preserving_arrows(input) ? reduce_grading_preserving(input) : input;
    CensusSearch cs;
    cs.avail = gradings_of(c);
    cs.cands = candidate_shapes(cs.avail);
    size_t n = cs.cands.size();
    cs.target_in.resize(n);
    cs.target_out.resize(n);
    for (size_t t = 0; t < n; ++t) {
        BifilteredComplex T = realize_summand(cs.cands[t], c.field());
        cs.target_in[t] = static_cast<int64_t>(hom_dimension(T, c));
        cs.target_out[t] = static_cast<int64_t>(hom_dimension(c, T));
    }
    cs.into.assign(n, std::vector<int64_t>(n, 0));
    cs.outof.assign(n, std::vector<int64_t>(n, 0));
    for (size_t s = 0; s < n; ++s) {
        cs.cover.push_back(cs.cands[s].gradings());
        for (size_t t = 0; t < n; ++t) {
            cs.into[s][t] = static_cast<int64_t>(shape_hom(cs.cands[t], cs.cands[s], c.field()));
            cs.outof[s][t] = static_cast<int64_t>(shape_hom(cs.cands[s], cs.cands[t], c.field()));
        }
    }
    cs.mult.assign(n, 0);
    std::vector<int64_t> in(n, 0), out(n, 0);
    Avail left = cs.avail;
    cs.dfs(0, in, out, left);
    if (cs.solutions.empty()) throw DecompositionError("census: no multiset of B/V/H/X/Y summands matches the invariants");
    if (cs.solutions.size() > 1) throw DecompositionError("census: invariants do not determine the multiset");
    Decomposition d;
    for (size_t k = 0; k < n; ++k)
        for (int r = 0; r < cs.solutions[0][k]; ++r) d.summands.push_back(cs.cands[k]);
    d.normalize();
    return d;
}

PairingReport check_pairing(const Decomposition& d) {
    PairingReport rep;
    std::multiset<SummandDescriptor> vs, hs;
    int stair0 = 0, stair1 = 0;
    for (auto& s : d.summands) {
        switch (s.kind) {
            case SummandKind::V: vs.insert(s); break;
            case SummandKind::H: hs.insert(s); break;
            case SummandKind::X:
            case SummandKind::Y:
                if (s.d == HalfInt(0)) ++stair0;
                else if (s.d == HalfInt(-1)) ++stair1;
                else {
                    rep.ok = false;
                    rep.witness = "staircase " + s.str() + " outside Maslov 0/-1";
                    return rep;
                }
                break;
            default: break;
        }
    }
    if (stair0 != 1 || stair1 != 1) {
        rep.ok = false;
        rep.witness = "expected one Maslov-0 and one Maslov-(-1) staircase, found " + std::to_string(stair0) + " and " +
                      std::to_string(stair1);
        return rep;
    }
    // V^l_d[x,y] pairs with V^l_{d-1}[x,y-1]; H^l_d[x,y] with H^l_{d-1}[x-1,y]
    auto pair_off = [&](std::multiset<SummandDescriptor>& pool, bool vertical) {
        while (!pool.empty()) {
            SummandDescriptor top = *pool.rbegin();
            pool.erase(std::prev(pool.end()));
            SummandDescriptor mate = vertical ? top.translated(0, -1, -1) : top.translated(-1, 0, -1);
            auto it = pool.find(mate);
            if (it == pool.end()) {
                rep.ok = false;
                rep.witness = "unpaired " + top.str();
                return false;
            }
            pool.erase(it);
        }
        return true;
    };
    // the pool is ordered by Maslov anchor, so each top finds its lower partner
    if (!pair_off(vs, true)) return rep;
    if (!pair_off(hs, false)) return rep;
    return rep;
}

BifilteredComplex random_filtered_scramble(const BifilteredComplex& c, std::mt19937_64& rng, int ops) {
    Arith ar{c.field()};
    size_t n = c.size();
    std::vector<std::map<size_t, Rational>> rows(n);
    for (auto& [k, v] : c.differential()) rows[k.first][k.second] = v;
    const auto& gs = c.generators();
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t x = 0; x < n; ++x)
        for (size_t y = 0; y < n; ++y)
            if (x != y && below(gs[y].gr, gs[x].gr)) pairs.push_back({x, y});
    static const int qvals[] = {1, -1, 2, -2, 3};
    for (int t = 0; t < ops && !pairs.empty(); ++t) {
        auto [x, y] = pairs[rng() % pairs.size()];
        Rational lam = c.field() == Field::GF2 ? Rational(1) : Rational(qvals[rng() % 5]);
        if (c.field() == Field::Q && rng() % 4 == 0) lam /= 2;
        // new basis x' = x + lam*y: row x += lam * row y, then column y -= lam * column x
        for (auto& [z, v] : std::map<size_t, Rational>(rows[y])) {
            Rational nv = ar.add(rows[x].count(z) ? rows[x][z] : Rational(0), ar.mul(lam, v));
            if (nv == 0) rows[x].erase(z);
            else rows[x][z] = nv;
        }
        for (size_t z = 0; z < n; ++z) {
            auto it = rows[z].find(x);
            if (it == rows[z].end()) continue;
            Rational nv = ar.sub(rows[z].count(y) ? rows[z][y] : Rational(0), ar.mul(lam, it->second));
            if (nv == 0) rows[z].erase(y);
            else rows[z][y] = nv;
        }
    }
    std::vector<size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<size_t> pos(n);
    BifilteredComplex r(c.field());
    for (size_t k = 0; k < n; ++k) pos[perm[k]] = r.add_generator("g" + std::to_string(k), gs[perm[k]].gr);
    for (size_t x = 0; x < n; ++x)
        for (auto& [y, v] : rows[x]) r.add_arrow(pos[x], pos[y], v);
    return r;
}

}  // namespace ff
