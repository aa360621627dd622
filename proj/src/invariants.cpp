#include "floerforge/invariants.hpp"

#include <algorithm>
#include <stdexcept>

namespace ff {

ConwayRoute parse_route(const std::string& s) {
    if (s == "reversed") return ConwayRoute::Reversed;
    if (s == "torres") return ConwayRoute::Torres;
    throw std::invalid_argument("unknown conway route: " + s);
}

LinkingMode parse_linking_mode(const std::string& s) {
    if (s == "strict-hoste") return LinkingMode::StrictHoste;
    if (s == "paper-lowest") return LinkingMode::PaperLowest;
    throw std::invalid_argument("unknown linking mode: " + s);
}

std::string linking_mode_name(LinkingMode m) { return m == LinkingMode::StrictHoste ? "strict-hoste" : "paper-lowest"; }

int maslov_sign(HalfInt maslov) {
    int64_t d = maslov.doubled();
    int64_t base = ((d % 2) + 2) % 2;
    int64_t k = (d - base) / 2;
    return k % 2 == 0 ? 1 : -1;
}

namespace {

void require_single_coset(const BigradedModule& m) {
    std::optional<int64_t> parity;
    for (auto& [g, r] : m.ranks) {
        int64_t p = ((g.maslov.doubled() % 2) + 2) % 2;
        if (parity && *parity != p) throw std::invalid_argument("Maslov gradings span two cosets");
        parity = p;
    }
}

LaurentPoly unit_step() { return parse_laurent("t^{-1/2} - t^{1/2}"); }

}  // namespace

LaurentPoly euler_two_variable(const BigradedModule& m) {
    require_single_coset(m);
    LaurentPoly p({"t1", "t2"});
    for (auto& [g, r] : m.ranks) p.add_term({g.a1.doubled(), g.a2.doubled()}, Rational(maslov_sign(g.maslov) * r));
    return p;
}

std::optional<LaurentPoly> divide_by_unit_step(const LaurentPoly& p) {
    LaurentPoly q({"t"}), r = p.renamed("t");
    if (r.is_zero()) return q;
    int64_t floor = r.bottom_degree()->doubled();
    while (!r.is_zero()) {
        auto top = *r.top_degree();
        if (top.doubled() - 1 < floor) return std::nullopt;
        Rational c = r.coeff(top);
        q.add_term({top.doubled() - 1, 0}, c);
        LaurentPoly sub({"t"});
        sub.add_term({top.doubled(), 0}, c);
        sub.add_term({top.doubled() - 2, 0}, -c);
        r = r - sub;
    }
    return q;
}

AlexanderResult alexander_single(const BigradedModule& m, ConwayRoute route) {
    require_single_coset(m);
    AlexanderResult out{LaurentPoly({"t"}), LaurentPoly({"t"}), ""};
    if (route == ConwayRoute::Reversed) {
        for (auto& [g, r] : m.ranks) {
            int s = maslov_sign(g.maslov) * (g.a2.doubled() % 2 == 0 ? 1 : -1);
            out.cofactor.add_term({(g.a1 - g.a2).doubled(), 0}, Rational(s * r));
        }
        out.delta = laurent_mul(unit_step(), out.cofactor);
        out.factored = "(t^{-1/2} - t^{1/2})(" + out.cofactor.str() + ")";
        return out;
    }
    for (auto& [g, r] : m.ranks) out.cofactor.add_term({(g.a1 + g.a2).doubled(), 0}, Rational(maslov_sign(g.maslov) * r));
    auto q = divide_by_unit_step(out.cofactor);
    if (!q) throw std::invalid_argument("chi(t,t) is not divisible by t^{1/2} - t^{-1/2}");
    out.delta = *q;
    out.factored = "(" + out.cofactor.str() + ")/(t^{1/2} - t^{-1/2})";
    return out;
}

ConwayResult conway(const BigradedModule& m, ConwayRoute route) {
    ConwayResult out;
    out.delta = alexander_single(m, route).delta;
    out.nabla_t = out.delta.substitute_power(2);
    auto rw = rewrite_in_z(out.nabla_t);
    if (!rw.ok) throw std::domain_error("nabla(t - t^{-1}) is not an odd antisymmetric polynomial: residual " + rw.residual.str());
    out.nabla = rw.q;
    return out;
}

std::optional<Rational> linking_from_conway(const LaurentPoly& p, LinkingMode mode) {
    if (p.is_zero()) return std::nullopt;
    if (mode == LinkingMode::StrictHoste) return p.coeff(HalfInt(1));
    return p.coeff(*p.bottom_degree());
}

std::optional<LaurentPoly> alexander_from_hfk(const HfkRanks& h, int n_components) {
    LaurentPoly chi({"t"});
    for (auto& [k, r] : h) chi.add_term({k.first.doubled(), 0}, Rational(maslov_sign(k.second) * r));
    for (int i = 1; i < n_components; ++i) {
        auto q = divide_by_unit_step(chi);
        if (!q) return std::nullopt;
        chi = *q;
    }
    return chi;
}

std::string FloerPolytope::str() const {
    std::string s = "[";
    for (size_t i = 0; i < vertices.size(); ++i) {
        if (i) s += ", ";
        s += "(" + vertices[i].first.str() + "," + vertices[i].second.str() + ")";
    }
    return s + "]";
}

namespace {

using IPt = std::pair<int64_t, int64_t>;

int64_t cross(const IPt& o, const IPt& a, const IPt& b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

// Andrew's monotone chain on doubled coordinates, collinear points dropped.
std::vector<IPt> hull(std::vector<IPt> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() <= 2) return pts;
    std::vector<IPt> h(2 * pts.size());
    size_t k = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

std::vector<IPt> support_doubled(const BigradedModule& m) {
    std::vector<IPt> pts;
    for (auto& [a1, a2] : m.support()) pts.push_back({a1.doubled(), a2.doubled()});
    return pts;
}

// y-range of {(x0, y)} inside the convex polygon
std::optional<std::pair<Rational, Rational>> vertical_range(const std::vector<Point2>& poly, const Rational& x0) {
    std::vector<Rational> ys;
    size_t n = poly.size();
    for (size_t i = 0; i < n; ++i) {
        const Point2& p = poly[i];
        const Point2& q = poly[(i + 1) % n];
        if (p.x == x0) ys.push_back(p.y);
        if ((p.x - x0) * (q.x - x0) < 0) ys.push_back(p.y + (q.y - p.y) * (x0 - p.x) / (q.x - p.x));
    }
    if (ys.empty()) return std::nullopt;
    auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
    return std::make_pair(*lo, *hi);
}

}  // namespace

FloerPolytope floer_polytope(const BigradedModule& m) {
    if (m.empty()) throw std::invalid_argument("floer_polytope of an empty module");
    FloerPolytope fp;
    for (auto& [x, y] : hull(support_doubled(m))) fp.vertices.push_back({HalfInt::from_doubled(x), HalfInt::from_doubled(y)});
    return fp;
}

std::string DualThurstonSlice::str() const {
    if (empty) return "axis " + std::to_string(axis) + ": [0,0] (empty)";
    return "axis " + std::to_string(axis) + ": [" + rational_to_string(lo) + "," + rational_to_string(hi) + "]";
}

DualThurstonSlice dual_thurston_axis_slice(const BigradedModule& m, int axis, const Rational& scale) {
    if (axis != 1 && axis != 2) throw std::invalid_argument("axis must be 1 or 2");
    auto sup = m.support();
    for (auto& [a1, a2] : sup)
        if (!sup.count({-a1, -a2})) throw std::invalid_argument("support is not symmetric at (" + a1.str() + "," + a2.str() + ")");
    DualThurstonSlice out;
    out.axis = axis;
    if (sup.empty()) {
        out.empty = true;
        return out;
    }
    // put the slice direction on the y coordinate
    std::vector<Point2> poly;
    for (auto& [x, y] : hull(support_doubled(m))) {
        Rational px = scale * Rational(x) / 2, py = scale * Rational(y) / 2;
        poly.push_back(axis == 2 ? Point2{px, py} : Point2{py, px});
    }
    Rational lo, hi;
    bool first = true;
    for (int e : {-1, 1}) {
        auto r = vertical_range(poly, Rational(e));
        if (!r) {
            out.empty = true;
            return out;
        }
        Rational l = r->first + 1, h = r->second - 1;
        if (first || l > lo) lo = l;
        if (first || h < hi) hi = h;
        first = false;
    }
    if (lo > hi) {
        out.empty = true;
        return out;
    }
    out.lo = lo;
    out.hi = hi;
    return out;
}

std::vector<HalfInt> delta_spectrum(const BigradedModule& m) {
    std::vector<HalfInt> out;
    for (auto& [g, r] : m.ranks)
        for (int64_t k = 0; k < r; ++k) out.push_back(g.delta());
    std::sort(out.begin(), out.end());
    return out;
}

bool is_thin(const BigradedModule& m) {
    auto d = delta_spectrum(m);
    return d.empty() || d.front() == d.back();
}

}  // namespace ff
