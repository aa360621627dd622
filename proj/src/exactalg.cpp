#include "floerforge/exactalg.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace ff {

std::string field_name(Field f) { return f == Field::GF2 ? "GF2" : "Q"; }

Field parse_field(const std::string& s) {
    std::string l;
    for (char c : s) l.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (l == "gf2" || l == "f2" || l == "z2") return Field::GF2;
    if (l == "q") return Field::Q;
    throw std::invalid_argument("unknown field '" + s + "'");
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rational(n, d);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational '" + s + "'");
    }
}

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

HalfInt half(int64_t doubled) { return HalfInt::from_doubled(doubled); }

HalfInt HalfInt::parse(const std::string& s) {
    Rational r = parse_rational(s);
    Rational twice = r * 2;
    if (denominator(twice) != 1) throw std::invalid_argument("not a half-integer: " + s);
    return from_doubled(static_cast<int64_t>(numerator(twice)));
}

int64_t HalfInt::floor() const {
    return d_ >= 0 ? d_ / 2 : -((-d_ + 1) / 2);
}

std::string HalfInt::str() const {
    if (is_integer()) return std::to_string(d_ / 2);
    return std::to_string(d_) + "/2";
}

Rational Arith::norm(const Rational& a) const {
    if (f == Field::Q) return a;
    // reduce a/b mod 2, b must be odd
    BigInt n = numerator(a), d = denominator(a);
    if (d % 2 == 0) throw std::domain_error("rational with even denominator has no GF(2) image");
    BigInt r = n % 2;
    if (r < 0) r += 2;
    return Rational(r);
}
Rational Arith::add(const Rational& a, const Rational& b) const {
    if (f == Field::GF2) return (a == b) ? Rational(0) : Rational(1);
    return a + b;
}
Rational Arith::sub(const Rational& a, const Rational& b) const { return add(a, neg(b)); }
Rational Arith::mul(const Rational& a, const Rational& b) const { return a * b; }
Rational Arith::neg(const Rational& a) const { return f == Field::GF2 ? a : Rational(-a); }
Rational Arith::inv(const Rational& a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return f == Field::GF2 ? a : Rational(1) / a;
}

FieldScalar::FieldScalar(Field f, const Rational& v) : f_(f), v_(Arith{f}.norm(v)) {}

FieldScalar FieldScalar::parse(Field f, const std::string& s) { return FieldScalar(f, parse_rational(s)); }

void FieldScalar::check(const FieldScalar& o) const {
    if (f_ != o.f_) throw std::invalid_argument("field mismatch");
}
FieldScalar FieldScalar::operator+(const FieldScalar& o) const { check(o); return {f_, Arith{f_}.add(v_, o.v_)}; }
FieldScalar FieldScalar::operator-(const FieldScalar& o) const { check(o); return {f_, Arith{f_}.sub(v_, o.v_)}; }
FieldScalar FieldScalar::operator*(const FieldScalar& o) const { check(o); return {f_, v_ * o.v_}; }
FieldScalar FieldScalar::operator-() const { return {f_, Arith{f_}.neg(v_)}; }
FieldScalar FieldScalar::inverse() const { return {f_, Arith{f_}.inv(v_)}; }

void SparseMatrix::set(size_t r, size_t c, const Rational& v) {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index");
    Rational x = Arith{f_}.norm(v);
    if (x == 0) e_.erase({r, c});
    else e_[{r, c}] = x;
}

void SparseMatrix::add(size_t r, size_t c, const Rational& v) {
    set(r, c, Arith{f_}.add(get(r, c), Arith{f_}.norm(v)));
}

Rational SparseMatrix::get(size_t r, size_t c) const {
    auto it = e_.find({r, c});
    return it == e_.end() ? Rational(0) : it->second;
}

std::vector<SparseVec> SparseMatrix::row_vectors() const {
    std::vector<SparseVec> rows(rows_);
    for (auto& [rc, v] : e_) rows[rc.first][rc.second] = v;
    return rows;
}

namespace {

// a <- a - c*b
void axpy(SparseVec& a, const Rational& c, const SparseVec& b, const Arith& ar) {
    for (auto& [k, v] : b) {
        Rational nv = ar.sub(a.count(k) ? a[k] : Rational(0), ar.mul(c, v));
        if (nv == 0) a.erase(k);
        else a[k] = nv;
    }
}

}  // namespace

Echelon echelon(std::vector<SparseVec> rows, Field f) {
    Arith ar{f};
    Echelon out;
    // pivot rows indexed by their leading column
    std::map<size_t, SparseVec> piv;
    for (auto& r : rows) {
        for (auto it = r.begin(); it != r.end();) {
            if (it->second == 0) it = r.erase(it);
            else ++it;
        }
        while (!r.empty()) {
            size_t lead = r.begin()->first;
            auto p = piv.find(lead);
            if (p == piv.end()) {
                Rational s = ar.inv(r.begin()->second);
                for (auto& kv : r) kv.second = ar.mul(kv.second, s);
                piv.emplace(lead, std::move(r));
                break;
            }
            Rational c = r.begin()->second;
            axpy(r, c, p->second, ar);
        }
    }
    // back substitution to reduced form, highest pivot first
    for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
        for (auto jt = std::next(it); jt != piv.rend(); ++jt) {
            auto f2 = jt->second.find(it->first);
            if (f2 != jt->second.end()) {
                Rational c = f2->second;
                axpy(jt->second, c, it->second, ar);
            }
        }
    }
    for (auto& [c, r] : piv) {
        out.pivots.push_back(c);
        out.rows.push_back(std::move(r));
    }
    return out;
}

RankKernel rank_and_kernel(const SparseMatrix& m) {
    Echelon e = echelon(m.row_vectors(), m.field());
    RankKernel rk;
    rk.rank = e.pivots.size();
    std::vector<bool> is_piv(m.cols(), false);
    for (size_t c : e.pivots) is_piv[c] = true;
    Arith ar{m.field()};
    for (size_t free = 0; free < m.cols(); ++free) {
        if (is_piv[free]) continue;
        SparseVec v;
        v[free] = 1;
        for (size_t i = 0; i < e.pivots.size(); ++i) {
            auto it = e.rows[i].find(free);
            if (it != e.rows[i].end()) v[e.pivots[i]] = ar.neg(it->second);
        }
        rk.kernel.push_back(std::move(v));
    }
    return rk;
}

size_t rank_of(const SparseMatrix& m) { return echelon(m.row_vectors(), m.field()).pivots.size(); }

LaurentPoly::LaurentPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
    if (vars_.empty() || vars_.size() > 2) throw std::invalid_argument("LaurentPoly takes 1 or 2 variables");
}

LaurentPoly LaurentPoly::constant(const Rational& c, std::vector<std::string> vars) {
    LaurentPoly p(std::move(vars));
    p.add_term({0, 0}, c);
    return p;
}

LaurentPoly LaurentPoly::monomial(const Rational& c, HalfInt e, const std::string& var) {
    LaurentPoly p({var});
    p.add_term({e.doubled(), 0}, c);
    return p;
}

LaurentPoly LaurentPoly::monomial2(const Rational& c, HalfInt e1, HalfInt e2, std::vector<std::string> vars) {
    LaurentPoly p(std::move(vars));
    p.add_term({e1.doubled(), e2.doubled()}, c);
    return p;
}

void LaurentPoly::add_term(const Exps& e, const Rational& c) {
    if (c == 0) return;
    Exps k = e;
    if (nvars() == 1) k[1] = 0;
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational LaurentPoly::coeff(HalfInt e) const {
    auto it = terms_.find({e.doubled(), 0});
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational LaurentPoly::coeff2(HalfInt e1, HalfInt e2) const {
    auto it = terms_.find({e1.doubled(), e2.doubled()});
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<HalfInt> LaurentPoly::top_degree() const {
    if (terms_.empty()) return std::nullopt;
    return half(terms_.begin()->first[0]);
}

std::optional<HalfInt> LaurentPoly::bottom_degree() const {
    if (terms_.empty()) return std::nullopt;
    return half(terms_.rbegin()->first[0]);
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    if (nvars() != o.nvars()) throw std::invalid_argument("variable-count mismatch");
    LaurentPoly r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + (-o); }

LaurentPoly LaurentPoly::operator-() const { return scaled(-1); }

LaurentPoly LaurentPoly::scaled(const Rational& c) const {
    LaurentPoly r(vars_);
    for (auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

bool LaurentPoly::operator==(const LaurentPoly& o) const {
    return nvars() == o.nvars() && terms_ == o.terms_;
}

LaurentPoly LaurentPoly::substitute_power(int64_t k) const {
    if (nvars() != 1) throw std::invalid_argument("substitute_power needs one variable");
    LaurentPoly r(vars_);
    for (auto& [e, c] : terms_) r.add_term({e[0] * k, 0}, c);
    return r;
}

LaurentPoly LaurentPoly::renamed(const std::string& var) const {
    if (nvars() != 1) throw std::invalid_argument("renamed needs one variable");
    LaurentPoly r({var});
    for (auto& [e, c] : terms_) r.add_term(e, c);
    return r;
}

Rational LaurentPoly::evaluate_at_one() const {
    Rational s = 0;
    for (auto& [e, c] : terms_) s += c;
    return s;
}

bool LaurentPoly::is_odd() const {
    for (auto& [e, c] : terms_) {
        if (e[0] % 2 != 0) return false;  // half-integer exponent
        if ((e[0] / 2) % 2 == 0) return false;
        if (nvars() == 2) return false;
    }
    return true;
}

bool LaurentPoly::is_antisymmetric() const {
    for (auto& [e, c] : terms_) {
        Exps m = {-e[0], -e[1]};
        auto it = terms_.find(m);
        if (it == terms_.end() || it->second != -c) return false;
    }
    return true;
}

namespace {

std::string exponent_text(int64_t doubled) {
    if (doubled % 2 == 0) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

std::string var_power(const std::string& v, int64_t doubled) {
    if (doubled == 0) return "";
    if (doubled == 2) return v;
    return v + "^{" + exponent_text(doubled) + "}";
}

}  // namespace

std::string LaurentPoly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto& [e, c] : terms_) {
        std::string mono = var_power(vars_[0], e[0]);
        if (nvars() == 2) {
            std::string m2 = var_power(vars_[1], e[1]);
            if (!mono.empty() && !m2.empty()) mono += " ";
            mono += m2;
        }
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        std::string coef = (a == 1 && !mono.empty()) ? "" : rational_to_string(a);
        if (first) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        out += coef + mono;
        first = false;
    }
    return out;
}

LaurentPoly laurent_mul(const LaurentPoly& p, const LaurentPoly& q) {
    if (p.nvars() != q.nvars()) throw std::invalid_argument("variable-count mismatch");
    LaurentPoly r(p.vars());
    for (auto& [e1, c1] : p.terms())
        for (auto& [e2, c2] : q.terms()) r.add_term({e1[0] + e2[0], e1[1] + e2[1]}, c1 * c2);
    return r;
}

LaurentPoly laurent_pow(const LaurentPoly& p, unsigned k) {
    LaurentPoly r = LaurentPoly::constant(1, p.vars());
    for (unsigned i = 0; i < k; ++i) r = laurent_mul(r, p);
    return r;
}

// Accepts sums of terms like "-3t^{11}", "2t^-1", "t^{3/2}", "4", "+u".
LaurentPoly parse_laurent(const std::string& src, const std::string& var) {
    std::string s;
    for (char c : src)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    LaurentPoly p({var});
    if (s.empty() || s == "0") return p;
    size_t i = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("cannot parse polynomial '" + src + "': " + why);
    };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            if (s[i] == '-') sign = -1;
            ++i;
        }
        size_t j = i;
        while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
        Rational c = 1;
        bool has_coef = j > i;
        if (has_coef) c = parse_rational(s.substr(i, j - i));
        i = j;
        int64_t ed = 0;
        if (s.compare(i, var.size(), var) == 0) {
            i += var.size();
            ed = 2;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::string ex;
                if (i < s.size() && s[i] == '{') {
                    size_t close = s.find('}', i);
                    if (close == std::string::npos) fail("unbalanced brace");
                    ex = s.substr(i + 1, close - i - 1);
                    i = close + 1;
                } else {
                    size_t k = i;
                    if (k < s.size() && s[k] == '-') ++k;
                    while (k < s.size() && (std::isdigit(static_cast<unsigned char>(s[k])) || s[k] == '/')) ++k;
                    ex = s.substr(i, k - i);
                    i = k;
                }
                ed = HalfInt::parse(ex).doubled();
            }
        } else if (!has_coef) {
            fail("unexpected character");
        }
        if (i < s.size() && s[i] != '+' && s[i] != '-') fail("trailing text");
        p.add_term({ed, 0}, c * sign);
    }
    return p;
}

LaurentPoly substitute_z(const LaurentPoly& q) {
    LaurentPoly z = LaurentPoly::monomial(1, 1, "t") - LaurentPoly::monomial(1, -1, "t");
    LaurentPoly r({"t"});
    for (auto& [e, c] : q.terms()) {
        if (e[0] < 0 || e[0] % 2 != 0) throw std::invalid_argument("substitute_z needs a polynomial in u");
        r = r + laurent_pow(z, static_cast<unsigned>(e[0] / 2)).scaled(c);
    }
    return r;
}

RewriteResult rewrite_in_z(const LaurentPoly& p) {
    if (p.nvars() != 1) throw std::invalid_argument("rewrite_in_z needs one variable");
    RewriteResult res;
    LaurentPoly rest = p.renamed("t");
    LaurentPoly z = LaurentPoly::monomial(1, 1, "t") - LaurentPoly::monomial(1, -1, "t");
    while (!rest.is_zero()) {
        HalfInt k = *rest.top_degree();
        if (!k.is_integer() || k.doubled() < 0) {
            res.residual = rest;
            return res;
        }
        Rational c = rest.coeff(k);
        int64_t deg = k.doubled() / 2;
        res.q.add_term({2 * deg, 0}, c);
        rest = rest - laurent_pow(z, static_cast<unsigned>(deg)).scaled(c);
    }
    res.ok = true;
    return res;
}

}  // namespace ff
