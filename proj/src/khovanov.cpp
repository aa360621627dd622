#include "floerforge/khovanov.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ff {

void KhTable::add_free(int i, int j, int64_t r) {
    if (r < 0) throw std::invalid_argument("negative free rank");
    if (r) entries[{i, j}].free += r;
}

void KhTable::add_torsion(int i, int j, int64_t order) { entries[{i, j}].torsion.push_back(order); }

int64_t KhTable::torsion_count() const {
    int64_t n = 0;
    for (auto& [k, e] : entries) n += static_cast<int64_t>(e.torsion.size());
    return n;
}

json kh_to_json(const KhTable& t) {
    json arr = json::array();
    for (auto& [k, e] : t.entries)
        arr.push_back({{"i", k.first}, {"j", k.second}, {"free", e.free}, {"torsion", e.torsion}});
    return {{"entries", arr}};
}

KhTable kh_from_json(const json& j) {
    if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array())
        throw std::invalid_argument("Kh table needs an \"entries\" array");
    KhTable t;
    for (auto& e : j["entries"]) {
        int i = e.at("i").get<int>(), jj = e.at("j").get<int>();
        t.add_free(i, jj, e.value("free", int64_t(0)));
        if (e.contains("torsion"))
            for (auto& o : e["torsion"]) t.add_torsion(i, jj, o.get<int64_t>());
        if (!t.entries.count({i, jj})) t.entries[{i, jj}] = {};
    }
    return t;
}

namespace {

std::optional<int64_t> prime_of_power(int64_t q) {
    if (q < 2) return std::nullopt;
    int64_t p = 2;
    while (p * p <= q && q % p) ++p;
    if (q % p) p = q;
    while (q % p == 0) q /= p;
    if (q != 1) return std::nullopt;
    return p;
}

}  // namespace

std::vector<std::string> validate_kh(const KhTable& t) {
    std::vector<std::string> out;
    std::optional<int> parity;
    for (auto& [k, e] : t.entries) {
        std::string at = "(" + std::to_string(k.first) + "," + std::to_string(k.second) + ")";
        if (e.free < 0) out.push_back("negative free rank at " + at);
        for (auto q : e.torsion)
            if (!prime_of_power(q)) out.push_back("torsion order " + std::to_string(q) + " at " + at + " is not a prime power");
        if (e.free == 0 && e.torsion.empty()) continue;
        int p = ((k.second % 2) + 2) % 2;
        if (parity && *parity != p) out.push_back("j parity changes at " + at);
        parity = p;
    }
    return out;
}

KhRanks uct_ranks(const KhTable& t, Field f) {
    KhRanks r;
    for (auto& [k, e] : t.entries) {
        if (e.free) r[k] += e.free;
        if (f != Field::GF2) continue;
        for (auto q : e.torsion)
            if (prime_of_power(q) == 2) {
                // Tor term lands one homological grading down
                r[k] += 1;
                r[{k.first - 1, k.second}] += 1;
            }
    }
    return r;
}

int64_t kh_total(const KhRanks& r) {
    int64_t s = 0;
    for (auto& [k, v] : r) s += v;
    return s;
}

int64_t kh_total(const KhTable& t, Field f) { return kh_total(uct_ranks(t, f)); }

int64_t reduced_rank_f2(const KhTable& t) {
    int64_t total = kh_total(t, Field::GF2);
    if (total % 2) throw std::domain_error("odd GF(2) rank " + std::to_string(total) + " has no reduced half");
    return total / 2;
}

int64_t dowlin_bound(int64_t reduced_rank, int n_components) {
    if (n_components < 1) throw std::invalid_argument("need at least one component");
    return reduced_rank << (n_components - 1);
}

DeltaRanks ranks_by_i_minus_j(const KhTable& t, Field f) {
    DeltaRanks out;
    for (auto& [k, r] : uct_ranks(t, f))
        if (r) out[k.first - k.second] += r;
    return out;
}

DeltaRanks kh_tensor(const DeltaRanks& a, const DeltaRanks& b) {
    DeltaRanks out;
    for (auto& [x, r] : a)
        for (auto& [y, s] : b)
            if (r * s) out[x + y] += r * s;
    return out;
}

std::string delta_ranks_str(const DeltaRanks& r) {
    std::string s;
    for (auto& [l, n] : r) {
        if (!n) continue;
        if (!s.empty()) s += "+";
        s += "Q";
        if (n != 1) s += "^" + std::to_string(n);
        s += "_{" + std::to_string(l) + "}";
    }
    return s.empty() ? "0" : s;
}

BatsonSeedResult batson_seed_check(const DeltaRanks& link, const DeltaRanks& split_tensor, int64_t lk) {
    BatsonSeedResult out;
    out.report.rule = "batson-seed";
    auto at = [](const DeltaRanks& r, int64_t l) {
        auto it = r.find(static_cast<int>(l));
        return it == r.end() ? int64_t(0) : it->second;
    };
    for (auto& [g, r] : split_tensor) {
        int64_t l = g - 2 * lk;
        if (at(link, l) < r) out.violations.push_back(static_cast<int>(l));
    }
    std::sort(out.violations.begin(), out.violations.end());
    if (out.violations.empty()) {
        out.report.verdict = Verdict::Pass;
        return out;
    }
    int l = out.violations.front();
    out.report.verdict = Verdict::Fail;
    out.report.witness = "l=" + std::to_string(l) + ": rank^{i-j=" + std::to_string(l) + "}(link)=" +
                         std::to_string(at(link, l)) + " < rank^{i-j=" + std::to_string(l + 2 * lk) +
                         "}(tensor)=" + std::to_string(at(split_tensor, l + 2 * lk));
    return out;
}

LeeInference lee_inference(const KhTable& t) {
    std::map<int, int64_t> by_i;
    for (auto& [k, r] : uct_ranks(t, Field::Q)) by_i[k.first] += r;
    LeeInference out;
    int64_t even = 0;
    for (auto& [i, r] : by_i) {
        if (r >= 2) out.gradings.push_back(i);
        even += r - r % 2;
    }
    // Lee classes come in pairs per grading and total 2^n
    while (even >= (int64_t(2) << out.max_components)) ++out.max_components;
    if (out.gradings.size() == 2 && out.gradings.front() == 0 && out.gradings.back() % 2 == 0)
        out.linking = out.gradings.back() / 2;
    else if (out.gradings.size() == 2 && out.gradings.back() == 0 && out.gradings.front() % 2 == 0)
        out.linking = out.gradings.front() / 2;
    return out;
}

ConstraintReport lee_constraint(const KhTable& t, int n, std::optional<int64_t> lk) {
    ConstraintReport r;
    r.rule = "lee";
    if (n > 2) {
        r.verdict = Verdict::Inapplicable;
        r.witness = "only knots and two-component links";
        return r;
    }
    std::map<int, int64_t> by_i;
    for (auto& [k, v] : uct_ranks(t, Field::Q)) by_i[k.first] += v;
    auto at = [&](int64_t i) { return by_i.count(static_cast<int>(i)) ? by_i[static_cast<int>(i)] : int64_t(0); };
    std::map<int64_t, int64_t> need;
    need[0] += 2;
    if (n == 2) {
        if (!lk) {
            r.verdict = Verdict::Inapplicable;
            r.witness = "linking number not declared";
            return r;
        }
        need[2 * *lk] += 2;
    }
    std::string w = "Lee gradings {";
    bool first = true;
    for (auto& [i, k] : need) {
        w += (first ? "" : ",") + std::to_string(i);
        first = false;
    }
    w += "}";
    for (auto& [i, k] : need)
        if (at(i) < k) {
            r.verdict = Verdict::Fail;
            r.witness = w + ": Q-rank " + std::to_string(at(i)) + " at i=" + std::to_string(i) + " < " + std::to_string(k);
            return r;
        }
    auto inf = lee_inference(t);
    if (inf.max_components < n) {
        r.verdict = Verdict::Fail;
        r.witness = w + ": table supports at most " + std::to_string(inf.max_components) + " components";
        return r;
    }
    r.verdict = Verdict::Pass;
    r.witness = w;
    return r;
}

ThinData kh_thin_s_chi(const KhTable& t) {
    ThinData out;
    std::set<int> diag;
    for (auto& [k, r] : uct_ranks(t, Field::Q))
        if (r) diag.insert(k.second - 2 * k.first);
    out.diagonals.assign(diag.begin(), diag.end());
    if (diag.empty()) return out;
    int lo = *diag.begin(), hi = *diag.rbegin();
    out.thin = hi - lo <= 2;
    if (!out.thin || lo % 2) return out;
    // support on {2k, 2k+2}
    int64_t k = lo / 2;
    out.s = k + 2;
    out.chi_bound = -2 * k;
    return out;
}

}  // namespace ff
