#pragma once

// Shared generators and brute-force oracles for the test suites.

#include <random>

#include "floerforge/complexes.hpp"
#include "floerforge/decomposition.hpp"

namespace fftest {

using namespace ff;

inline HalfInt rand_half(std::mt19937_64& rng, int lo, int hi) {
    return HalfInt(lo + static_cast<int>(rng() % static_cast<uint64_t>(hi - lo + 1)));
}

// Random multiset of five-family summands with at most max_gens generators in total.
inline Decomposition random_decomposition(std::mt19937_64& rng, int max_gens, int max_l, int window) {
    Decomposition d;
    int used = 0;
    int target = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_gens));
    int guard = 0;
    while (used < target && guard++ < 50) {
        SummandKind kinds[] = {SummandKind::B, SummandKind::V, SummandKind::H, SummandKind::X, SummandKind::Y};
        SummandKind k = kinds[rng() % 5];
        int l = 0;
        if (k == SummandKind::V || k == SummandKind::H) l = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_l));
        if (k == SummandKind::X) l = 1 + static_cast<int>(rng() % static_cast<uint64_t>(max_l));
        if (k == SummandKind::Y) l = static_cast<int>(rng() % static_cast<uint64_t>(max_l + 1));
        SummandDescriptor s{k, rand_half(rng, -2, 2), l, rand_half(rng, -window, window), rand_half(rng, -window, window)};
        if (k == SummandKind::X || k == SummandKind::Y) {
            // centre shifts carry the staircase parity
            s.i = s.i + half(l % 2);
            s.j = s.j + half(l % 2);
        }
        if (used + s.rank() > max_gens) continue;
        used += s.rank();
        d.summands.push_back(s);
    }
    d.normalize();
    return d;
}

// Valid complex with mixed arrow types: a direct sum of summands plus acyclic
// grading-preserving pairs, then scrambled by filtered basis changes.
inline BifilteredComplex random_valid_complex(std::mt19937_64& rng, Field f, int max_gens = 10) {
    Decomposition d = random_decomposition(rng, std::max(1, max_gens - 2), 2, 2);
    BifilteredComplex c = realize(d, f);
    int pairs = static_cast<int>(rng() % 2);
    for (int k = 0; k < pairs && static_cast<int>(c.size()) + 2 <= max_gens; ++k) {
        Grading g{rand_half(rng, -2, 2), rand_half(rng, -2, 2), rand_half(rng, -2, 2)};
        size_t a = c.add_generator("acyc" + std::to_string(k) + "a", g);
        size_t b = c.add_generator("acyc" + std::to_string(k) + "b", g.shifted(0, 0, -1));
        c.add_arrow(a, b, 1);
    }
    return random_filtered_scramble(c, rng, 25);
}

inline size_t dense_rank(std::vector<std::vector<Rational>> a, Field f) {
    size_t rank = 0, rows = a.size(), cols = rows ? a[0].size() : 0;
    auto red = [f](const Rational& x) -> Rational {
        if (f == Field::Q) return x;
        BigInt n = numerator(x) % 2;
        return n == 0 ? Rational(0) : Rational(1);
    };
    for (auto& r : a)
        for (auto& x : r) x = red(x);
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t p = rank;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[rank]);
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            Rational fct = a[r][c] / a[rank][c];
            for (size_t k = 0; k < cols; ++k) a[r][k] = red(a[r][k] - fct * a[rank][k]);
        }
        ++rank;
    }
    return rank;
}

// Homology of the subcomplex of arrows accepted by keep, per block, by dense linear algebra.
template <class KeyFn, class Keep>
std::map<Grading, int64_t> dense_homology(const BifilteredComplex& c, KeyFn key, Keep keep) {
    std::map<Grading, std::vector<size_t>> blocks;
    for (size_t i = 0; i < c.size(); ++i) blocks[key(c.gen(i).gr)].push_back(i);
    std::map<Grading, int64_t> out;
    auto rank_between = [&](const std::vector<size_t>& s, const std::vector<size_t>& t) {
        std::vector<std::vector<Rational>> m(s.size(), std::vector<Rational>(t.size(), Rational(0)));
        for (size_t a = 0; a < s.size(); ++a)
            for (size_t b = 0; b < t.size(); ++b) {
                auto it = c.differential().find({s[a], t[b]});
                if (it != c.differential().end() && keep(c.gen(s[a]).gr, c.gen(t[b]).gr)) m[a][b] = it->second;
            }
        return s.empty() || t.empty() ? size_t(0) : dense_rank(m, c.field());
    };
    for (auto& [g, idx] : blocks) {
        Grading down = g.shifted(0, 0, -1), up = g.shifted(0, 0, 1);
        std::vector<size_t> none;
        auto dn = blocks.count(down) ? blocks[down] : none;
        auto upb = blocks.count(up) ? blocks[up] : none;
        int64_t h = static_cast<int64_t>(idx.size()) - static_cast<int64_t>(rank_between(idx, dn)) -
                    static_cast<int64_t>(rank_between(upb, idx));
        if (h) out[g] = h;
    }
    return out;
}

inline BigradedModule dense_associated_graded(const BifilteredComplex& c) {
    BigradedModule m;
    auto h = dense_homology(
        c, [](const Grading& g) { return g; }, [](const Grading& a, const Grading& b) { return a.a1 == b.a1 && a.a2 == b.a2; });
    for (auto& [g, r] : h) m.add(g, r);
    return m;
}

inline std::map<HalfInt, int64_t> dense_total(const BifilteredComplex& c) {
    auto h = dense_homology(
        c, [](const Grading& g) { return Grading{0, 0, g.maslov}; }, [](const Grading&, const Grading&) { return true; });
    std::map<HalfInt, int64_t> out;
    for (auto& [g, r] : h) out[g.maslov] = r;
    return out;
}

inline Decomposition t28_decomposition() {
    return parse_decomposition({"Y[0]^0[2,2]", "Y[-1]^1[3/2,3/2]", "B[-4][0,0]", "B[-6][-1,-1]", "B[-8][-2,-2]"});
}

inline BigradedModule module_of_strings(const std::vector<std::string>& items) { return module_of(parse_decomposition(items)); }

// Hypothetical modules whose Conway polynomials are printed in the detection arguments.
// Six-term variant of T(2,8): two staircase ends moved out to (2,3),(3,2) and their mirrors, plus a box pair.
inline BigradedModule golden_module_a() {
    BigradedModule m;
    m.add({2, 3, 0}, 1);
    m.add({3, 2, 0}, 1);
    m.add({2, 2, -1}, 2);
    m.add({-2, -2, -9}, 2);
    m.add({-2, -3, -10}, 1);
    m.add({-3, -2, -10}, 1);
    for (auto& [g, r] : module_of_strings({"B[-6][-3,2]", "B[-6][2,-3]"}).ranks) m.add(g, r);
    return m;
}

inline BigradedModule golden_module_b() {
    return module_of_strings({"Y[0]^0[2,2]", "Y[-1]^1[3/2,3/2]", "B[-8][-2,-2]", "B[-5][-2,1]", "B[-5][1,-2]"});
}

inline BigradedModule golden_module_c() {
    return module_of_strings({"Y[0]^0[5/2,5/2]", "Y[-1]^1[2,2]", "B[-10][-5/2,-5/2]", "B[-6][-1/2,-1/2]",
                              "B[-6][3/2,-5/2]", "B[-6][-5/2,3/2]"});
}

}  // namespace fftest
