#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "floerforge/complexes.hpp"
#include "floerforge/constraints.hpp"

namespace ff {

struct KhEntry {
    int64_t free = 0;
    std::vector<int64_t> torsion;  // prime power orders
};

struct KhTable {
    std::map<std::pair<int, int>, KhEntry> entries;  // (i, j)

    void add_free(int i, int j, int64_t r = 1);
    void add_torsion(int i, int j, int64_t order);
    int64_t torsion_count() const;
};

json kh_to_json(const KhTable& t);
KhTable kh_from_json(const json& j);

// Invalid tables: non prime power torsion, negative ranks, mixed j parity.
std::vector<std::string> validate_kh(const KhTable& t);

using KhRanks = std::map<std::pair<int, int>, int64_t>;
KhRanks uct_ranks(const KhTable& t, Field f);
int64_t kh_total(const KhRanks& r);
int64_t kh_total(const KhTable& t, Field f);

int64_t reduced_rank_f2(const KhTable& t);
int64_t dowlin_bound(int64_t reduced_rank, int n_components);

// ranks keyed by i - j
using DeltaRanks = std::map<int, int64_t>;
DeltaRanks ranks_by_i_minus_j(const KhTable& t, Field f = Field::Q);
DeltaRanks kh_tensor(const DeltaRanks& a, const DeltaRanks& b);
std::string delta_ranks_str(const DeltaRanks& r);  // "Q_{-7}+Q^2_{-4}+..."

struct BatsonSeedResult {
    ConstraintReport report;
    std::vector<int> violations;  // every l with rank^l(link) < rank^{l+2lk}(tensor)
};
// The split tensor is taken over the components, lk is the linking number between them.
BatsonSeedResult batson_seed_check(const DeltaRanks& link, const DeltaRanks& split_tensor, int64_t lk);

struct LeeInference {
    std::vector<int> gradings;               // homological gradings with Q-rank >= 2
    int max_components = 0;                  // bounded by the number of such gradings
    std::optional<int64_t> linking;          // half the spread, when there are exactly two
};
LeeInference lee_inference(const KhTable& t);
ConstraintReport lee_constraint(const KhTable& t, int n_components, std::optional<int64_t> lk);

struct ThinData {
    bool thin = false;
    std::vector<int> diagonals;  // j - 2i values over Q
    std::optional<int64_t> s;
    std::optional<int64_t> chi_bound;  // chi >= chi_bound
};
ThinData kh_thin_s_chi(const KhTable& t);

}  // namespace ff
