#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "floerforge/exactalg.hpp"

namespace ff {

using json = nlohmann::json;

struct Grading {
    HalfInt a1, a2, maslov;

    Grading shifted(HalfInt da1, HalfInt da2, HalfInt dm = 0) const { return {a1 + da1, a2 + da2, maslov + dm}; }
    HalfInt delta() const { return a1 + a2 - maslov; }
    auto operator<=>(const Grading&) const = default;
    std::string str() const;
};

struct Generator {
    std::string id;
    Grading gr;
};

// Sparse differential keyed by (source index, target index).
using Differential = std::map<std::pair<size_t, size_t>, Rational>;

class BifilteredComplex {
public:
    explicit BifilteredComplex(Field f = Field::GF2) : field_(f) {}

    Field field() const { return field_; }
    const std::vector<Generator>& generators() const { return gens_; }
    const Differential& differential() const { return diff_; }
    size_t size() const { return gens_.size(); }
    const Generator& gen(size_t i) const { return gens_.at(i); }

    size_t add_generator(std::string id, Grading gr);
    void add_arrow(size_t from, size_t to, const Rational& c);
    void add_arrow(const std::string& from, const std::string& to, const Rational& c);
    size_t index_of(const std::string& id) const;
    bool has_id(const std::string& id) const { return index_.count(id) > 0; }

    // appends a copy of o with ids prefixed, returns index offset
    size_t append(const BifilteredComplex& o, const std::string& prefix = "");

private:
    Field field_;
    std::vector<Generator> gens_;
    std::map<std::string, size_t> index_;
    Differential diff_;
};

struct BigradedModule {
    std::map<Grading, int64_t> ranks;

    void add(const Grading& g, int64_t r);
    int64_t rank_at(const Grading& g) const;
    int64_t total() const;
    bool empty() const { return ranks.empty(); }
    std::set<std::pair<HalfInt, HalfInt>> support() const;
    bool operator==(const BigradedModule& o) const { return ranks == o.ranks; }
};

// (Alexander, Maslov) -> rank
using HfkRanks = std::map<std::pair<HalfInt, HalfInt>, int64_t>;
int64_t hfk_total(const HfkRanks& h);
std::map<HalfInt, int64_t> hfk_by_alexander(const HfkRanks& h);

struct ComponentData {
    int n_components = 1;
    std::map<std::pair<int, int>, int64_t> lk;
    std::vector<bool> fibered;
    std::vector<bool> unknotted;
    std::vector<int64_t> genus_bound;

    int64_t linking(int i, int j) const;
    void set_linking(int i, int j, int64_t v);
    int64_t total_linking(int i) const;  // components are 1-based
};

struct Violation {
    std::string kind;
    std::string detail;
};

std::vector<Violation> validate_complex(const BifilteredComplex& c);
BigradedModule associated_graded_homology(const BifilteredComplex& c);
std::map<HalfInt, int64_t> total_homology(const BifilteredComplex& c);
BifilteredComplex reduce_grading_preserving(const BifilteredComplex& c);
HfkRanks project_to_hfk(const BigradedModule& m, int n_components);

// Homology ranks of the subquotient complex keeping only arrows accepted by keep,
// grouped by the block key of each generator. Arrows must map each block into one block.
using ArrowFilter = std::function<bool(const Grading&, const Grading&)>;
std::map<Grading, int64_t> homology_by_blocks(const BifilteredComplex& c,
                                              const std::function<Grading(const Grading&)>& key,
                                              const ArrowFilter& keep);

size_t rank_of_arrows(const BifilteredComplex& c, const std::vector<size_t>& sources,
                      const std::vector<size_t>& targets, const ArrowFilter& keep);

BigradedModule module_of_generators(const BifilteredComplex& c);
BigradedModule mirror_module(const BigradedModule& m, int n_components);
BigradedModule symmetry_transform(const BigradedModule& m);
BigradedModule shift_module(const BigradedModule& m, HalfInt da1, HalfInt da2, HalfInt dm);
BigradedModule tensor_V(const BigradedModule& m);

json complex_to_json(const BifilteredComplex& c);
BifilteredComplex complex_from_json(const json& j);
json module_to_json(const BigradedModule& m);
BigradedModule module_from_json(const json& j);
json hfk_to_json(const HfkRanks& h);
HfkRanks hfk_from_json(const json& j);

}  // namespace ff
