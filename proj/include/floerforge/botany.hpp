#pragma once

#include <functional>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "floerforge/catalog.hpp"
#include "floerforge/constraints.hpp"
#include "floerforge/decomposition.hpp"

namespace ff {

struct SearchWindow {
    HalfInt a1_lo, a1_hi, a2_lo, a2_hi;
    int budget = 0;  // total rank, fixed part included
    Field field = Field::GF2;
    int64_t lk = 0;  // Alexander gradings live in Z + lk/2
    HalfInt maslov_lo = HalfInt(-24), maslov_hi = HalfInt(24);

    static SearchWindow symmetric(HalfInt bound, int budget, int64_t lk);
    // "1,-2:2,3/2" style bounds, or a single number b meaning |a_i| <= b
    static SearchWindow parse(const std::string& s, int budget, int64_t lk);
    bool contains(const Grading& g) const;
    bool in_coset(HalfInt a) const;
    void check() const;  // throws on empty bounds or budget above 24
};

struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Candidate {
    Decomposition decomposition;  // full multiset, normalized
    BigradedModule module;
    std::vector<ConstraintReport> reports;
    std::string label;  // e.g. "x=0" for template enumerations

    std::optional<ConstraintReport> first_failure() const;
};

// Summand with one free integer parameter x: i = i0 + ci*x, j = j0 + cj*x.
struct FreeTemplate {
    SummandKind kind = SummandKind::B;
    HalfInt d;
    int l = 0;
    HalfInt i0, j0;
    int ci = 0, cj = 0;
};

// The symmetric partner of a summand, if the conjugate of its module is a single summand.
std::optional<SummandDescriptor> symmetric_partner(const SummandDescriptor& s);

// Completions of fixed by one instance of the template per x, each closed under symmetry.
std::vector<Candidate> enumerate_candidates(const SearchWindow& w, const Decomposition& fixed, const FreeTemplate& t);

struct EnumOptions {
    std::vector<SummandKind> kinds = {SummandKind::B, SummandKind::V, SummandKind::H, SummandKind::X, SummandKind::Y};
    int max_l = 4;
    bool thin_only = false;                 // only summands with a single delta, V/H of length 1
    std::optional<HalfInt> delta;           // fix the delta grading
    std::optional<HfkRanks> target_hfk;     // prune against this collapse
    int n_components = 2;
    std::optional<std::map<HalfInt, int64_t>> total_homology;  // Maslov -> rank over all staircases
    // prune with the exact deletion spectral sequences; needs two components with cd.linking and
    // component_hfk for both components
    std::optional<Hypotheses> degeneration;
    bool require_symmetric = true;
    size_t max_candidates = 200000;
    size_t max_nodes = 50000000;
};

std::vector<SummandDescriptor> vocabulary(const SearchWindow& w, const EnumOptions& o);
// All multisets of vocabulary summands completing fixed to exactly the budget.
std::vector<Candidate> enumerate_completions(const SearchWindow& w, const Decomposition& fixed, const EnumOptions& o);

// Deleting component `deleted` leaves the homology of the arrows that preserve the other
// Alexander grading. For a candidate complex this is computed exactly and compared with
// HFK(kept component) x V, shifted by lk/2 in Alexander grading. Rule name
// "complex-degeneration.<deleted>"; run_gauntlet accepts "complex-degeneration".
using DegenerationRanks = std::map<std::pair<HalfInt, HalfInt>, int64_t>;  // (kept A, Maslov) -> rank
DegenerationRanks degeneration_homology(const Decomposition& d, int deleted);
DegenerationRanks degeneration_target(const HfkRanks& kept_hfk, int64_t lk);
ConstraintReport check_complex_degeneration(const Decomposition& d, const ComponentData& cd, int deleted,
                                            const HfkRanks& kept_hfk);

struct GauntletResult {
    std::vector<Candidate> survivors;
    std::vector<Candidate> eliminated;  // each carries its first failing rule in reports
    std::vector<Candidate> all;         // input order, reports filled
};

// Hypotheses may depend on the candidate (e.g. trying each admissible linking number).
using HypothesesFor = std::function<std::vector<Hypotheses>(const Candidate&)>;

GauntletResult run_gauntlet(std::vector<Candidate> cands, const std::vector<std::string>& rules, const Hypotheses& h,
                            int threads = 1);
// A candidate survives if it passes under at least one of the supplied hypothesis sets.
GauntletResult run_gauntlet(std::vector<Candidate> cands, const std::vector<std::string>& rules, const HypothesesFor& hs,
                            int threads = 1);

struct ThinClassification {
    std::vector<Candidate> survivors;      // non-unlink survivors
    std::vector<Candidate> unlink_flagged;
    std::vector<Candidate> eliminated;
    size_t enumerated = 0;
};
ThinClassification classify_rank_thin(int rank, const SearchWindow& w, int threads = 1);

struct DetectionReport {
    std::string link;
    int n_components = 0;
    Decomposition skeleton;            // summands common to every completion
    std::vector<Candidate> candidates;
    std::vector<Candidate> survivors;
    bool matches_catalog = false;
    std::vector<std::string> log;
};
// From HFK(T(2,2n)) alone (plus the hypotheses the argument supplies) down to the catalog module.
DetectionReport detect_t22n(int n, int threads = 1, const Catalog& cat = default_catalog());

json candidate_to_json(const Candidate& c);
json gauntlet_to_json(const GauntletResult& g);

// Generator-level enumeration for the completeness check: every thin GF(2) complex with
// generators at the integer points of the window (Maslov a1+a2) and unit arrows only.
struct BruteForceResult {
    std::set<std::vector<std::string>> decompositions;
    size_t complexes = 0;
    size_t undecomposable = 0;  // e.g. even zigzags, which have no summand description
};
BruteForceResult brute_force_thin(int bound, int max_rank);

}  // namespace ff
