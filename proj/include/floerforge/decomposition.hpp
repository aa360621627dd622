#pragma once

#include <random>
#include <string>
#include <vector>

#include "floerforge/complexes.hpp"

namespace ff {

enum class SummandKind { B, V, H, X, Y };

struct SummandDescriptor {
    SummandKind kind = SummandKind::Y;
    HalfInt d;        // Maslov anchor
    int l = 0;        // arrow length or staircase size, unused for B
    HalfInt i, j;     // shift

    std::string str() const;
    static SummandDescriptor parse(const std::string& s);
    int rank() const;
    SummandDescriptor translated(HalfInt da1, HalfInt da2, HalfInt dm) const;
    // generator gradings of the realized summand
    std::vector<Grading> gradings() const;
    auto operator<=>(const SummandDescriptor&) const = default;
};

SummandDescriptor B(HalfInt d, HalfInt i, HalfInt j);
SummandDescriptor V(HalfInt d, int l, HalfInt i, HalfInt j);
SummandDescriptor H(HalfInt d, int l, HalfInt i, HalfInt j);
SummandDescriptor X(HalfInt d, int l, HalfInt i, HalfInt j);
SummandDescriptor Y(HalfInt d, int l, HalfInt i, HalfInt j);

struct Decomposition {
    std::vector<SummandDescriptor> summands;

    void normalize();  // sort by descriptor string
    std::vector<std::string> strings() const;
    int rank() const;
    bool operator==(const Decomposition& o) const;
};

Decomposition parse_decomposition(const std::vector<std::string>& items);

BifilteredComplex realize_summand(const SummandDescriptor& s, Field f);
BifilteredComplex realize(const Decomposition& d, Field f);
BigradedModule module_of(const Decomposition& d);

struct DecompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Decomposition decompose_e2(const BifilteredComplex& c);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> mismatches;
};
VerifyReport verify_decomposition(const BifilteredComplex& c, const Decomposition& d);

Decomposition summand_census_oracle(const BifilteredComplex& c);

struct PairingReport {
    bool ok = true;
    std::string witness;
};
PairingReport check_pairing(const Decomposition& d);

// Filtered chain maps between complexes: f(x) lies in the span of targets y with
// gr(y) <= gr(x) componentwise and equal Maslov grading. Each map is a dense matrix
// m[x][y] = coefficient of y in f(x).
using DenseMat = std::vector<std::vector<Rational>>;
std::vector<DenseMat> filtered_chain_maps(const BifilteredComplex& from, const BifilteredComplex& to);
size_t hom_dimension(const BifilteredComplex& from, const BifilteredComplex& to);

// Per-column (vertical) and per-row (horizontal) persistence bar counts; keys are
// (line coordinate, source Maslov, source level, target level).
using BarCounts = std::map<std::array<int64_t, 4>, int64_t>;
BarCounts vertical_bars(const BifilteredComplex& c);
BarCounts horizontal_bars(const BifilteredComplex& c);

// Random change of basis by elementary filtered operations x -> x + c*y with
// gr(y) <= gr(x) and equal Maslov grading; generators are also shuffled and renamed.
BifilteredComplex random_filtered_scramble(const BifilteredComplex& c, std::mt19937_64& rng, int ops);

}  // namespace ff
