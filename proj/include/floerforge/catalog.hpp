#pragma once

#include <optional>
#include <string>
#include <vector>

#include "floerforge/complexes.hpp"
#include "floerforge/decomposition.hpp"
#include "floerforge/khovanov.hpp"

namespace ff {

struct CatalogEntry {
    std::string id;
    std::vector<std::string> aliases;
    ComponentData cd;
    std::optional<int64_t> chi;
    std::optional<bool> fibered;
    std::optional<Decomposition> hfl;  // summand list when the complex is known
    std::optional<BigradedModule> module;
    std::optional<HfkRanks> hfk;
    std::vector<HfkRanks> candidates;  // several printed answers, none preferred
    std::string status = "known";      // "known" or "ambiguous"
    std::optional<KhTable> kh;
    bool kh_thin = false;
    std::string source;
    json construct;  // how derived entries were built, null for stored data

    int n() const { return cd.n_components; }
};

json entry_to_json(const CatalogEntry& e);

class Catalog {
public:
    static Catalog load(const std::string& dir);

    const CatalogEntry& lookup(const std::string& id) const;
    bool has(const std::string& id) const;
    std::vector<std::string> ids() const;
    const std::vector<CatalogEntry>& entries() const { return entries_; }

private:
    std::vector<CatalogEntry> entries_;
    std::map<std::string, size_t> index_;
};

// FLOERFORGE_ASSETS if set, otherwise the bundled directory.
std::string default_assets_dir();
const Catalog& default_catalog();

struct SelfcheckItem {
    std::string id, check;
    bool ok = true;
    std::string detail;
};

std::vector<SelfcheckItem> selfcheck_entry(const CatalogEntry& e);
// entry checks plus mirror closure on the T(2,2n) family and the knots
std::vector<SelfcheckItem> selfcheck_catalog(const Catalog& c);
json selfcheck_to_json(const std::vector<SelfcheckItem>& items);

// hfk symmetry: rank_M(A) = rank_{M-2A}(-A)
std::vector<std::string> hfk_symmetry_mismatches(const HfkRanks& h);
HfkRanks mirror_hfk(const HfkRanks& h);

}  // namespace ff
