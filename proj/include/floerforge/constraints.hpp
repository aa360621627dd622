#pragma once

#include <optional>
#include <string>
#include <vector>

#include "floerforge/complexes.hpp"

namespace ff {

enum class Verdict { Pass, Fail, Inapplicable };
std::string verdict_name(Verdict v);

struct ConstraintReport {
    std::string rule;
    Verdict verdict = Verdict::Pass;
    std::string witness;
    bool flag = false;  // rule-specific: braid axis found, unlink pattern found

    bool failed() const { return verdict == Verdict::Fail; }
};

json report_to_json(const ConstraintReport& r);
json reports_to_json(const std::vector<ConstraintReport>& rs);

struct LegendrianData {
    std::vector<int64_t> tb, rot;
    ComponentData cd;
};

// Inputs the rules may not infer: everything geometric is declared here.
struct Hypotheses {
    ComponentData cd;
    std::optional<int64_t> chi;
    std::optional<bool> fibered;             // the link as a whole
    std::optional<LegendrianData> legendrian;
    std::optional<int> braid_axis;           // 1-based component asserted to be an unknotted braid axis
    std::vector<HfkRanks> component_hfk;     // component_hfk[k]: HFK of component k+1 alone
    bool exchange_symmetric = false;
    bool exclude_unlinks = false;
    // without a declared axis, treat every component whose top A_i line has rank 2^{n-1} as a braid axis
    bool infer_braid_axis = false;
};

ConstraintReport check_symmetry(const BigradedModule& m, bool exchange = false);
ConstraintReport check_component_degeneration(const BigradedModule& m, const ComponentData& cd, int deleted,
                                              const HfkRanks& target);
ConstraintReport check_global_degeneration(const HfkRanks& hfk, int n);
ConstraintReport check_fibered_top(const HfkRanks& hfk, std::optional<bool> fibered, std::optional<int64_t> chi, int n);
ConstraintReport check_braid_axis(const BigradedModule& m, int component, int n = 2);
HalfInt loss_alexander_grading(const LegendrianData& ld);
ConstraintReport check_loss_bound(const HfkRanks& hfk, const LegendrianData& ld, int n);
ConstraintReport check_loss_bound_at(const HfkRanks& hfk, HalfInt a, int n);

struct ParityReports {
    ConstraintReport hyperplanes, odd_rank, alexander_at_one, unlink;
    std::vector<ConstraintReport> all() const { return {hyperplanes, odd_rank, alexander_at_one, unlink}; }
};
ParityReports check_parity_rules(const BigradedModule& m, const ComponentData& cd);
// knot/link-level variant for inputs that only carry collapsed HFK
ParityReports check_parity_rules_hfk(const HfkRanks& hfk, int n);

ConstraintReport check_braid_polytope(const BigradedModule& m, const ComponentData& cd, std::optional<int> axis_component);

enum class EulerRelation { None, Sum, Difference };
struct RankInterval {
    int64_t lo = 0, hi = 0;
    int parity = 0;
    bool allows(int64_t r) const { return r >= lo && r <= hi && ((r - parity) % 2 == 0); }
};
// Per Alexander grading bounds for the third term of a skein exact triangle.
std::map<HalfInt, RankInterval> exact_triangle_bounds(const HfkRanks& a, const HfkRanks& b,
                                                      EulerRelation rel = EulerRelation::None);

// Rule ids in gauntlet order: cheap parity checks first. "First failing rule" depends on it.
const std::vector<std::string>& gauntlet_rule_order();
std::vector<std::string> parse_rule_list(const std::string& spec);

std::vector<ConstraintReport> run_rules(const BigradedModule& m, const Hypotheses& h,
                                        const std::vector<std::string>& rules);

}  // namespace ff
