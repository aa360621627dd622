#pragma once

#include <optional>
#include <string>
#include <vector>

#include "floerforge/complexes.hpp"
#include "floerforge/exactalg.hpp"

namespace ff {

// Two ways of collapsing the two-variable Euler characteristic. Reversed: second
// component reversed, Delta = (t^{-1/2}-t^{1/2}) chi_rev(t). Torres: t1=t2=t,
// Delta = chi(t,t)/(t^{1/2}-t^{-1/2}).
enum class ConwayRoute { Reversed, Torres };
enum class LinkingMode { StrictHoste, PaperLowest };

ConwayRoute parse_route(const std::string& s);
LinkingMode parse_linking_mode(const std::string& s);
std::string linking_mode_name(LinkingMode m);

// (-1)^{M - M0} where M0 is the representative of the module's Maslov coset.
int maslov_sign(HalfInt maslov);

LaurentPoly euler_two_variable(const BigradedModule& m);

struct AlexanderResult {
    LaurentPoly delta;     // expanded
    LaurentPoly cofactor;  // the bracketed factor in the printed form
    std::string factored;  // "(t^{-1/2} - t^{1/2})(...)" or "(...)/(t^{1/2} - t^{-1/2})"
};

AlexanderResult alexander_single(const BigradedModule& m, ConwayRoute route = ConwayRoute::Reversed);

struct ConwayResult {
    LaurentPoly delta;
    LaurentPoly nabla_t;  // nabla(t - t^{-1}) = Delta(t^2)
    LaurentPoly nabla;    // in u
};

ConwayResult conway(const BigradedModule& m, ConwayRoute route = ConwayRoute::Reversed);

// nullopt means indeterminate
std::optional<Rational> linking_from_conway(const LaurentPoly& p, LinkingMode mode);

// Graded Euler characteristic of HFK divided by (t^{1/2}-t^{-1/2})^{n-1}; nullopt if not divisible.
std::optional<LaurentPoly> alexander_from_hfk(const HfkRanks& h, int n_components);

// exact quotient p / (t^{1/2} - t^{-1/2}), nullopt if there is a remainder
std::optional<LaurentPoly> divide_by_unit_step(const LaurentPoly& p);

struct Point2 {
    Rational x, y;
    bool operator==(const Point2&) const = default;
};

struct FloerPolytope {
    std::vector<std::pair<HalfInt, HalfInt>> vertices;  // counterclockwise
    std::string str() const;
};

FloerPolytope floer_polytope(const BigradedModule& m);

struct DualThurstonSlice {
    int axis = 2;
    bool empty = false;  // the dual ball misses the axis; reported as the zero-width interval [0,0]
    Rational lo = 0, hi = 0;
    std::string str() const;
    bool strictly_inside_unit() const { return empty || (lo > -1 && hi < 1); }
};

// Ozsvath-Szabo: c * P_HFL = B_x* + [-1,1]^2, so the dual Thurston ball is the
// Minkowski difference of c * P_HFL and the square. c defaults to 2.
inline const Rational kDefaultPolytopeScale = 2;
DualThurstonSlice dual_thurston_axis_slice(const BigradedModule& m, int axis,
                                           const Rational& scale = kDefaultPolytopeScale);

std::vector<HalfInt> delta_spectrum(const BigradedModule& m);
bool is_thin(const BigradedModule& m);

}  // namespace ff
