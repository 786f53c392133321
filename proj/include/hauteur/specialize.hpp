#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hauteur/family.hpp"
#include "hauteur/rational.hpp"
#include "hauteur/real.hpp"

namespace hauteur {

inline constexpr int kArchCap = 5000;
inline constexpr int kPadicCap = 200;
inline constexpr double kDefaultTol = 1e-10;
// num+den bit size at which exact orbit iteration hands over (archimedean:
// to floating point; p-adic: to a resource error)
inline constexpr std::size_t kExactBitBudget = 20000;

// fibre of a family at a rational parameter: f(z) = sum c_i z^i with the
// specialized starting point
struct SpecializedSystem {
    int d;
    std::vector<Rational> c;  // c[0] .. c[d], c[d] != 0
    Rational x;

    Rational apply(const Rational& z) const;
};

// errors: DegenerateFibreError naming the offending coefficient (pole of
// some a_i or vanishing a_d), PoleError when P has a pole at t0
SpecializedSystem specialize(const DynPair& fp, const Rational& t0);

// (2d)_v * Lambda_v; orbits beyond this radius escape with certainty
double basin_threshold(const SpecializedSystem& sys, const PlaceQ& v);

struct LocalHeightResult {
    Real value;
    std::optional<LogForm> exactForm;  // set when the value is exact
    std::optional<int> escapeN;        // first iterate inside the escape region
    bool certified = false;

    double value_d() const { return value.to_double(); }
};

// archimedean local height: exact orbit until escape, cycle, cap, or bit
// budget (then extended-precision floating point); after escape the
// d^-k-weighted log-domain series converges below tol
LocalHeightResult local_height_arch(const SpecializedSystem& sys,
                                    double tol = kDefaultTol, int cap = kArchCap);

// p-adic local height, fully exact: good-reduction closed form when all
// coefficients are p-integral with unit leading coefficient, zero once the
// orbit is trapped in the p-integers, valuation escape test otherwise
LocalHeightResult local_height_padic(const SpecializedSystem& sys, long long p,
                                     int cap = kPadicCap);

struct GlobalHeightResult {
    Real value;
    bool certified = true;
    // archimedean place plus every prime dividing a coefficient denominator,
    // the leading numerator or denominator, or the point denominator
    std::vector<std::pair<PlaceQ, LocalHeightResult>> places;
    // good-reduction contribution of den(x) primes outside the listed places
    Real remainder;

    double value_d() const { return value.to_double(); }
};

GlobalHeightResult global_height(const SpecializedSystem& sys,
                                 double tol = kDefaultTol, int capArch = kArchCap,
                                 int capPadic = kPadicCap);

}  // namespace hauteur
