#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hauteur/polynomial.hpp"

namespace hauteur {

inline constexpr int kDefaultOrbitCap = 12;
inline constexpr long kOrbitBudget = 100000;

// one-parameter family f_t(z) = sum_i a_i(t) z^i with a marked affine
// starting point P(t)
struct DynPair {
    DynPair(int deg, std::vector<RatFunc> coeffs, RatFunc point);

    int d;
    std::vector<RatFunc> a;  // a[0] .. a[d], a[d] != 0
    RatFunc P;

    // f applied to x in Q(t); ResourceError past the coefficient budget
    RatFunc apply(const RatFunc& x, long budget = kOrbitBudget) const;
};

// formal Q-divisor on the parameter line (closed points and infinity)
class DivisorQ {
  public:
    void add(const ClosedPoint& c, const Rational& m);
    const std::map<ClosedPoint, Rational>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    Rational degree() const;  // sum of deg(c) * multiplicity
    std::string str() const;

  private:
    std::map<ClosedPoint, Rational> entries_;
};

// infinity plus every finite point where some a_i or P has a pole or a_d
// vanishes; a superset of the support of the height divisor
std::set<ClosedPoint> bad_places(const DynPair& fp);

// valuation translation of the escape-region test at the place c
bool in_basin0_ff(const DynPair& fp, const RatFunc& Q, const ClosedPoint& c);

struct FfLocalHeight {
    Rational value;
    std::optional<int> escapeN;  // first iterate inside the escape region
    bool bounded = false;        // a valuation floor certifies the orbit bounded
};

// local canonical height of P at c, exact; (0, none) when the orbit never
// enters the escape region within cap iterates, with bounded set when that
// zero is certified rather than cap-limited
FfLocalHeight ff_local_height(const DynPair& fp, const ClosedPoint& c,
                              int cap = kDefaultOrbitCap, long budget = kOrbitBudget);

struct DivisorResult {
    DivisorQ D;
    // bad places whose orbit stayed bounded through the cap without a
    // certificate; their zero contribution is exact only if the orbit is
    // genuinely bounded
    std::vector<ClosedPoint> unverified;
    std::map<ClosedPoint, int> escapeLevels;
    Rational degree() const { return D.degree(); }
};

DivisorResult divisor(const DynPair& fp, int cap = kDefaultOrbitCap,
                      long budget = kOrbitBudget);

// exact orbit collision search up to cap iterates
bool is_preperiodic(const DynPair& fp, int cap = kDefaultOrbitCap,
                    long budget = kOrbitBudget);

}  // namespace hauteur
