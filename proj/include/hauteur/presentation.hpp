#pragma once

#include <vector>

#include "hauteur/family.hpp"
#include "hauteur/rational.hpp"
#include "hauteur/real.hpp"

namespace hauteur {

// height presentation on the parameter line: a morphism g whose pole divisor
// is exactly scale * D, with scale = d^N (d-1)
struct HeightPresentation {
    int d = 2;
    int N = 0;
    Int scale;
    RatFunc g;
    DivisorQ D;
};

// least N >= 0 such that d^N (d-1) m is an integer for every multiplicity
int clear_denominators(const DivisorQ& D, int d);

// monic num / monic den with den = prod q_c^(scale m_c) over finite support
// and num = (t - s)^(deg den + scale m_inf), s the least shift keeping them
// coprime
RatFunc build_g(const DivisorQ& D, int N, int d);

// assembles and verifies a presentation; N may be raised above the minimum
HeightPresentation make_presentation(const DivisorQ& D, int d, int N_min = 0);

struct PresentationResult {
    HeightPresentation hp;
    std::vector<ClosedPoint> unverified;
    int maxEscapeN = 0;
};

// divisor of (fp.P under fp) together with a presentation whose level N also
// covers every escape level, so the same g serves the correction series
PresentationResult present_heights(const DynPair& fp, int cap = kDefaultOrbitCap,
                                   long budget = kOrbitBudget);

// d^-N (d-1)^-1 max{0, log |g(t0)|_v}; SupportPointSignal on rational
// support points
double lambda_D(const HeightPresentation& hp, const PlaceQ& v, const Rational& t0);
LogForm lambda_D_exact(const HeightPresentation& hp, const PlaceQ& v, const Rational& t0);

// sum of lambda_D over all places = scale^-1 h(g(t0)); zero on support
double h_D(const HeightPresentation& hp, const Rational& t0);
LogForm h_D_exact(const HeightPresentation& hp, const Rational& t0);
// extended precision, for differences far below double resolution
Real h_D_real(const HeightPresentation& hp, const Rational& t0);

}  // namespace hauteur
