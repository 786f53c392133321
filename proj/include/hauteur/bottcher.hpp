#pragma once

#include <map>

#include "hauteur/family.hpp"
#include "hauteur/laurent.hpp"
#include "hauteur/presentation.hpp"
#include "hauteur/rational.hpp"
#include "hauteur/real.hpp"

namespace hauteur {

inline constexpr int kStabilizeCap = 16;

// stabilized formal Bottcher coordinate at a support point of degree 1 or
// infinity, computed on the escaped iterate f^escapeLevel(P)
struct BottcherData {
    ClosedPoint place;
    int m = 0;           // -ord of the escaped iterate at the place
    LaurentSeries G;     // val -m, leading coefficient matches the iterate
    int stabilizedAtN = 0;
    int escapeLevel = 0;
};

// limit of (f^N(Q) w^{m d^N} a_d^{-(d^N-1)/(d-1)})^{1/d^N} with Q the
// escaped iterate; consecutive agreement modulo w^prec plus one confirming
// step certifies stabilization
BottcherData bottcher_series(const DynPair& fp, const ClosedPoint& c, long prec,
                             int order_cap = kStabilizeCap);

// the correction series F and the constant c at one support point
struct CorrectionData {
    Rational c;            // E(place), nonzero
    LaurentSeries Fseries; // val >= 1, coefficients up to the requested order
    Int scale;             // d^N (d-1), matching the presentation
};

// E = G^{(d-1) d^{N-n0}} a_d^{d^{N-n0}} / g expanded at c (a unit series);
// c = E(0), Fseries = scale^-1 log(E/c)
CorrectionData correction_data(const DynPair& fp, const ClosedPoint& c,
                               const HeightPresentation& hp, long order);

// C(phi) = scale^-1 sum_v log|c_{phi(v)}|_v, exact; zero for constant phi
LogForm constant_C(const std::map<PlaceQ, ClosedPoint>& assignment,
                   const std::map<ClosedPoint, CorrectionData>& corrections);

// evaluate a truncated series at a real argument
Real eval_series_real(const LaurentSeries& s, const Real& w);

}  // namespace hauteur
