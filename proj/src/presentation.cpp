#include "hauteur/presentation.hpp"

#include <algorithm>

#include "hauteur/errors.hpp"

namespace hauteur {

namespace {

constexpr long kPoleOrderCap = 100000;

Int pow_int(int base, int e) {
    Int r(1);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// exponent scale*m as a checked machine integer
long scaled_mult(const Int& scale, const Rational& m) {
    Rational e = Rational(scale) * m;
    if (!is_integer(e))
        throw InternalError("multiplicity " + to_string(m) + " not cleared by scale " +
                            scale.get_str());
    if (e <= 0 || e > kPoleOrderCap)
        throw ResourceError("pole order " + to_string(e) + " out of range");
    return e.get_num().get_si();
}

void verify_presentation(const HeightPresentation& hp) {
    Rational pole_deg(0);
    for (const auto& [c, m] : hp.D.entries()) {
        long want = scaled_mult(hp.scale, m);
        if (ord_at(hp.g, c) != -want)
            throw InternalError("pole order of g at " + c.str() + " does not match " +
                                std::to_string(want));
        pole_deg += Rational(c.degree()) * Rational(want);
    }
    if (pole_deg != Rational(hp.scale) * hp.D.degree())
        throw InternalError("pole divisor degree mismatch");
}

}  // namespace

int clear_denominators(const DivisorQ& D, int d) {
    int N = 0;
    for (const auto& [c, m] : D.entries()) {
        if (m <= 0) throw InternalError("nonpositive multiplicity in height divisor");
        Int q = den(m * Rational(d - 1));
        int n = 0;
        while (q > 1) {
            Int g = gcd(q, Int(d));
            if (g == 1)
                throw InternalError("multiplicity denominator " + q.get_str() +
                                    " is not supported on " + std::to_string(d));
            q /= g;
            ++n;
        }
        N = std::max(N, n);
    }
    return N;
}

RatFunc build_g(const DivisorQ& D, int N, int d) {
    if (D.empty()) return RatFunc(Rational(1));
    Int scale = pow_int(d, N) * (d - 1);
    Poly den_poly(Rational(1));
    Rational m_inf(0);
    for (const auto& [c, m] : D.entries()) {
        if (c.is_infinity()) {
            m_inf = m;
            continue;
        }
        den_poly = den_poly * c.poly().pow(static_cast<unsigned>(scaled_mult(scale, m)));
    }
    long k = den_poly.deg();
    if (m_inf != 0) k += scaled_mult(scale, m_inf);
    long s = 0;
    while (den_poly.eval(Rational(s)) == 0) ++s;
    Poly num_poly = (Poly::var() - Poly(Rational(s))).pow(static_cast<unsigned>(k));
    return RatFunc(num_poly, den_poly);
}

HeightPresentation make_presentation(const DivisorQ& D, int d, int N_min) {
    HeightPresentation hp;
    hp.d = d;
    hp.N = std::max(D.empty() ? 0 : clear_denominators(D, d), N_min);
    hp.scale = pow_int(d, hp.N) * (d - 1);
    hp.D = D;
    hp.g = build_g(D, hp.N, d);
    verify_presentation(hp);
    return hp;
}

PresentationResult present_heights(const DynPair& fp, int cap, long budget) {
    DivisorResult dr = divisor(fp, cap, budget);
    PresentationResult result;
    result.unverified = dr.unverified;
    for (const auto& [c, n] : dr.escapeLevels) result.maxEscapeN = std::max(result.maxEscapeN, n);
    result.hp = make_presentation(dr.D, fp.d, result.maxEscapeN);
    return result;
}

namespace {

bool on_rational_support(const HeightPresentation& hp, const Rational& t0) {
    for (const auto& [c, m] : hp.D.entries()) {
        auto a = c.rational_value();
        if (a && *a == t0) return true;
    }
    return false;
}

}  // namespace

LogForm lambda_D_exact(const HeightPresentation& hp, const PlaceQ& v, const Rational& t0) {
    if (on_rational_support(hp, t0))
        throw SupportPointSignal("t0 = " + to_string(t0) + " lies in the support");
    LogForm f = local_naive_height_exact(eval_ratfunc(hp.g, t0), v);
    f *= Rational(1) / Rational(hp.scale);
    return f;
}

double lambda_D(const HeightPresentation& hp, const PlaceQ& v, const Rational& t0) {
    if (on_rational_support(hp, t0))
        throw SupportPointSignal("t0 = " + to_string(t0) + " lies in the support");
    Rational inv = Rational(1) / Rational(hp.scale);
    return inv.get_d() * local_naive_height(eval_ratfunc(hp.g, t0), v);
}

LogForm h_D_exact(const HeightPresentation& hp, const Rational& t0) {
    if (on_rational_support(hp, t0)) return LogForm{};
    LogForm f = weil_height_exact(eval_ratfunc(hp.g, t0));
    f *= Rational(1) / Rational(hp.scale);
    return f;
}

double h_D(const HeightPresentation& hp, const Rational& t0) {
    if (on_rational_support(hp, t0)) return 0.0;
    Rational inv = Rational(1) / Rational(hp.scale);
    return inv.get_d() * weil_height(eval_ratfunc(hp.g, t0));
}

Real h_D_real(const HeightPresentation& hp, const Rational& t0) {
    if (on_rational_support(hp, t0)) return Real();
    Rational gt = eval_ratfunc(hp.g, t0);
    if (gt == 0) return Real();
    Int n = abs(num(gt));
    Int m = (n > den(gt)) ? n : den(gt);
    return r_log(Real(m)) / Real(hp.scale);
}

}  // namespace hauteur
