#include "hauteur/specialize.hpp"

#include <cmath>
#include <set>
#include <string>

#include "hauteur/errors.hpp"

namespace hauteur {

namespace {

std::size_t bit_size(const Rational& x) {
    return mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
}

int sign_pow(int s, int e) { return (s < 0 && (e % 2 != 0)) ? -1 : 1; }

// v_p with v_p(0) treated as +infinity via the optional
std::optional<long> val_or_inf(const Rational& x, long long p) {
    if (x == 0) return std::nullopt;
    return padic_val(x, p);
}

bool p_integral(const Rational& x, long long p) {
    auto v = val_or_inf(x, p);
    return !v || *v >= 0;
}

// strict |z|_p > Lambda_p test, all in valuations
bool in_basin0_at(const SpecializedSystem& sys, const Rational& z, long long p) {
    auto vz = val_or_inf(z, p);
    if (!vz) return false;
    long m = -*vz;
    if (m <= 0) return false;
    long vd = padic_val(sys.c[sys.d], p);
    if (m * (sys.d - 1) <= 2 * vd) return false;
    for (int i = 0; i < sys.d; ++i) {
        if (sys.c[i] == 0) continue;
        long vi = padic_val(sys.c[i], p);
        if (m * (sys.d - i) <= vd - vi) return false;
    }
    return true;
}

// escape-region membership with a factor-two margin so the double-precision
// comparison cannot misreport a borderline point
bool escaped_arch(double log_abs_z, double threshold) {
    return log_abs_z > std::log(2.0 * threshold);
}

// d^-k-weighted correction series after escape; y0 enters as log|y0| plus a
// sign, the orbit stays in log domain
Real post_escape_arch(const SpecializedSystem& sys, const Real& log_y0, int sign_y0,
                      int n0, double tol) {
    const int d = sys.d;
    const Real ad(sys.c[d]);
    const Real log_ad = r_log(r_abs(ad));
    const int sign_ad = (sys.c[d] < 0) ? -1 : 1;

    Real lam = log_y0 + log_ad / Real(static_cast<long>(d - 1));
    Real L = log_y0;
    int s = sign_y0;
    double outer = std::pow(static_cast<double>(d), -static_cast<double>(n0));
    const double tail_const = std::log(2.0) * d / (d - 1.0);

    Real weight(1L);
    const Real invd = Real(1L) / Real(static_cast<long>(d));
    for (int k = 0; k < kArchCap; ++k) {
        weight *= invd;
        double tail = outer * std::pow(static_cast<double>(d), -(k + 1.0)) * tail_const;
        // eps = sum_{i<d} (c_i/c_d) y_k^{i-d}, |eps| < 1/2 inside the region
        Real eps;
        for (int i = 0; i < d; ++i) {
            if (sys.c[i] == 0) continue;
            Real term = Real(sys.c[i]) / ad * r_exp(Real(static_cast<long>(i - d)) * L);
            if (sign_pow(s, i - d) < 0) term = -term;
            eps += term;
        }
        Real corr = r_log1p(eps);
        lam += weight * corr;
        if (tail < tol) break;
        L = log_ad + Real(static_cast<long>(d)) * L + corr;
        s = sign_ad * sign_pow(s, d);
    }
    return lam;
}

}  // namespace

Rational SpecializedSystem::apply(const Rational& z) const {
    Rational acc = c[d];
    for (int i = d - 1; i >= 0; --i) acc = acc * z + c[i];
    return acc;
}

SpecializedSystem specialize(const DynPair& fp, const Rational& t0) {
    SpecializedSystem sys;
    sys.d = fp.d;
    sys.c.resize(fp.d + 1);
    for (int i = 0; i <= fp.d; ++i) {
        try {
            sys.c[i] = eval_ratfunc(fp.a[i], t0);
        } catch (const PoleError&) {
            throw DegenerateFibreError("coefficient a_" + std::to_string(i) +
                                       " has a pole at t = " + to_string(t0));
        }
    }
    if (sys.c[fp.d] == 0)
        throw DegenerateFibreError("leading coefficient a_" + std::to_string(fp.d) +
                                   " vanishes at t = " + to_string(t0));
    sys.x = eval_ratfunc(fp.P, t0);
    return sys;
}

double basin_threshold(const SpecializedSystem& sys, const PlaceQ& v) {
    const int d = sys.d;
    if (v.is_arch()) {
        double lam = 0.0;  // log Lambda
        double lad = log_abs(sys.c[d]);
        for (int i = 0; i < d; ++i) {
            if (sys.c[i] == 0) continue;
            lam = std::max(lam, (log_abs(sys.c[i]) - lad) / (d - i));
        }
        lam = std::max(lam, -2.0 * lad / (d - 1));
        return 2.0 * d * std::exp(lam);
    }
    long vd = padic_val(sys.c[d], v.p);
    double e = 0.0;  // log_p Lambda
    for (int i = 0; i < d; ++i) {
        if (sys.c[i] == 0) continue;
        long vi = padic_val(sys.c[i], v.p);
        e = std::max(e, static_cast<double>(vd - vi) / (d - i));
    }
    e = std::max(e, 2.0 * vd / (d - 1.0));
    return std::pow(static_cast<double>(v.p), e);
}

LocalHeightResult local_height_arch(const SpecializedSystem& sys, double tol, int cap) {
    const double T = basin_threshold(sys, PlaceQ::arch());
    const int d = sys.d;

    // exact phase: detects cycles and keeps escape tests rigorous
    Rational z = sys.x;
    std::set<Rational> seen{z};
    int n = 0;
    bool exact = true;
    Real zf;  // mirror once the bit budget trips

    while (true) {
        if (exact) {
            if (z != 0 && escaped_arch(log_abs(z), T)) break;
            if (n == cap) return {Real(), std::nullopt, std::nullopt, false};
            z = sys.apply(z);
            ++n;
            if (!seen.insert(z).second)
                return {Real(), std::nullopt, std::nullopt, false};
            if (bit_size(z) > kExactBitBudget) {
                exact = false;
                zf = Real(z);
            }
        } else {
            if (!zf.is_zero() && r_log(r_abs(zf)) > Real(std::log(2.0 * T))) break;
            if (n == cap) return {Real(), std::nullopt, std::nullopt, false};
            Real acc(sys.c[d]);
            for (int i = d - 1; i >= 0; --i) acc = acc * zf + Real(sys.c[i]);
            zf = acc;
            ++n;
        }
    }

    Real log_y0 = exact ? r_log(r_abs(Real(z))) : r_log(r_abs(zf));
    int sign_y0 = exact ? ((z < 0) ? -1 : 1) : zf.sign();
    Real lam = post_escape_arch(sys, log_y0, sign_y0, n, tol);
    Real scale(1L);
    const Real invd = Real(1L) / Real(static_cast<long>(d));
    for (int k = 0; k < n; ++k) scale *= invd;
    return {scale * lam, std::nullopt, n, true};
}

LocalHeightResult local_height_padic(const SpecializedSystem& sys, long long p, int cap) {
    const int d = sys.d;
    bool coeffs_integral = true;
    for (int i = 0; i <= d; ++i)
        if (!p_integral(sys.c[i], p)) coeffs_integral = false;
    bool lead_unit = sys.c[d] != 0 && padic_val(sys.c[d], p) == 0;

    if (coeffs_integral && lead_unit) {
        auto vx = val_or_inf(sys.x, p);
        long m = (vx && *vx < 0) ? -*vx : 0;
        LogForm form = LogForm::log_prime(p, Rational(static_cast<long>(m)));
        LocalHeightResult r{logform_to_real(form), form, std::nullopt, true};
        if (m > 0) r.escapeN = 0;
        return r;
    }

    // valuation floor: {v_p >= L} is forward invariant when v(c_1) >= 0,
    // L >= -v(c_i)/(i-1) for every i >= 2 with c_i != 0, and L <= v(c_0);
    // an orbit inside the floor region is bounded, so its local height is 0
    bool trap_ok = sys.c[1] == 0 || padic_val(sys.c[1], p) >= 0;
    Rational trapL = make_rational(Int(-padic_val(sys.c[d], p)), Int(d - 1));
    for (int i = 2; i < d; ++i) {
        if (sys.c[i] == 0) continue;
        Rational cand = make_rational(Int(-padic_val(sys.c[i], p)), Int(i - 1));
        if (cand > trapL) trapL = cand;
    }
    if (sys.c[0] != 0 && Rational(padic_val(sys.c[0], p)) < trapL) trap_ok = false;

    Rational z = sys.x;
    std::set<Rational> seen{z};
    int n = 0;
    while (true) {
        if (trap_ok && (z == 0 || Rational(padic_val(z, p)) >= trapL))
            return {Real(), LogForm(), std::nullopt, true};
        if (in_basin0_at(sys, z, p)) {
            long m = -padic_val(z, p);
            long vd = padic_val(sys.c[d], p);
            Rational coeff = Rational(static_cast<long>(m)) +
                             make_rational(Int(static_cast<long>(-vd)),
                                           Int(static_cast<long>(d - 1)));
            Rational w = make_rational(1, 1);
            for (int k = 0; k < n; ++k) w /= d;
            LogForm form = LogForm::log_prime(p, coeff * w);
            return {logform_to_real(form), form, n, true};
        }
        if (n == cap) return {Real(), std::nullopt, std::nullopt, false};
        z = sys.apply(z);
        ++n;
        if (!seen.insert(z).second) return {Real(), LogForm(), std::nullopt, true};
        if (bit_size(z) > kExactBitBudget)
            throw ResourceError("p-adic orbit exceeded the exact bit budget at p = " +
                                std::to_string(p));
    }
}

GlobalHeightResult global_height(const SpecializedSystem& sys, double tol, int capArch,
                                 int capPadic) {
    std::set<long long> S;
    auto add_primes = [&S](const Int& n) {
        if (n == 0) return;
        for (const auto& [p, e] : factor_int(n)) S.insert(p);
    };
    for (int i = 0; i <= sys.d; ++i) add_primes(den(sys.c[i]));
    add_primes(num(sys.c[sys.d]));
    add_primes(den(sys.c[sys.d]));

    // den(x) primes join the listed places when they factor at desk scale;
    // otherwise the good-reduction closed form covers them in one log
    Int dx = den(sys.x);
    Int rem = dx;
    for (long long p : S)
        while (rem % static_cast<long>(p) == 0) rem /= static_cast<long>(p);
    bool factored_dx = false;
    try {
        add_primes(rem);
        factored_dx = true;
    } catch (const FactorRangeError&) {
    }

    GlobalHeightResult out;
    out.places.emplace_back(PlaceQ::arch(), local_height_arch(sys, tol, capArch));
    for (long long p : S)
        out.places.emplace_back(PlaceQ::finite(p), local_height_padic(sys, p, capPadic));

    for (const auto& [v, r] : out.places) {
        out.value += r.value;
        out.certified = out.certified && r.certified;
    }
    if (!factored_dx && rem != 1) out.remainder = r_log(Real(rem));
    out.value += out.remainder;
    return out;
}

}  // namespace hauteur
