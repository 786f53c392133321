#include "hauteur/rational.hpp"

#include <cmath>
#include <sstream>

namespace hauteur {

Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw Error("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational rational_from_string(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw Error("bad rational literal: " + s);
    if (q.get_den() == 0) throw Error("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

bool is_prime(long long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (long long i = 5; i * i <= n; i += 6) {
        if (i > kFactorCap) throw FactorRangeError("primality test out of desk range");
        if (n % i == 0 || n % (i + 2) == 0) return false;
    }
    return true;
}

std::vector<std::pair<long long, int>> factor_int(const Int& n) {
    if (n == 0) throw Error("factoring zero");
    Int m = abs(n);
    std::vector<std::pair<long long, int>> out;
    auto strip = [&](long long p) {
        if (!mpz_divisible_ui_p(m.get_mpz_t(), p)) return;
        int e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        out.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (long long i = 5; m > 1; i += 6) {
        if (i > kFactorCap) throw FactorRangeError("factorization out of desk range");
        Int ii = Int(static_cast<long>(i)) * static_cast<long>(i);
        if (ii > m) break;
        strip(i);
        strip(i + 2);
    }
    if (m > 1) {
        // every prime below the last trial divisor is stripped, so m is prime
        // whenever it is below the square of that divisor
        if (!m.fits_slong_p()) throw FactorRangeError("factorization out of desk range");
        out.emplace_back(m.get_si(), 1);
    }
    return out;
}

long padic_val(const Rational& x, long long p) {
    if (x == 0) throw ValuationOfZeroError();
    Int pp(static_cast<long>(p));
    mpz_t tmp;
    mpz_init(tmp);
    long vn = static_cast<long>(
        mpz_remove(tmp, x.get_num().get_mpz_t(), pp.get_mpz_t()));
    long vd = static_cast<long>(
        mpz_remove(tmp, x.get_den().get_mpz_t(), pp.get_mpz_t()));
    mpz_clear(tmp);
    return vn - vd;
}

PlaceQ PlaceQ::finite(long long prime) {
    if (!is_prime(prime)) throw Error("not a prime: " + std::to_string(prime));
    return PlaceQ{prime};
}

std::string PlaceQ::str() const {
    return is_arch() ? "arch" : std::to_string(p);
}

void LogForm::prune(long long p) {
    auto it = terms_.find(p);
    if (it != terms_.end() && it->second == 0) terms_.erase(it);
}

LogForm LogForm::log_prime(long long p, const Rational& coeff) {
    LogForm f;
    if (coeff != 0) f.terms_[p] = coeff;
    return f;
}

LogForm LogForm::log_abs_exact(const Rational& x) {
    if (x == 0) throw ValuationOfZeroError();
    LogForm f;
    for (const auto& [p, e] : factor_int(x.get_num()))
        f += log_prime(p, Rational(e));
    for (const auto& [p, e] : factor_int(x.get_den()))
        f += log_prime(p, Rational(-e));
    return f;
}

LogForm& LogForm::operator+=(const LogForm& o) {
    for (const auto& [p, c] : o.terms_) {
        terms_[p] += c;
        prune(p);
    }
    return *this;
}

LogForm& LogForm::operator-=(const LogForm& o) {
    for (const auto& [p, c] : o.terms_) {
        terms_[p] -= c;
        prune(p);
    }
    return *this;
}

LogForm& LogForm::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [p, q] : terms_) q *= c;
    return *this;
}

double LogForm::value() const {
    double s = 0.0;
    for (const auto& [p, c] : terms_)
        s += c.get_d() * std::log(static_cast<double>(p));
    return s;
}

std::string LogForm::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [p, c] : terms_) {
        if (!first) os << " + ";
        os << "(" << c << ")*log(" << p << ")";
        first = false;
    }
    return os.str();
}

double log_abs(const Rational& x) {
    if (x == 0) throw ValuationOfZeroError();
    signed long en = 0, ed = 0;
    double mn = mpz_get_d_2exp(&en, x.get_num().get_mpz_t());
    double md = mpz_get_d_2exp(&ed, x.get_den().get_mpz_t());
    constexpr double ln2 = 0.6931471805599453094172321214581766;
    return std::log(std::fabs(mn)) - std::log(md) +
           (static_cast<double>(en) - static_cast<double>(ed)) * ln2;
}

double local_naive_height(const Rational& x, const PlaceQ& v) {
    if (x == 0) return 0.0;
    if (v.is_arch()) return std::max(0.0, log_abs(x));
    long val = padic_val(x, v.p);
    if (val >= 0) return 0.0;
    return -static_cast<double>(val) * std::log(static_cast<double>(v.p));
}

LogForm local_naive_height_exact(const Rational& x, const PlaceQ& v) {
    if (x == 0) return LogForm{};
    if (v.is_arch()) {
        if (abs(x.get_num()) <= x.get_den()) return LogForm{};
        return LogForm::log_abs_exact(x);
    }
    long val = padic_val(x, v.p);
    if (val >= 0) return LogForm{};
    return LogForm::log_prime(v.p, Rational(-val));
}

double weil_height(const Rational& x) {
    if (x == 0) return 0.0;
    Int m = abs(x.get_num());
    if (m < x.get_den()) m = x.get_den();
    signed long e = 0;
    double d = mpz_get_d_2exp(&e, m.get_mpz_t());
    constexpr double ln2 = 0.6931471805599453094172321214581766;
    return std::log(d) + static_cast<double>(e) * ln2;
}

LogForm weil_height_exact(const Rational& x) {
    if (x == 0) return LogForm{};
    Int m = abs(x.get_num());
    if (m < x.get_den()) m = x.get_den();
    if (m == 1) return LogForm{};
    LogForm f;
    for (const auto& [p, e] : factor_int(m)) f += LogForm::log_prime(p, Rational(e));
    return f;
}

}  // namespace hauteur
