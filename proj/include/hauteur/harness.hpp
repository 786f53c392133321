#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hauteur/family.hpp"
#include "hauteur/presentation.hpp"
#include "hauteur/specialize.hpp"

namespace hauteur {

inline constexpr long long kCountBudget = 500000;

struct HeightRecord {
    Rational t;
    double hhat = 0;
    double hD = 0;
    double diff = 0;
    bool certified = false;
    bool degenerate = false;
    bool failed = false;
    std::string note;
    std::vector<std::pair<PlaceQ, LocalHeightResult>> places;
};

HeightRecord height_record(const DynPair& fp, const HeightPresentation* hp,
                           const Rational& t0, double tol = kDefaultTol,
                           int cap = kArchCap);

// reduced a/b with max(|a|, b) <= H, ordered by (denominator, numerator);
// includes 0 and both signs
std::vector<Rational> rationals_up_to(long H);

struct SweepSummary {
    std::vector<HeightRecord> records;
    double maxAbsDiff = 0;
    Rational argmax;
    long uncertified = 0;
    long degenerate = 0;
};

SweepSummary sweep_heights(const DynPair& fp, const HeightPresentation* hp, long H,
                           double tol = kDefaultTol, int cap = kArchCap,
                           int threads = 0);

struct CountResult {
    long long count = 0;
    double B = 0;
    double slack = 0;
    long enumBound = 0;
    long long enumerated = 0;
    long long filtered = 0;
    long uncertified = 0;
    bool partial = false;
};

CountResult count_parameters(const DynPair& fp, const HeightPresentation& hp, double B,
                             double tol = kDefaultTol, int cap = kArchCap,
                             long slackH = 25, long long budget = kCountBudget,
                             int threads = 0);

struct VerifyRecord {
    Rational t;
    double hhat = 0;
    double feResidual = 0;
    double refineDelta = 0;
    bool certified = false;
    bool degenerate = false;
    bool pass = false;
    std::string note;
};

VerifyRecord verify_at(const DynPair& fp, const Rational& t0, double tol = kDefaultTol,
                       int cap = kArchCap);

struct RunConfig {
    std::string command;
    std::string f_src;
    std::string P_src;
    std::vector<std::string> t_values;
    long order = 8;
    double tol = kDefaultTol;
    int cap = kArchCap;
    long bound = 50;
    double B = 3.0;
    std::string format = "table";
    std::string out;
    bool strict = false;
    int threads = 0;
};

// full command dispatch; returns the process exit code:
// 0 success, 2 input error, 3 uncertified result under strict
int run_command(const RunConfig& cfg, std::ostream& outStream, std::ostream& errStream);

}  // namespace hauteur
