#include "hauteur/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "hauteur/bottcher.hpp"
#include "hauteur/errors.hpp"
#include "hauteur/parse.hpp"
#include "hauteur/real.hpp"
#include "json.hpp"

namespace hauteur {

namespace {

using njson = nlohmann::ordered_json;

std::string fd(double x, int prec = 10) {
    std::ostringstream os;
    os << std::setprecision(prec) << x;
    return os.str();
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<std::string> flags_of(const HeightRecord& r) {
    if (r.degenerate) return {"degenerate"};
    if (r.failed) return {"failed"};
    return {r.certified ? "certified" : "uncertified"};
}

template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    int T = threads > 0 ? threads : static_cast<int>(std::min(8u, hw ? hw : 1u));
    if (T <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < T; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

njson place_json(const std::pair<PlaceQ, LocalHeightResult>& pl) {
    njson j;
    j["place"] = pl.first.str();
    j["value"] = pl.second.value_d();
    j["certified"] = pl.second.certified;
    if (pl.second.exactForm) j["exact"] = pl.second.exactForm->str();
    if (pl.second.escapeN) j["escapeN"] = *pl.second.escapeN;
    return j;
}

njson record_json(const HeightRecord& r) {
    njson j;
    j["schema"] = 1;
    j["t"] = to_string(r.t);
    j["hhat"] = r.hhat;
    j["hD"] = r.hD;
    j["diff"] = r.diff;
    j["flags"] = flags_of(r);
    njson pl = njson::array();
    for (const auto& p : r.places) pl.push_back(place_json(p));
    j["places"] = pl;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

void records_table(const std::vector<HeightRecord>& recs, bool withPlaces,
                   std::ostream& os) {
    os << std::left << std::setw(16) << "t" << std::right << std::setw(16) << "hhat"
       << std::setw(16) << "hD" << std::setw(16) << "diff"
       << "  flags\n";
    for (const auto& r : recs) {
        os << std::left << std::setw(16) << to_string(r.t) << std::right;
        if (r.degenerate || r.failed) {
            os << std::setw(16) << "-" << std::setw(16) << "-" << std::setw(16) << "-"
               << "  " << join(flags_of(r), ";") << "  " << r.note << "\n";
            continue;
        }
        os << std::setw(16) << fd(r.hhat) << std::setw(16) << fd(r.hD) << std::setw(16)
           << fd(r.diff) << "  " << join(flags_of(r), ";") << "\n";
        if (withPlaces) {
            for (const auto& p : r.places) {
                os << "    " << std::left << std::setw(8) << p.first.str() << std::right
                   << std::setw(16) << fd(p.second.value_d())
                   << (p.second.certified ? "  certified" : "  uncertified");
                if (p.second.exactForm) os << "  = " << p.second.exactForm->str();
                if (p.second.escapeN) os << "  escapeN=" << *p.second.escapeN;
                os << "\n";
            }
        }
    }
}

void records_csv(const std::vector<HeightRecord>& recs, std::ostream& os) {
    os << "t,hhat,hD,diff,flags\n";
    for (const auto& r : recs) {
        os << to_string(r.t) << "," << fd(r.hhat, 17) << "," << fd(r.hD, 17) << ","
           << fd(r.diff, 17) << "," << join(flags_of(r), ";") << "\n";
    }
}

void records_json(const std::vector<HeightRecord>& recs, std::ostream& os) {
    for (const auto& r : recs) os << record_json(r).dump() << "\n";
}

}  // namespace

HeightRecord height_record(const DynPair& fp, const HeightPresentation* hp,
                           const Rational& t0, double tol, int cap) {
    HeightRecord rec;
    rec.t = t0;
    SpecializedSystem sys{0, {}, Rational(0)};
    try {
        sys = specialize(fp, t0);
    } catch (const DegenerateFibreError& e) {
        rec.degenerate = true;
        rec.note = e.what();
        return rec;
    } catch (const PoleError& e) {
        rec.degenerate = true;
        rec.note = e.what();
        return rec;
    }
    try {
        auto gh = global_height(sys, tol, cap);
        rec.hhat = gh.value_d();
        rec.certified = gh.certified;
        rec.places = std::move(gh.places);
    } catch (const Error& e) {
        rec.failed = true;
        rec.note = e.what();
        return rec;
    }
    rec.hD = hp ? h_D(*hp, t0) : 0.0;
    rec.diff = rec.hhat - rec.hD;
    return rec;
}

std::vector<Rational> rationals_up_to(long H) {
    std::vector<Rational> out;
    for (long b = 1; b <= H; ++b)
        for (long a = -H; a <= H; ++a) {
            if (b > 1 && (a == 0 || std::gcd(std::abs(a), b) != 1)) continue;
            out.push_back(make_rational(Int(a), Int(b)));
        }
    return out;
}

SweepSummary sweep_heights(const DynPair& fp, const HeightPresentation* hp, long H,
                           double tol, int cap, int threads) {
    SweepSummary s;
    auto ts = rationals_up_to(H);
    s.records.resize(ts.size());
    parallel_for(ts.size(), threads, [&](std::size_t i) {
        try {
            s.records[i] = height_record(fp, hp, ts[i], tol, cap);
        } catch (...) {
            s.records[i].t = ts[i];
            s.records[i].failed = true;
            s.records[i].note = "unexpected failure";
        }
    });
    for (const auto& r : s.records) {
        if (r.degenerate) {
            ++s.degenerate;
            continue;
        }
        if (r.failed || !r.certified) ++s.uncertified;
        if (r.failed) continue;
        if (std::abs(r.diff) > s.maxAbsDiff) {
            s.maxAbsDiff = std::abs(r.diff);
            s.argmax = r.t;
        }
    }
    return s;
}

CountResult count_parameters(const DynPair& fp, const HeightPresentation& hp, double B,
                             double tol, int cap, long slackH, long long budget,
                             int threads) {
    CountResult res;
    res.B = B;
    auto cal = sweep_heights(fp, &hp, slackH, tol, cap, threads);
    res.slack = cal.maxAbsDiff + 0.1;
    double degD = hp.D.degree().get_d();
    long Henum = static_cast<long>(std::ceil(std::exp((B + res.slack + 1.0) / degD)));
    if (Henum < 2) Henum = 2;
    res.enumBound = Henum;
    std::vector<Rational> cand;
    for (long b = 1; b <= Henum && !res.partial; ++b)
        for (long a = -Henum; a <= Henum; ++a) {
            if (b > 1 && (a == 0 || std::gcd(std::abs(a), b) != 1)) continue;
            if (res.enumerated >= budget) {
                res.partial = true;
                break;
            }
            ++res.enumerated;
            Rational t0 = make_rational(Int(a), Int(b));
            if (h_D(hp, t0) <= B + res.slack) cand.push_back(t0);
        }
    res.filtered = static_cast<long long>(cand.size());
    std::vector<char> in(cand.size(), 0), unc(cand.size(), 0);
    parallel_for(cand.size(), threads, [&](std::size_t i) {
        auto rec = height_record(fp, &hp, cand[i], tol, cap);
        if (rec.degenerate || rec.failed) {
            unc[i] = rec.failed ? 1 : 0;
            return;
        }
        if (!rec.certified) unc[i] = 1;
        if (rec.hhat <= B + 1e-9) in[i] = 1;
    });
    for (std::size_t i = 0; i < cand.size(); ++i) {
        res.count += in[i];
        res.uncertified += unc[i];
    }
    return res;
}

VerifyRecord verify_at(const DynPair& fp, const Rational& t0, double tol, int cap) {
    VerifyRecord v;
    v.t = t0;
    SpecializedSystem sys{0, {}, Rational(0)};
    try {
        sys = specialize(fp, t0);
    } catch (const DegenerateFibreError& e) {
        v.degenerate = true;
        v.pass = true;
        v.note = e.what();
        return v;
    } catch (const PoleError& e) {
        v.degenerate = true;
        v.pass = true;
        v.note = e.what();
        return v;
    }
    try {
        auto g1 = global_height(sys, tol, cap);
        SpecializedSystem next = sys;
        next.x = sys.apply(sys.x);
        auto g2 = global_height(next, tol, cap);
        auto g3 = global_height(sys, tol / 16, cap);
        v.hhat = g1.value_d();
        v.feResidual = r_abs(g2.value - Real(static_cast<long>(sys.d)) * g1.value).to_double();
        v.refineDelta = r_abs(g1.value - g3.value).to_double();
        v.certified = g1.certified && g2.certified && g3.certified;
        v.pass = v.feResidual <= 2.0 * (sys.d + 1) * tol && v.refineDelta <= 3.0 * tol;
    } catch (const Error& e) {
        v.note = e.what();
        v.pass = false;
    }
    return v;
}

namespace {

int cmd_divisor(const DynPair& fp, const RunConfig& cfg, std::ostream& os) {
    auto dres = divisor(fp);
    if (dres.D.empty()) {
        bool preper = is_preperiodic(fp);
        std::string note = preper ? "P is preperiodic under f"
                                  : "orbit degrees stay bounded; constant-height family";
        if (cfg.format == "json") {
            njson j;
            j["schema"] = 1;
            j["D"] = njson::array();
            j["deg"] = "0";
            j["note"] = note;
            os << j.dump() << "\n";
        } else {
            os << "D(f, P) = 0\n";
            os << "deg D = 0, so the canonical height of P over Q(t) is 0\n";
            os << note << "\n";
        }
        return 0;
    }
    auto pr = present_heights(fp);
    const auto& hp = pr.hp;
    if (cfg.format == "json") {
        njson j;
        j["schema"] = 1;
        njson entries = njson::array();
        for (const auto& [c, m] : hp.D.entries()) {
            njson e;
            e["place"] = c.str();
            e["mult"] = to_string(m);
            entries.push_back(e);
        }
        j["D"] = entries;
        j["deg"] = to_string(hp.D.degree());
        j["N"] = hp.N;
        j["scale"] = hp.scale.get_str();
        j["g"] = pretty_ratfunc(hp.g);
        j["maxEscapeN"] = pr.maxEscapeN;
        njson unv = njson::array();
        for (const auto& c : pr.unverified) unv.push_back(c.str());
        j["unverified"] = unv;
        j["certified"] = pr.unverified.empty();
        os << j.dump() << "\n";
    } else if (cfg.format == "csv") {
        os << "place,mult\n";
        for (const auto& [c, m] : hp.D.entries()) os << c.str() << "," << to_string(m) << "\n";
    } else {
        os << "D(f, P) = " << hp.D.str() << "\n";
        os << "deg D = " << to_string(hp.D.degree())
           << "   (canonical height of P over Q(t))\n";
        os << "N = " << hp.N << ", scale = " << hp.scale.get_str() << "\n";
        os << "g = " << pretty_ratfunc(hp.g) << "\n";
        os << "max escape level = " << pr.maxEscapeN << "\n";
        if (pr.unverified.empty()) {
            os << "certified: every support point escape level verified exactly\n";
        } else {
            std::vector<std::string> names;
            for (const auto& c : pr.unverified) names.push_back(c.str());
            os << "unverified bounded places: " << join(names, ", ") << "\n";
        }
    }
    return 0;
}

int cmd_series(const DynPair& fp, const RunConfig& cfg, std::ostream& os,
               std::ostream& err) {
    auto dres = divisor(fp);
    if (dres.D.empty()) {
        if (cfg.format == "json") {
            njson j;
            j["schema"] = 1;
            j["note"] = "D = 0; every correction series vanishes";
            os << j.dump() << "\n";
        } else {
            os << "D(f, P) = 0; every correction series vanishes\n";
        }
        return 0;
    }
    auto pr = present_heights(fp);
    if (cfg.format == "csv") os << "place,k,F_k\n";
    for (const auto& [c, m] : pr.hp.D.entries()) {
        if (!c.is_infinity() && c.poly().deg() != 1) {
            err << "note: support point " << c.str()
                << " has degree > 1; extension field required, skipped\n";
            continue;
        }
        CorrectionData cd;
        try {
            cd = correction_data(fp, c, pr.hp, cfg.order);
        } catch (const ExtensionFieldError& e) {
            err << "note: " << c.str() << ": " << e.what() << "\n";
            continue;
        }
        if (cfg.format == "json") {
            njson j;
            j["schema"] = 1;
            j["place"] = c.str();
            j["c"] = to_string(cd.c);
            j["scale"] = cd.scale.get_str();
            njson F = njson::array();
            for (long k = 1; k <= cfg.order; ++k) F.push_back(to_string(cd.Fseries.coeff(k)));
            j["F"] = F;
            os << j.dump() << "\n";
        } else if (cfg.format == "csv") {
            for (long k = 1; k <= cfg.order; ++k)
                os << c.str() << "," << k << "," << to_string(cd.Fseries.coeff(k)) << "\n";
        } else {
            os << "place " << c.str() << ": c = " << to_string(cd.c)
               << ", scale = " << cd.scale.get_str() << "\n";
            for (long k = 1; k <= cfg.order; ++k)
                os << "  F[" << k << "] = " << to_string(cd.Fseries.coeff(k)) << "\n";
        }
    }
    return 0;
}

int cmd_height(const DynPair& fp, const std::vector<Rational>& ts, const RunConfig& cfg,
               std::ostream& os, std::ostream& err) {
    if (ts.empty()) {
        err << "input error: height requires at least one --t value\n";
        return 2;
    }
    std::optional<PresentationResult> pr;
    if (!divisor(fp).D.empty()) pr = present_heights(fp);
    const HeightPresentation* hpp = pr ? &pr->hp : nullptr;
    std::vector<HeightRecord> recs;
    for (const auto& t0 : ts) recs.push_back(height_record(fp, hpp, t0, cfg.tol, cfg.cap));
    if (cfg.format == "json") records_json(recs, os);
    else if (cfg.format == "csv") records_csv(recs, os);
    else records_table(recs, true, os);
    if (cfg.strict) {
        for (const auto& r : recs)
            if (!r.degenerate && (r.failed || !r.certified)) return 3;
    }
    return 0;
}

int cmd_sweep(const DynPair& fp, const RunConfig& cfg, std::ostream& os,
              std::ostream& err) {
    if (cfg.bound < 2) {
        err << "input error: sweep requires --bound >= 2\n";
        return 2;
    }
    std::optional<PresentationResult> pr;
    if (!divisor(fp).D.empty()) pr = present_heights(fp);
    auto s = sweep_heights(fp, pr ? &pr->hp : nullptr, cfg.bound, cfg.tol, cfg.cap,
                           cfg.threads);
    if (cfg.format == "json") {
        records_json(s.records, os);
        njson j;
        j["schema"] = 1;
        j["summary"] = true;
        j["points"] = s.records.size();
        j["max_abs_diff"] = s.maxAbsDiff;
        j["argmax_t"] = to_string(s.argmax);
        j["uncertified"] = s.uncertified;
        j["degenerate"] = s.degenerate;
        os << j.dump() << "\n";
    } else if (cfg.format == "csv") {
        records_csv(s.records, os);
        err << "points = " << s.records.size() << ", max|diff| = " << fd(s.maxAbsDiff)
            << " at t = " << to_string(s.argmax) << ", uncertified = " << s.uncertified
            << ", degenerate = " << s.degenerate << "\n";
    } else {
        records_table(s.records, false, os);
        os << "points = " << s.records.size() << ", max|diff| = " << fd(s.maxAbsDiff)
           << " at t = " << to_string(s.argmax) << ", uncertified = " << s.uncertified
           << ", degenerate = " << s.degenerate << "\n";
    }
    if (cfg.strict && s.uncertified > 0) return 3;
    return 0;
}

int cmd_count(const DynPair& fp, const RunConfig& cfg, std::ostream& os,
              std::ostream& err) {
    if (cfg.B <= 0) {
        err << "input error: count requires --B > 0\n";
        return 2;
    }
    auto dres = divisor(fp);
    if (dres.D.empty()) {
        err << "error: ĥ_f(P)=0, so the counting function is not defined "
               "(deg D(f, P) = 0)\n";
        return 2;
    }
    auto pr = present_heights(fp);
    auto res = count_parameters(fp, pr.hp, cfg.B, cfg.tol, cfg.cap, 25, kCountBudget,
                                cfg.threads);
    double ratio = res.count > 0 ? std::log(static_cast<double>(res.count)) / res.B : 0.0;
    if (cfg.format == "json") {
        njson j;
        j["schema"] = 1;
        j["B"] = res.B;
        j["count"] = res.count;
        j["log_count_over_B"] = ratio;
        j["slack"] = res.slack;
        j["enum_bound"] = res.enumBound;
        j["enumerated"] = res.enumerated;
        j["filtered"] = res.filtered;
        j["uncertified"] = res.uncertified;
        j["partial"] = res.partial;
        os << j.dump() << "\n";
    } else if (cfg.format == "csv") {
        os << "B,count,log_count_over_B,slack,partial\n";
        os << fd(res.B, 17) << "," << res.count << "," << fd(ratio, 17) << ","
           << fd(res.slack, 17) << "," << (res.partial ? "yes" : "no") << "\n";
    } else {
        os << "B = " << fd(res.B) << "\n";
        os << "N(B) = " << res.count << "\n";
        os << "log N / B = " << fd(ratio) << "\n";
        os << "slack = " << fd(res.slack) << " (sweep-calibrated max|diff| + margin)\n";
        os << "enumerated " << res.enumerated << " rationals up to height "
           << res.enumBound << ", " << res.filtered << " past the h_D filter\n";
        if (res.partial) os << "partial: enumeration budget exceeded\n";
        if (res.uncertified) os << "uncertified points: " << res.uncertified << "\n";
    }
    if (cfg.strict && res.uncertified > 0) return 3;
    return 0;
}

int cmd_verify(const DynPair& fp, std::vector<Rational> ts, const RunConfig& cfg,
               std::ostream& os) {
    if (ts.empty())
        for (long v : {10L, 20L, 50L, 100L}) ts.push_back(Rational(v));
    long passed = 0, failed = 0, uncert = 0;
    std::vector<VerifyRecord> recs;
    for (const auto& t0 : ts) recs.push_back(verify_at(fp, t0, cfg.tol, cfg.cap));
    for (const auto& v : recs) {
        if (v.degenerate) continue;
        if (v.pass) ++passed;
        else ++failed;
        if (!v.certified) ++uncert;
    }
    if (cfg.format == "json") {
        for (const auto& v : recs) {
            njson j;
            j["schema"] = 1;
            j["t"] = to_string(v.t);
            j["hhat"] = v.hhat;
            j["fe_residual"] = v.feResidual;
            j["refine_delta"] = v.refineDelta;
            std::vector<std::string> flags;
            if (v.degenerate) flags.push_back("degenerate");
            else flags.push_back(v.certified ? "certified" : "uncertified");
            j["flags"] = flags;
            j["pass"] = v.pass;
            if (!v.note.empty()) j["note"] = v.note;
            os << j.dump() << "\n";
        }
    } else {
        os << std::left << std::setw(16) << "t" << std::right << std::setw(16) << "hhat"
           << std::setw(16) << "fe_residual" << std::setw(16) << "refine_delta"
           << "  verdict\n";
        for (const auto& v : recs) {
            os << std::left << std::setw(16) << to_string(v.t) << std::right;
            if (v.degenerate) {
                os << std::setw(16) << "-" << std::setw(16) << "-" << std::setw(16) << "-"
                   << "  degenerate  " << v.note << "\n";
                continue;
            }
            os << std::setw(16) << fd(v.hhat) << std::setw(16) << fd(v.feResidual, 3)
               << std::setw(16) << fd(v.refineDelta, 3) << "  "
               << (v.pass ? "pass" : "FAIL") << (v.certified ? "" : " (uncertified)")
               << "\n";
        }
        os << "verified " << passed << "/" << (passed + failed) << " parameters\n";
    }
    if (cfg.strict && (failed > 0 || uncert > 0)) return 3;
    return 0;
}

}  // namespace

int run_command(const RunConfig& cfg, std::ostream& outStream, std::ostream& errStream) {
    static const std::vector<std::string> commands = {"divisor", "height", "series",
                                                      "sweep",   "count",  "verify"};
    if (std::find(commands.begin(), commands.end(), cfg.command) == commands.end()) {
        errStream << "input error: unknown command '" << cfg.command
                  << "' (expected divisor|height|series|sweep|count|verify)\n";
        return 2;
    }
    if (cfg.format != "table" && cfg.format != "json" && cfg.format != "csv") {
        errStream << "input error: unknown format '" << cfg.format << "'\n";
        return 2;
    }
    if (!(cfg.tol > 0)) {
        errStream << "input error: tolerance must be positive\n";
        return 2;
    }
    if (cfg.order < 1) {
        errStream << "input error: series order must be at least 1\n";
        return 2;
    }
    if (cfg.cap < 0) {
        errStream << "input error: cap must be non-negative\n";
        return 2;
    }
    if (cfg.f_src.empty() || cfg.P_src.empty()) {
        errStream << "input error: --f and --P are required\n";
        return 2;
    }
    std::optional<DynPair> fp;
    std::vector<Rational> ts;
    try {
        fp = parse_dynpair(cfg.f_src, cfg.P_src);
        for (const auto& s : cfg.t_values) ts.push_back(parse_rational(s));
    } catch (const ParseError& e) {
        errStream << "input error: " << e.what() << "\n";
        return 2;
    }
    std::ofstream file;
    std::ostream* os = &outStream;
    if (!cfg.out.empty()) {
        file.open(cfg.out);
        if (!file) {
            errStream << "input error: cannot open output path " << cfg.out << "\n";
            return 2;
        }
        os = &file;
    }
    try {
        if (cfg.command == "divisor") return cmd_divisor(*fp, cfg, *os);
        if (cfg.command == "height") return cmd_height(*fp, ts, cfg, *os, errStream);
        if (cfg.command == "series") return cmd_series(*fp, cfg, *os, errStream);
        if (cfg.command == "sweep") return cmd_sweep(*fp, cfg, *os, errStream);
        if (cfg.command == "count") return cmd_count(*fp, cfg, *os, errStream);
        return cmd_verify(*fp, ts, cfg, *os);
    } catch (const Error& e) {
        errStream << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace hauteur
