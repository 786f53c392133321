#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "hauteur/harness.hpp"
#include "hauteur/parse.hpp"
#include "hauteur/specialize.hpp"
#include "json.hpp"

using namespace hauteur;
using njson = nlohmann::json;

namespace {

RunConfig base(std::string command, std::string f, std::string P) {
    RunConfig cfg;
    cfg.command = std::move(command);
    cfg.f_src = std::move(f);
    cfg.P_src = std::move(P);
    return cfg;
}

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const RunConfig& cfg) {
    std::ostringstream os, es;
    int code = run_command(cfg, os, es);
    return {code, os.str(), es.str()};
}

std::vector<njson> json_lines(const std::string& text) {
    std::vector<njson> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) lines.push_back(njson::parse(line));
    return lines;
}

Rational q(long n, long d) { return Rational(n) / Rational(d); }

}  // namespace

TEST_CASE("rationals_up_to enumerates reduced fractions in (den, num) order") {
    auto r3 = rationals_up_to(3);
    std::vector<Rational> expected = {
        Rational(-3), Rational(-2), Rational(-1), Rational(0),  Rational(1),
        Rational(2),  Rational(3),  q(-3, 2),     q(-1, 2),     q(1, 2),
        q(3, 2),      q(-2, 3),     q(-1, 3),     q(1, 3),      q(2, 3)};
    CHECK(r3 == expected);

    auto r50 = rationals_up_to(50);
    CHECK(r50.size() == 3095);
    for (std::size_t i = 0; i + 1 < r50.size(); ++i) {
        auto dl = r50[i].get_den(), dr = r50[i + 1].get_den();
        CHECK((dl < dr || (dl == dr && r50[i].get_num() < r50[i + 1].get_num())));
    }
    for (const auto& x : r50) {
        CHECK(x.get_den() <= 50);
        CHECK(abs(x.get_num()) <= 50);
    }
}

TEST_CASE("height_record matches the direct computation") {
    auto fp = parse_dynpair("z^2 + t", "0");
    auto pr = present_heights(fp);
    auto rec = height_record(fp, &pr.hp, Rational(10));

    auto direct = global_height(specialize(fp, Rational(10)));
    CHECK(rec.hhat == doctest::Approx(direct.value_d()).epsilon(1e-12));
    CHECK(rec.hD == doctest::Approx(h_D(pr.hp, Rational(10))).epsilon(1e-12));
    CHECK(rec.diff == doctest::Approx(rec.hhat - rec.hD).epsilon(1e-12));
    CHECK(rec.certified);
    CHECK_FALSE(rec.degenerate);
    CHECK_FALSE(rec.failed);
    CHECK_FALSE(rec.places.empty());
    double placeSum = 0;
    for (const auto& [p, lr] : rec.places) placeSum += lr.value_d();
    CHECK(placeSum == doctest::Approx(rec.hhat).epsilon(1e-9));
}

TEST_CASE("height_record flags degenerate fibres") {
    auto fp = parse_dynpair("z^2 + t", "1/t");
    auto rec = height_record(fp, nullptr, Rational(0));
    CHECK(rec.degenerate);
    CHECK_FALSE(rec.failed);
    CHECK(rec.diff == 0.0);
    CHECK_FALSE(rec.note.empty());
}

TEST_CASE("sweep_heights summary agrees with its own records") {
    auto fp = parse_dynpair("z^2 + t", "0");
    auto pr = present_heights(fp);
    auto s = sweep_heights(fp, &pr.hp, 5);
    CHECK(s.records.size() == rationals_up_to(5).size());

    double maxAbs = 0;
    Rational argmax;
    long uncert = 0, degen = 0;
    for (const auto& r : s.records) {
        if (r.degenerate) ++degen;
        if (!r.degenerate && !r.failed && !r.certified) ++uncert;
        if (!r.degenerate && !r.failed && std::abs(r.diff) > maxAbs) {
            maxAbs = std::abs(r.diff);
            argmax = r.t;
        }
    }
    CHECK(s.maxAbsDiff == doctest::Approx(maxAbs).epsilon(1e-15));
    CHECK(s.argmax == argmax);
    CHECK(s.uncertified == uncert);
    CHECK(s.degenerate == degen);
    CHECK(s.uncertified > 0);
    CHECK(s.degenerate == 0);
}

TEST_CASE("count_parameters counts naive heights for the monomial family") {
    auto fp = parse_dynpair("z^2", "t");
    auto pr = present_heights(fp);
    auto res = count_parameters(fp, pr.hp, std::log(5.0), kDefaultTol, kArchCap, 5);
    CHECK(res.count == 39);
    CHECK_FALSE(res.partial);
    CHECK(res.enumBound >= 5);
    CHECK(res.enumerated >= 39);
    CHECK(res.filtered >= res.count);

    auto tiny = count_parameters(fp, pr.hp, std::log(5.0), kDefaultTol, kArchCap, 5, 10);
    CHECK(tiny.partial);
    CHECK(tiny.count <= 10);
}

TEST_CASE("verify_at separates pass and certification") {
    auto fp = parse_dynpair("z^2 + t", "0");
    auto good = verify_at(fp, Rational(10));
    CHECK(good.pass);
    CHECK(good.certified);
    CHECK(good.feResidual <= 6 * kDefaultTol);
    CHECK(good.refineDelta <= 3 * kDefaultTol);

    auto bounded = verify_at(fp, Rational(-1));
    CHECK(bounded.pass);
    CHECK_FALSE(bounded.certified);
    CHECK(bounded.hhat == 0.0);
}

TEST_CASE("divisor command prints the presentation") {
    auto r = run(base("divisor", "z^2 + t", "7*t + 1/t"));
    CHECK(r.code == 0);
    CHECK(r.out.find("deg D = 2") != std::string::npos);
    CHECK(r.out.find("inf") != std::string::npos);
    CHECK(r.out.find("certified: every support point escape level verified exactly") !=
          std::string::npos);

    auto cfg = base("divisor", "z^2 + t", "7*t + 1/t");
    cfg.format = "json";
    auto j = json_lines(run(cfg).out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["schema"] == 1);
    CHECK(j[0]["deg"] == "2");
    CHECK(j[0]["D"].size() == 2);
    CHECK(j[0]["certified"] == true);
    CHECK(j[0]["unverified"].empty());
}

TEST_CASE("divisor command reports empty divisors with a reason") {
    auto r = run(base("divisor", "z^2", "1"));
    CHECK(r.code == 0);
    CHECK(r.out.find("D(f, P) = 0") != std::string::npos);
    CHECK(r.out.find("preperiodic") != std::string::npos);

    auto cfg = base("divisor", "z^2", "1");
    cfg.format = "json";
    auto j = json_lines(run(cfg).out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["deg"] == "0");
    CHECK(j[0]["D"].empty());
}

TEST_CASE("series command emits exact correction coefficients") {
    auto cfg = base("series", "z^2 + t", "0");
    cfg.order = 6;
    cfg.format = "json";
    auto r = run(cfg);
    CHECK(r.code == 0);
    auto j = json_lines(r.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["place"] == "inf");
    CHECK(j[0]["c"] == "1");
    CHECK(j[0]["scale"] == "2");
    std::vector<std::string> want = {"1/4", "-1/8", "5/24", "-5/16", "17/40", "-29/48"};
    REQUIRE(j[0]["F"].size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(j[0]["F"][i] == want[i]);

    cfg.format = "table";
    auto table = run(cfg);
    CHECK(table.out.find("F[3] = 5/24") != std::string::npos);

    cfg.format = "csv";
    auto csv = run(cfg);
    CHECK(csv.out.find("place,k,F_k") == 0);
    CHECK(csv.out.find("inf,3,5/24") != std::string::npos);
}

TEST_CASE("series command skips support points needing an extension field") {
    auto cfg = base("series", "z^2 + t", "t^3/(t^2 + 1)");
    auto r = run(cfg);
    CHECK(r.code == 0);
    CHECK(r.err.find("degree > 1") != std::string::npos);
    CHECK(r.out.find("place inf") != std::string::npos);
}

TEST_CASE("height command emits one json record per t") {
    auto cfg = base("height", "z^2 + t", "0");
    cfg.t_values = {"10", "-3/7"};
    cfg.format = "json";
    auto r = run(cfg);
    CHECK(r.code == 0);
    auto j = json_lines(r.out);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["t"] == "10");
    CHECK(j[1]["t"] == "-3/7");
    for (const auto& rec : j) {
        for (const char* key : {"schema", "t", "hhat", "hD", "diff", "flags", "places"})
            CHECK(rec.contains(key));
        CHECK(rec["schema"] == 1);
        for (const auto& pl : rec["places"]) {
            CHECK(pl.contains("place"));
            CHECK(pl.contains("value"));
            CHECK(pl.contains("certified"));
        }
    }
    auto fp = parse_dynpair("z^2 + t", "0");
    double direct = global_height(specialize(fp, Rational(10))).value_d();
    CHECK(j[0]["hhat"].get<double>() == doctest::Approx(direct).epsilon(1e-12));
    CHECK(j[0]["flags"][0] == "certified");
    CHECK(j[1]["flags"][0] == "uncertified");
}

TEST_CASE("height command table and csv formats") {
    auto cfg = base("height", "z^2 + t", "0");
    cfg.t_values = {"10"};
    auto table = run(cfg);
    CHECK(table.code == 0);
    CHECK(table.out.find("hhat") != std::string::npos);
    CHECK(table.out.find("arch") != std::string::npos);

    cfg.format = "csv";
    auto csv = run(cfg);
    CHECK(csv.out.find("t,hhat,hD,diff,flags") == 0);
    CHECK(csv.out.find("\n10,") != std::string::npos);
    CHECK(csv.out.find("certified") != std::string::npos);
}

TEST_CASE("height command validates and enforces strictness") {
    auto cfg = base("height", "z^2 + t", "0");
    auto missing = run(cfg);
    CHECK(missing.code == 2);
    CHECK(missing.err.find("requires at least one --t") != std::string::npos);

    cfg.t_values = {"0"};
    CHECK(run(cfg).code == 0);
    cfg.strict = true;
    CHECK(run(cfg).code == 3);

    cfg.t_values = {"10"};
    CHECK(run(cfg).code == 0);

    // degenerate fibres are reported, not failed, under strict
    auto degen = base("height", "z^2 + t", "1/t");
    degen.t_values = {"0"};
    degen.strict = true;
    auto dr = run(degen);
    CHECK(dr.code == 0);
    CHECK(dr.out.find("degenerate") != std::string::npos);
}

TEST_CASE("sweep command summarizes records") {
    auto cfg = base("sweep", "z^2 + t", "0");
    cfg.bound = 3;
    cfg.format = "json";
    auto r = run(cfg);
    CHECK(r.code == 0);
    auto j = json_lines(r.out);
    REQUIRE(j.size() == 16);
    CHECK(j.back().contains("summary"));
    CHECK(j.back()["points"] == 15);
    CHECK(j.back()["uncertified"].get<long>() > 0);
    CHECK(j.back()["degenerate"] == 0);

    cfg.format = "table";
    auto table = run(cfg);
    CHECK(table.out.find("points = 15, max|diff| = ") != std::string::npos);

    cfg.bound = 1;
    CHECK(run(cfg).code == 2);
    cfg.bound = 3;
    cfg.strict = true;
    CHECK(run(cfg).code == 3);
}

TEST_CASE("count command counts and refuses degree zero") {
    auto cfg = base("count", "z^2", "t");
    cfg.B = std::log(5.0);
    auto r = run(cfg);
    CHECK(r.code == 0);
    CHECK(r.out.find("N(B) = 39") != std::string::npos);

    cfg.format = "json";
    auto j = json_lines(run(cfg).out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["count"] == 39);
    CHECK(j[0]["partial"] == false);

    auto refuse = base("count", "z^2", "1");
    refuse.B = 3.0;
    auto rr = run(refuse);
    CHECK(rr.code == 2);
    CHECK(rr.err.find("ĥ_f(P)=0") != std::string::npos);
    CHECK(rr.err.find("deg D(f, P) = 0") != std::string::npos);

    auto bad = base("count", "z^2", "t");
    bad.B = 0.0;
    CHECK(run(bad).code == 2);
}

TEST_CASE("verify command audits default parameters") {
    auto cfg = base("verify", "z^2 + t", "0");
    auto r = run(cfg);
    CHECK(r.code == 0);
    CHECK(r.out.find("verified 4/4 parameters") != std::string::npos);

    cfg.format = "json";
    auto j = json_lines(run(cfg).out);
    REQUIRE(j.size() == 4);
    for (const auto& rec : j) {
        CHECK(rec["pass"] == true);
        CHECK(rec.contains("fe_residual"));
        CHECK(rec.contains("refine_delta"));
    }

    cfg.t_values = {"-1"};
    cfg.strict = true;
    CHECK(run(cfg).code == 3);
    cfg.strict = false;
    CHECK(run(cfg).code == 0);
}

TEST_CASE("run_command validates inputs") {
    CHECK(run(base("frobnicate", "z^2", "t")).code == 2);
    auto r = run(base("frobnicate", "z^2", "t"));
    CHECK(r.err.find("unknown command") != std::string::npos);

    auto cfg = base("height", "z^2", "t");
    cfg.t_values = {"2"};
    cfg.format = "yaml";
    CHECK(run(cfg).code == 2);
    cfg.format = "table";
    cfg.tol = 0.0;
    CHECK(run(cfg).code == 2);
    cfg.tol = 1e-10;
    cfg.order = 0;
    CHECK(run(cfg).code == 2);
    cfg.order = 8;
    cfg.cap = -1;
    CHECK(run(cfg).code == 2);
    cfg.cap = kArchCap;
    CHECK(run(cfg).code == 0);

    auto empty = base("height", "", "t");
    empty.t_values = {"2"};
    CHECK(run(empty).code == 2);

    auto parse = base("height", "z^2 + q", "0");
    parse.t_values = {"2"};
    auto pr = run(parse);
    CHECK(pr.code == 2);
    CHECK(pr.err.find("input error:") != std::string::npos);
    CHECK(pr.err.find("position") != std::string::npos);

    auto badt = base("height", "z^2", "t");
    badt.t_values = {"1/0"};
    CHECK(run(badt).code == 2);
}

TEST_CASE("run_command writes --out files") {
    auto cfg = base("series", "z^2 + t", "0");
    cfg.order = 3;
    cfg.out = "test_out_series.txt";
    auto r = run(cfg);
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(cfg.out);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str().find("F[3] = 5/24") != std::string::npos);
    in.close();
    std::remove(cfg.out.c_str());

    cfg.out = "no_such_dir/xyz.txt";
    auto bad = run(cfg);
    CHECK(bad.code == 2);
    CHECK(bad.err.find("cannot open output path") != std::string::npos);
}
