#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "hauteur/bottcher.hpp"
#include "hauteur/harness.hpp"
#include "hauteur/parse.hpp"

namespace py = pybind11;
using namespace hauteur;

namespace {

py::object opt_int(const std::optional<int>& v) {
    return v ? py::cast(*v) : py::none();
}

py::dict record_dict(const HeightRecord& r) {
    py::dict d;
    d["t"] = to_string(r.t);
    d["hhat"] = r.hhat;
    d["hD"] = r.hD;
    d["diff"] = r.diff;
    d["certified"] = r.certified;
    d["degenerate"] = r.degenerate;
    d["failed"] = r.failed;
    if (!r.note.empty()) d["note"] = r.note;
    py::list places;
    for (const auto& [v, lh] : r.places) {
        py::dict p;
        p["place"] = v.str();
        p["value"] = lh.value_d();
        p["certified"] = lh.certified;
        p["exact"] = lh.exactForm ? py::cast(lh.exactForm->str()) : py::object(py::none());
        p["escapeN"] = opt_int(lh.escapeN);
        places.append(p);
    }
    d["places"] = places;
    return d;
}

// parsed family plus its divisor and height presentation; the presentation
// is absent exactly when D = 0
struct Family {
    DynPair fp;
    DivisorResult dres;
    std::optional<PresentationResult> pres;

    Family(const std::string& f, const std::string& P)
        : fp(parse_dynpair(f, P)), dres(divisor(fp)) {
        if (!dres.D.empty()) pres = present_heights(fp);
    }

    const HeightPresentation* hp() const { return pres ? &pres->hp : nullptr; }

    const HeightPresentation& hp_or_throw() const {
        if (!pres)
            throw std::invalid_argument("D(f, P) = 0; no height presentation exists");
        return pres->hp;
    }

    py::dict divisor_info() const {
        py::dict d;
        d["str"] = dres.D.str();
        d["degree"] = to_string(dres.degree());
        py::list entries;
        for (const auto& [c, m] : dres.D.entries())
            entries.append(py::make_tuple(c.str(), to_string(m)));
        d["entries"] = entries;
        py::list unv;
        for (const auto& c : dres.unverified) unv.append(c.str());
        d["unverified"] = unv;
        return d;
    }

    double hD(const std::string& t) const {
        return h_D(hp_or_throw(), rational_from_string(t));
    }

    std::string hD_exact(const std::string& t) const {
        return h_D_exact(hp_or_throw(), rational_from_string(t)).str();
    }

    py::dict height(const std::string& t, double tol, int cap) const {
        return record_dict(height_record(fp, hp(), rational_from_string(t), tol, cap));
    }

    py::list series(long order) const {
        const auto& h = hp_or_throw();
        py::list out;
        for (const auto& [c, m] : h.D.entries()) {
            if (!c.is_infinity() && c.poly().deg() != 1) continue;
            auto cd = correction_data(fp, c, h, order);
            py::dict e;
            e["place"] = c.str();
            e["c"] = to_string(cd.c);
            e["scale"] = cd.scale.get_str();
            py::list F;
            for (long k = 1; k <= order; ++k) F.append(to_string(cd.Fseries.coeff(k)));
            e["F"] = F;
            out.append(e);
        }
        return out;
    }

    py::dict sweep(long H, double tol, int cap, int threads) const {
        auto s = sweep_heights(fp, hp(), H, tol, cap, threads);
        py::dict d;
        py::list recs;
        for (const auto& r : s.records) recs.append(record_dict(r));
        d["records"] = recs;
        d["max_abs_diff"] = s.maxAbsDiff;
        d["argmax"] = to_string(s.argmax);
        d["uncertified"] = s.uncertified;
        d["degenerate"] = s.degenerate;
        return d;
    }

    py::dict count(double B, double tol, int cap, long slackH, long long budget,
                   int threads) const {
        auto r = count_parameters(fp, hp_or_throw(), B, tol, cap, slackH, budget,
                                  threads);
        py::dict d;
        d["count"] = r.count;
        d["B"] = r.B;
        d["slack"] = r.slack;
        d["enum_bound"] = r.enumBound;
        d["enumerated"] = r.enumerated;
        d["filtered"] = r.filtered;
        d["uncertified"] = r.uncertified;
        d["partial"] = r.partial;
        return d;
    }

    py::dict verify(const std::string& t, double tol, int cap) const {
        auto r = verify_at(fp, rational_from_string(t), tol, cap);
        py::dict d;
        d["t"] = to_string(r.t);
        d["hhat"] = r.hhat;
        d["fe_residual"] = r.feResidual;
        d["refine_delta"] = r.refineDelta;
        d["certified"] = r.certified;
        d["degenerate"] = r.degenerate;
        d["pass"] = r.pass;
        if (!r.note.empty()) d["note"] = r.note;
        return d;
    }

    bool preperiodic() const { return is_preperiodic(fp); }
};

}  // namespace

PYBIND11_MODULE(_hauteur, m) {
    m.doc() = "exact canonical heights for one-parameter polynomial families";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<DegenerateFibreError>(m, "DegenerateFibreError",
                                                 PyExc_ValueError);

    py::class_<Family>(m, "Family")
        .def(py::init<const std::string&, const std::string&>(), py::arg("f"),
             py::arg("P"))
        .def_property_readonly("degree", [](const Family& f) { return f.fp.d; })
        .def("divisor", &Family::divisor_info)
        .def("h_D", &Family::hD, py::arg("t"))
        .def("h_D_exact", &Family::hD_exact, py::arg("t"))
        .def("height", &Family::height, py::arg("t"), py::arg("tol") = kDefaultTol,
             py::arg("cap") = kArchCap)
        .def("series", &Family::series, py::arg("order") = 8)
        .def("sweep", &Family::sweep, py::arg("H"), py::arg("tol") = kDefaultTol,
             py::arg("cap") = kArchCap, py::arg("threads") = 0)
        .def("count", &Family::count, py::arg("B"), py::arg("tol") = kDefaultTol,
             py::arg("cap") = kArchCap, py::arg("slackH") = 25L,
             py::arg("budget") = kCountBudget, py::arg("threads") = 0)
        .def("verify", &Family::verify, py::arg("t"), py::arg("tol") = kDefaultTol,
             py::arg("cap") = kArchCap)
        .def("preperiodic", &Family::preperiodic);

    m.def(
        "rationals",
        [](long H) {
            py::list out;
            for (const auto& x : rationals_up_to(H)) out.append(to_string(x));
            return out;
        },
        py::arg("H"));
    m.def(
        "weil_height",
        [](const std::string& x) { return weil_height(rational_from_string(x)); },
        py::arg("x"));
}
