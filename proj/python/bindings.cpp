// Python bindings. Structured values cross the boundary as JSON-shaped dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "floerforge/botany.hpp"
#include "floerforge/catalog.hpp"
#include "floerforge/invariants.hpp"
#include "floerforge/khovanov.hpp"

namespace py = pybind11;
using namespace ff;

namespace {

py::object to_py(const json& j) { return py::module_::import("json").attr("loads")(j.dump()); }
json from_py(const py::object& o) { return json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>()); }

BifilteredComplex load_complex(const py::object& o) { return complex_from_json(from_py(o)); }

py::dict conway_dict(const py::object& module, const std::string& route, const std::string& mode) {
    auto r = conway(module_from_json(from_py(module)), parse_route(route));
    auto lk = linking_from_conway(r.nabla, parse_linking_mode(mode));
    py::dict d;
    d["delta"] = r.delta.str();
    d["nabla"] = r.nabla.str();
    d["nabla_t"] = r.nabla_t.str();
    d["linking"] = lk ? py::object(py::str(rational_to_string(*lk))) : py::object(py::none());
    return d;
}

const KhTable& kh_of(const std::string& id) {
    auto& e = default_catalog().lookup(id);
    if (!e.kh) throw std::invalid_argument(id + " has no Khovanov table in the catalog");
    return *e.kh;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    py::register_exception<DecompositionError>(m, "DecompositionError", PyExc_ValueError);
    py::register_exception<TruncationError>(m, "TruncationError", PyExc_RuntimeError);

    m.def("assets_dir", &default_assets_dir);

    m.def("validate", [](const py::object& c) {
        py::list out;
        for (auto& v : validate_complex(load_complex(c))) out.append(py::make_tuple(v.kind, v.detail));
        return out;
    });
    m.def("homology", [](const py::object& c) { return to_py(module_to_json(associated_graded_homology(load_complex(c)))); });
    m.def("total_homology", [](const py::object& c) {
        std::map<std::string, int64_t> out;
        for (auto& [mas, r] : total_homology(load_complex(c))) out[mas.str()] = r;
        return out;
    });
    m.def("reduce", [](const py::object& c) { return to_py(complex_to_json(reduce_grading_preserving(load_complex(c)))); });
    m.def("decompose", [](const py::object& c) { return decompose_e2(load_complex(c)).strings(); });
    m.def("census", [](const py::object& c) { return summand_census_oracle(load_complex(c)).strings(); });
    m.def(
        "realize",
        [](const std::vector<std::string>& s, const std::string& field) {
            return to_py(complex_to_json(realize(parse_decomposition(s), parse_field(field))));
        },
        py::arg("summands"), py::arg("field") = "gf2");
    m.def("verify", [](const py::object& c, const std::vector<std::string>& s) {
        auto r = verify_decomposition(load_complex(c), parse_decomposition(s));
        return py::make_tuple(r.ok, r.mismatches);
    });
    m.def("module_of", [](const std::vector<std::string>& s) { return to_py(module_to_json(module_of(parse_decomposition(s)))); });
    m.def("symmetry_transform",
          [](const py::object& mod) { return to_py(module_to_json(symmetry_transform(module_from_json(from_py(mod))))); });
    m.def("conway", &conway_dict, py::arg("module"), py::arg("route") = "reversed", py::arg("mode") = "paper-lowest");

    m.def("catalog_ids", [] { return default_catalog().ids(); });
    m.def("catalog_entry", [](const std::string& id) { return to_py(entry_to_json(default_catalog().lookup(id))); });
    m.def("catalog_selfcheck", [] { return to_py(selfcheck_to_json(selfcheck_catalog(default_catalog()))); });

    m.def(
        "detect",
        [](int n, int threads) {
            DetectionReport r;
            {
                py::gil_scoped_release release;
                r = detect_t22n(n, threads);
            }
            py::dict d;
            d["link"] = r.link;
            d["skeleton"] = r.skeleton.strings();
            py::list cands;
            for (auto& c : r.candidates) cands.append(to_py(candidate_to_json(c)));
            d["candidates"] = cands;
            std::vector<std::string> surv;
            for (auto& c : r.survivors) surv.push_back(c.label);
            d["survivors"] = surv;
            d["matches_catalog"] = r.matches_catalog;
            d["log"] = r.log;
            return d;
        },
        py::arg("n"), py::arg("threads") = 1);
    m.def(
        "classify_rank_thin",
        [](int rank, const std::string& bound, int64_t lk, int threads) {
            ThinClassification c;
            {
                py::gil_scoped_release release;
                c = classify_rank_thin(rank, SearchWindow::symmetric(HalfInt::parse(bound), rank, lk), threads);
            }
            std::vector<std::vector<std::string>> surv, unl;
            for (auto& s : c.survivors) surv.push_back(s.decomposition.strings());
            for (auto& s : c.unlink_flagged) unl.push_back(s.decomposition.strings());
            py::dict d;
            d["survivors"] = surv;
            d["unlink_flagged"] = unl;
            d["enumerated"] = c.enumerated;
            return d;
        },
        py::arg("rank"), py::arg("bound") = "3/2", py::arg("lk") = 1, py::arg("threads") = 1);

    m.def("kh_ranks", [](const std::string& id) {
        auto& t = kh_of(id);
        py::dict d;
        d["gf2"] = kh_total(t, Field::GF2);
        d["q"] = kh_total(t, Field::Q);
        d["torsion"] = t.torsion_count();
        d["reduced_gf2"] = reduced_rank_f2(t);
        d["lee_gradings"] = lee_inference(t).gradings;
        auto th = kh_thin_s_chi(t);
        d["thin"] = th.thin;
        d["s"] = th.s ? py::object(py::int_(*th.s)) : py::object(py::none());
        d["chi_bound"] = th.chi_bound ? py::object(py::int_(*th.chi_bound)) : py::object(py::none());
        return d;
    });
    m.def("dowlin_bound", &dowlin_bound);
    m.def("batson_seed", [](const std::string& link, const std::string& a, const std::string& b, int64_t lk) {
        auto tensor = kh_tensor(ranks_by_i_minus_j(kh_of(a)), ranks_by_i_minus_j(kh_of(b)));
        auto r = batson_seed_check(ranks_by_i_minus_j(kh_of(link)), tensor, lk);
        py::dict d;
        d["verdict"] = to_py(report_to_json(r.report));
        d["witness"] = r.report.witness;
        d["tensor"] = delta_ranks_str(tensor);
        d["violations"] = r.violations;
        return d;
    });
}
