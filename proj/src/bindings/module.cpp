#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "torusbundle/report.hpp"
#include "torusbundle/verification.hpp"

namespace py = pybind11;
using namespace torusbundle;

namespace {

std::vector<std::vector<Int>> matrix_to_rows(const IntMatrix& m) {
    std::vector<std::vector<Int>> out(m.rows(), std::vector<Int>(m.cols()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out[i][j] = m.at(i, j);
    return out;
}

IntMatrix rows_to_matrix(const std::vector<std::vector<Int>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("ragged matrix rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

CoefficientRing ring_from_args(const std::string& ring, std::optional<Int> p) {
    return CoefficientRing::parse(ring, p);
}

py::dict group_to_dict(const AbelianGroupPresentation& g) {
    py::dict d;
    d["name"] = g.group_name();
    d["invariant_factors"] = g.invariant_factors;
    py::list gens;
    for (const auto& c : g.generators) gens.append(c.coords);
    d["generators"] = gens;
    return d;
}

py::dict element_terms(const GroupRingElement& x) {
    py::dict d;
    for (const auto& [g, c] : x.terms()) d[py::make_tuple(g.m, g.n, g.k)] = c;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact cohomology rings of torus bundles over the circle";

    py::register_exception<Error>(m, "TorusBundleError");

    py::class_<GluingMatrix>(m, "GluingMatrix")
        .def(py::init<Int, Int, Int, Int>(), py::arg("alpha"), py::arg("gamma"), py::arg("beta"),
             py::arg("delta"))
        .def_property_readonly("alpha", &GluingMatrix::alpha)
        .def_property_readonly("gamma", &GluingMatrix::gamma)
        .def_property_readonly("beta", &GluingMatrix::beta)
        .def_property_readonly("delta", &GluingMatrix::delta)
        .def_property_readonly("det", &GluingMatrix::det)
        .def_property_readonly("m1", &GluingMatrix::m1)
        .def_property_readonly("n1", &GluingMatrix::n1)
        .def_property_readonly("m2", &GluingMatrix::m2)
        .def_property_readonly("n2", &GluingMatrix::n2)
        .def("rank_minus_identity", &GluingMatrix::rank_minus_identity)
        .def("power_apply",
             [](const GluingMatrix& t, Int k, std::pair<Int, Int> v) {
                 return t.power_apply(k, v);
             })
        .def("__repr__",
             [](const GluingMatrix& t) { return "GluingMatrix" + t.to_string(); });

    py::class_<GroupElement>(m, "GroupElement")
        .def(py::init([](Int mm, Int nn, Int kk) {
                 return GroupElement{mm, nn, kk};
             }),
             py::arg("m"), py::arg("n"), py::arg("k"))
        .def_readwrite("m", &GroupElement::m)
        .def_readwrite("n", &GroupElement::n)
        .def_readwrite("k", &GroupElement::k)
        .def(py::self == py::self)
        .def("__repr__", [](const GroupElement& g) {
            return "GroupElement(" + std::to_string(g.m) + ", " + std::to_string(g.n) + ", " +
                   std::to_string(g.k) + ")";
        });

    py::class_<GroupRingElement>(m, "GroupRingElement")
        .def(py::init<>())
        .def_static("term",
                    [](Int mm, Int nn, Int kk, Int coeff) {
                        return GroupRingElement::term({mm, nn, kk}, coeff);
                    },
                    py::arg("m"), py::arg("n"), py::arg("k"), py::arg("coeff") = 1)
        .def_static("one", &GroupRingElement::one)
        .def_static("zero", &GroupRingElement::zero)
        .def("terms", &element_terms)
        .def("is_zero", &GroupRingElement::is_zero)
        .def("__add__", &GroupRingElement::operator+)
        .def("__sub__",
             [](const GroupRingElement& a, const GroupRingElement& b) { return a - b; })
        .def("__neg__", [](const GroupRingElement& a) { return -a; })
        .def(py::self == py::self)
        .def("__repr__", &GroupRingElement::to_string);

    m.def("mul_elements",
          [](const GluingMatrix& t, const GroupElement& g, const GroupElement& h) {
              return mul_elements(t, g, h);
          });
    m.def("ring_mul", &ring_mul);
    m.def("augmentation", &augmentation);
    m.def(
        "fox_power",
        [](Int exponent, const std::string& axis) {
            if (axis != "a" && axis != "b") throw std::invalid_argument("axis must be 'a' or 'b'");
            return fox_power(exponent, axis == "a" ? Axis::A : Axis::B);
        },
        py::arg("exponent"), py::arg("axis"));

    m.def("build_e", [](const GluingMatrix& t) { return build_e(t).e; });
    m.def("solve_e_lattice", &solve_e_lattice);
    m.def("satisfies_e_identity", &satisfies_e_identity);

    m.def("build_resolution_summary", [](const GluingMatrix& t) {
        Resolution res = Resolution::build(t);
        py::dict d;
        d["A"] = element_terms(res.A());
        d["B"] = element_terms(res.B());
        d["C"] = element_terms(res.C());
        d["D"] = element_terms(res.D());
        d["E"] = element_terms(res.E());
        d["e_from_lattice_fallback"] = res.e_from_lattice_fallback();
        d["table_row"] = res.index_sets() ? res.index_sets()->row : 0;
        return d;
    });

    m.def("smith_normal_form", [](const std::vector<std::vector<Int>>& rows) {
        SmithForm s = smith_normal_form(rows_to_matrix(rows));
        return py::make_tuple(matrix_to_rows(s.U), matrix_to_rows(s.D), matrix_to_rows(s.V));
    });

    m.def(
        "cohomology_groups",
        [](const GluingMatrix& t, const std::string& ring, std::optional<Int> p) {
            Resolution res = Resolution::build(t);
            Cohomology h = Cohomology::compute(res, ring_from_args(ring, p));
            py::list out;
            for (const auto& g : h.groups()) out.append(group_to_dict(g));
            return out;
        },
        py::arg("theta"), py::arg("ring") = "Z", py::arg("p") = std::nullopt);

    m.def(
        "cup_tables",
        [](const GluingMatrix& t) {
            CupTables tables = cup_tables(t);
            py::dict d;
            d["M1"] = matrix_to_rows(tables.M1);
            d["M2"] = matrix_to_rows(tables.M2);
            d["M3"] = matrix_to_rows(tables.M3);
            d["N"] = matrix_to_rows(tables.N);
            return d;
        },
        py::arg("theta"));

    m.def("s_function", &s_function, py::arg("x"), py::arg("y"), py::arg("theta"));
    m.def("homotopy_augmentation_sums",
          [](const GluingMatrix& t) { return homotopy_augmentation_sums(t); });

    m.def(
        "ring_presentation",
        [](const GluingMatrix& t, const std::string& ring, std::optional<Int> p) {
            Resolution res = Resolution::build(t);
            Cohomology h = Cohomology::compute(res, ring_from_args(ring, p));
            CupRing cup(t, h);
            RingPresentation pres = ring_presentation(t, cup);
            py::dict d;
            d["ring"] = pres.ring.name();
            d["case_index"] = pres.case_index;
            d["case_description"] = pres.case_description;
            py::list gens;
            for (const auto& g : pres.generators) {
                py::dict gd;
                gd["name"] = g.name;
                gd["degree"] = g.degree;
                gd["order"] = g.order;
                gd["coords"] = g.cochain.coords;
                gens.append(gd);
            }
            d["generators"] = gens;
            py::list rels;
            for (const auto& r : pres.relations) {
                py::dict rd;
                rd["text"] = r.text;
                rd["verified"] = r.verified;
                rels.append(rd);
            }
            d["relations"] = rels;
            return d;
        },
        py::arg("theta"), py::arg("ring") = "Z", py::arg("p") = std::nullopt);

    m.def(
        "report_json",
        [](const GluingMatrix& t, const std::vector<std::string>& rings) {
            std::vector<CoefficientRing> parsed;
            for (const auto& r : rings) parsed.push_back(CoefficientRing::parse(r));
            if (parsed.empty()) parsed.push_back(CoefficientRing::integers());
            return report_to_json(run_report(t, parsed));
        },
        py::arg("theta"), py::arg("rings") = std::vector<std::string>{"Z"});

    m.def(
        "run_verification",
        [](std::uint64_t seed, int samples, int jobs) {
            VerificationReport rep = run_verification({seed, samples, jobs});
            py::dict d;
            d["all_passed"] = rep.all_passed;
            d["lattice_fallbacks"] = rep.lattice_fallbacks;
            py::list suites;
            for (const auto& s : rep.suites) {
                py::dict sd;
                sd["name"] = s.name;
                sd["passed"] = s.passed;
                sd["total"] = s.total;
                suites.append(sd);
            }
            d["suites"] = suites;
            d["text"] = verification_to_text(rep);
            return d;
        },
        py::arg("seed") = 20240817, py::arg("samples") = 50, py::arg("jobs") = 1);
}
