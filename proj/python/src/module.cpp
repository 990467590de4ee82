#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "stiffid/center.hpp"
#include "stiffid/eig3.hpp"
#include "stiffid/errors.hpp"
#include "stiffid/identify.hpp"
#include "stiffid/ingest.hpp"
#include "stiffid/report.hpp"
#include "stiffid/sizing.hpp"
#include "stiffid/synth.hpp"

namespace py = pybind11;
using namespace stiffid;

namespace {

using Rows3 = std::array<std::array<double, 3>, 3>;

Mat3 to_mat3(const Rows3& rows) {
    Mat3 m;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) m(r, c) = rows[r][c];
    return m;
}

Rows3 from_mat3(const Mat3& m) {
    Rows3 rows{};
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) rows[r][c] = m(r, c);
    return rows;
}

std::string dump(const json_text::Json& j) { return json_text::dump(j) + "\n"; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Static stiffness identification core";
    m.attr("__version__") = kToolVersion;

    static py::exception<Error> base(m, "StiffidError");
    static py::exception<Error> validation(m, "ValidationError", base.ptr());
    static py::exception<Error> numerical(m, "NumericalError", base.ptr());
    static py::exception<Error> io(m, "IoError", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            switch (e.category()) {
                case ErrorCategory::validation: py::set_error(validation, e.what()); break;
                case ErrorCategory::numerical: py::set_error(numerical, e.what()); break;
                case ErrorCategory::io: py::set_error(io, e.what()); break;
            }
        }
    });

    m.def("validate_campaign", [](const std::string& text) {
        const Campaign c = parse_campaign_text(text);
        return py::dict(py::arg("block_id") = to_string(c.block_id), py::arg("cases") = c.cases.size(),
                        py::arg("repetitions") = c.repetitions);
    }, py::arg("text"), "Parse and validate campaign JSON text.");

    m.def("normalize_campaign", [](const std::string& text) { return write_campaign(parse_campaign_text(text)); },
          py::arg("text"), "Campaign JSON rewritten in canonical units.");

    m.def("identify", [](const std::string& text, const std::vector<std::string>& planes) {
        return dump(identification_json(identify(parse_campaign_text(text), planes),
                                        report_metadata("identify", {{"<text>", text}})));
    }, py::arg("text"), py::arg("planes") = std::vector<std::string>{"xy", "yz"}, "Identification report JSON.");

    m.def("synth", [](const std::string& spec_text) { return write_campaign(simulate_campaign(parse_synth_spec_text(spec_text))); },
          py::arg("spec_text"), "Campaign JSON generated from a SynthSpec JSON.");

    m.def("center", [](const std::string& text) {
        const auto meas = parse_center_measurement_text(text);
        const auto s = locate_center(meas.pairs);
        std::optional<double> angle;
        if (meas.v3) angle = center_direction_angle(s.CR, *meas.v3, meas.origin);
        return dump(center_json(meas, s, angle, report_metadata("center", {{"<text>", text}})));
    }, py::arg("text"), "Stiffness-center report JSON.");

    m.def("eigen3", [](const Rows3& rows) {
        const Eigen3 e = eig3_real(to_mat3(rows));
        std::array<std::array<double, 3>, 3> vecs{};
        for (std::size_t i = 0; i < 3; ++i) vecs[i] = {e.vectors[i].x, e.vectors[i].y, e.vectors[i].z};
        return py::make_tuple(e.values, vecs);
    }, py::arg("matrix"), "Real eigenvalues (ascending magnitude) and unit eigenvectors of a 3x3 matrix.");

    m.def("assemble_parallel", [](const Rows3& a, const Rows3& b) { return from_mat3(assemble_parallel(to_mat3(a), to_mat3(b))); },
          py::arg("kf_a"), py::arg("kf_b"));

    m.def("deflection", [](double force_n, double length_mm, double young_nmm2, double diameter_mm) {
        const Deflection d = deflection({force_n, length_mm, young_nmm2, diameter_mm});
        return py::dict(py::arg("inertia_mm4") = d.inertia_mm4, py::arg("delta_mm") = d.delta_mm,
                        py::arg("stiffness_n_per_m") = d.stiffness_n_per_m);
    }, py::arg("force_n"), py::arg("length_mm"), py::arg("young_nmm2"), py::arg("diameter_mm"));

    m.def("fnv1a", &fnv1a_hex, py::arg("data"));
}
