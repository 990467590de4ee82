#include "stiffid/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <sstream>

#include "stiffid/errors.hpp"

namespace stiffid {

namespace {

using json_text::Json;

const char* const kTwistNames[6] = {"rho_x", "rho_y", "rho_z", "eps_x", "eps_y", "eps_z"};

Json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

Json vec3(const Vec3& v) { return Json::array({num(v.x), num(v.y), num(v.z)}); }

std::string cell(double v) { return std::isfinite(v) ? json_text::shortest(v) : std::string("nan"); }

template <std::size_t N>
Json matrix_json_impl(const Mat<N>& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < N; ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < N; ++c) row.push_back(num(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

template <std::size_t N>
std::string matrix_csv_impl(const Mat<N>& m) {
    std::string out;
    for (std::size_t r = 0; r < N; ++r) {
        for (std::size_t c = 0; c < N; ++c) out += (c ? "," : "") + cell(m(r, c));
        out += "\n";
    }
    return out;
}

std::string angles_csv(const std::vector<AngleReport>& angles, const std::string& system) {
    std::string out;
    for (const auto& a : angles) out += system + "," + a.plane + "," + (a.degrees ? cell(*a.degrees) : "") + "\n";
    return out;
}

}  // namespace

std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json report_metadata(const std::string& command, const std::vector<std::pair<std::string, std::string_view>>& inputs) {
    Json meta;
    meta["tool"] = kToolName;
    meta["version"] = kToolVersion;
    meta["command"] = command;
    Json in = Json::array();
    for (const auto& [name, content] : inputs) in.push_back({{"name", name}, {"fnv1a", fnv1a_hex(content)}});
    meta["inputs"] = in;
    return meta;
}

Json matrix_json(const Mat3& m) { return matrix_json_impl(m); }
Json matrix_json(const Mat6& m) { return matrix_json_impl(m); }
std::string matrix_csv(const Mat3& m) { return matrix_csv_impl(m); }
std::string matrix_csv(const Mat6& m) { return matrix_csv_impl(m); }

Json principal_json(const PrincipalDecomposition& pd) {
    Json j;
    j["source"] = pd.source;
    j["eigenvalues"] = Json::array({num(pd.eigenvalues[0]), num(pd.eigenvalues[1]), num(pd.eigenvalues[2])});
    Json vecs = Json::array();
    for (std::size_t c = 0; c < 3; ++c) vecs.push_back(vec3(column(pd.eigenvectors, c)));
    j["eigenvectors"] = vecs;
    j["max_deformation_direction"] = vec3(pd.max_deformation_direction());
    return j;
}

Json angles_json(const std::vector<AngleReport>& angles) {
    Json arr = Json::array();
    for (const auto& a : angles) {
        Json j;
        j["plane"] = a.plane;
        j["degrees"] = a.degrees ? num(*a.degrees) : Json(nullptr);
        if (!a.note.empty()) j["note"] = a.note;
        arr.push_back(j);
    }
    return arr;
}

Json identification_json(const Identification& id, const Json& meta) {
    Json j;
    j["metadata"] = meta;
    j["block_id"] = to_string(id.block);
    j["translation_only"] = id.translation_only;
    j["expressed_at_m"] = vec3(id.at);
    j["load_condition"] = num(id.load_condition);
    j["symmetry_deviation"] = num(id.symmetry_deviation);
    if (id.compliance) j["C0"] = matrix_json(id.compliance->matrix);
    if (id.stiffness) {
        j["K"] = matrix_json(id.stiffness->matrix);
        Json blocks;
        for (Block b : {Block::F, Block::C, Block::FC, Block::CF})
            blocks[to_string(b)] = matrix_json(id.stiffness->block(b));
        j["blocks"] = blocks;
    }
    j["K_F"] = matrix_json(id.kf);

    Json em;
    Json rows = Json::array();
    const std::size_t first = id.translation_only ? 3 : 0;
    for (std::size_t r = 0; r < id.error_matrix.size(); ++r) rows.push_back(kTwistNames[first + r]);
    Json cols = Json::array();
    for (const auto& c : id.cases) cols.push_back(c.label);
    Json values = Json::array();
    double worst = 0.0;
    for (const auto& row : id.error_matrix) {
        Json vr = Json::array();
        for (double v : row) {
            vr.push_back(num(v));
            worst = std::max(worst, v);
        }
        values.push_back(vr);
    }
    em["rows"] = rows;
    em["columns"] = cols;
    em["percent"] = values;
    em["max_percent"] = num(worst);
    j["error_matrix"] = em;

    Json cases = Json::array();
    for (const auto& c : id.cases) {
        Json cj;
        cj["label"] = c.label;
        cj["reference_force_N"] = num(c.reference_force);
        Json fits = Json::array();
        for (std::size_t k = 0; k < 6; ++k) {
            Json f;
            f["component"] = kTwistNames[k];
            f["slope_per_N"] = num(c.fits[k].slope);
            f["intercept"] = num(c.fits[k].intercept);
            f["rms_residual"] = num(c.fits[k].rms_residual);
            f["error_percent"] = num(c.error_percent[k]);
            fits.push_back(f);
        }
        cj["fits"] = fits;
        cases.push_back(cj);
    }
    j["cases"] = cases;
    j["principal"] = id.principal ? principal_json(*id.principal) : Json(nullptr);
    j["angles"] = angles_json(id.angles);
    j["warnings"] = id.warnings;
    return j;
}

std::vector<CsvFile> identification_csv(const Identification& id) {
    std::vector<CsvFile> out;
    if (id.stiffness) out.emplace_back("K.csv", matrix_csv(id.stiffness->matrix));
    if (id.compliance) out.emplace_back("C0.csv", matrix_csv(id.compliance->matrix));
    out.emplace_back("K_F.csv", matrix_csv(id.kf));

    std::string em = "component";
    for (const auto& c : id.cases) em += "," + c.label;
    em += "\n";
    const std::size_t first = id.translation_only ? 3 : 0;
    for (std::size_t r = 0; r < id.error_matrix.size(); ++r) {
        em += kTwistNames[first + r];
        for (double v : id.error_matrix[r]) em += "," + cell(v);
        em += "\n";
    }
    out.emplace_back("error_matrix.csv", em);
    if (id.principal) {
        std::string p = "eigenvalue,v_x,v_y,v_z\n";
        for (std::size_t c = 0; c < 3; ++c) {
            const Vec3 v = column(id.principal->eigenvectors, c);
            p += cell(id.principal->eigenvalues[c]) + "," + cell(v.x) + "," + cell(v.y) + "," + cell(v.z) + "\n";
        }
        out.emplace_back("principal.csv", p);
    }
    out.emplace_back("angles.csv", "system,plane,degrees\n" + angles_csv(id.angles, to_string(id.block)));
    return out;
}

Assembly assemble_systems(const Mat3& kf_bt, const Mat3& kf_bw, const std::vector<std::string>& planes) {
    Assembly a;
    a.kf_bt = kf_bt;
    a.kf_bw = kf_bw;
    a.kf = assemble_parallel(kf_bt, kf_bw);
    const auto decompose = [&](const Mat3& m, const std::string& name, std::optional<PrincipalDecomposition>& pd,
                               std::vector<AngleReport>& angles) {
        try {
            pd = principal_decomposition(m, name);
        } catch (const ComplexSpectrum& e) {
            a.warnings.push_back(name + ": " + e.what());
        }
        angles = plane_angles(pd, planes);
    };
    decompose(a.kf, "K_F,WAM", a.principal, a.angles);
    decompose(kf_bt, "K_F,BT", a.principal_bt, a.angles_bt);
    decompose(kf_bw, "K_F,BW", a.principal_bw, a.angles_bw);
    return a;
}

Mat3 read_kf_text(std::string_view text, const std::string& source) {
    const Json root = json_text::parse(text);
    if (!root.is_object() || !root.contains("K_F"))
        throw SchemaError("report", source + ": expected an object with a 'K_F' member");
    const Json& k = root.at("K_F");
    if (!k.is_array() || k.size() != 3) throw SchemaError("report", source + ": K_F must be 3 rows of 3 numbers");
    Mat3 m;
    for (std::size_t r = 0; r < 3; ++r) {
        if (!k[r].is_array() || k[r].size() != 3)
            throw SchemaError("report", source + ": K_F must be 3 rows of 3 numbers");
        for (std::size_t c = 0; c < 3; ++c) m(r, c) = json_text::read_number(k[r][c], 0, source + ".K_F");
    }
    return m;
}

Json assembly_json(const Assembly& a, const Json& meta) {
    Json j;
    j["metadata"] = meta;
    j["K_F_BT"] = matrix_json(a.kf_bt);
    j["K_F_BW"] = matrix_json(a.kf_bw);
    j["K_F"] = matrix_json(a.kf);
    j["principal"] = a.principal ? principal_json(*a.principal) : Json(nullptr);
    j["alpha_K"] = angles_json(a.angles);
    Json parts;
    parts["BT"] = {{"principal", a.principal_bt ? principal_json(*a.principal_bt) : Json(nullptr)},
                   {"angles", angles_json(a.angles_bt)}};
    parts["BW"] = {{"principal", a.principal_bw ? principal_json(*a.principal_bw) : Json(nullptr)},
                   {"angles", angles_json(a.angles_bw)}};
    j["blocks"] = parts;
    j["warnings"] = a.warnings;
    return j;
}

std::vector<CsvFile> assembly_csv(const Assembly& a) {
    std::vector<CsvFile> out;
    out.emplace_back("K_F_WAM.csv", matrix_csv(a.kf));
    std::string p = "eigenvalue,v_x,v_y,v_z\n";
    if (a.principal)
        for (std::size_t c = 0; c < 3; ++c) {
            const Vec3 v = column(a.principal->eigenvectors, c);
            p += cell(a.principal->eigenvalues[c]) + "," + cell(v.x) + "," + cell(v.y) + "," + cell(v.z) + "\n";
        }
    out.emplace_back("principal.csv", p);
    out.emplace_back("angles.csv", "system,plane,degrees\n" + angles_csv(a.angles, "WAM") +
                                       angles_csv(a.angles_bt, "BT") + angles_csv(a.angles_bw, "BW"));
    return out;
}

Json center_json(const CenterMeasurement& m, const CenterSolution& s, std::optional<double> v3_angle, const Json& meta) {
    Json j;
    j["metadata"] = meta;
    Json axes = Json::array();
    for (std::size_t a = 0; a < 3; ++a) {
        Json aj;
        aj["axis"] = std::string(1, "xyz"[a]);
        aj["M_m"] = vec3(s.axes[a].M);
        aj["mu_m"] = num(s.axes[a].mu);
        aj["theta_deg"] = num(s.axes[a].theta);
        aj["plane_normal"] = vec3(s.planes[a].normal);
        axes.push_back(aj);
    }
    j["axes"] = axes;
    j["CR_m"] = vec3(s.CR);
    j["residual_m"] = num(s.residual);
    j["origin_m"] = vec3(m.origin);
    if (m.v3) {
        j["v3"] = vec3(*m.v3);
        j["v3_angle_deg"] = v3_angle ? num(*v3_angle) : Json(nullptr);
    }
    return j;
}

std::vector<CsvFile> center_csv(const CenterSolution& s, std::optional<double> v3_angle) {
    std::string t = "axis,M_x_m,M_y_m,M_z_m,mu_m,theta_deg,n_x,n_y,n_z\n";
    for (std::size_t a = 0; a < 3; ++a) {
        const auto& ax = s.axes[a];
        const auto& n = s.planes[a].normal;
        t += std::string(1, "xyz"[a]) + "," + cell(ax.M.x) + "," + cell(ax.M.y) + "," + cell(ax.M.z) + "," +
             cell(ax.mu) + "," + cell(ax.theta) + "," + cell(n.x) + "," + cell(n.y) + "," + cell(n.z) + "\n";
    }
    std::string c = "CR_x_m,CR_y_m,CR_z_m,residual_m,v3_angle_deg\n" + cell(s.CR.x) + "," + cell(s.CR.y) + "," +
                    cell(s.CR.z) + "," + cell(s.residual) + "," + (v3_angle ? cell(*v3_angle) : "") + "\n";
    return {{"center_axes.csv", t}, {"center.csv", c}};
}

Json sizing_json(const BeamSpec& spec, const Deflection& d, const std::vector<SweepRow>& sweep, const Json& meta) {
    Json j;
    j["metadata"] = meta;
    j["beam"] = {{"force_N", spec.force_n},
                 {"length_mm", spec.length_mm},
                 {"young_Nmm2", spec.young_nmm2},
                 {"diameter_mm", spec.diameter_mm}};
    j["inertia_mm4"] = num(d.inertia_mm4);
    j["deflection_mm"] = num(d.delta_mm);
    j["stiffness_N_per_m"] = num(d.stiffness_n_per_m);
    if (!sweep.empty()) {
        Json rows = Json::array();
        for (const auto& r : sweep)
            rows.push_back({{"length_mm", r.length_mm},
                            {"deflection_mm", num(r.result.delta_mm)},
                            {"stiffness_N_per_m", num(r.result.stiffness_n_per_m)}});
        j["sweep"] = rows;
    }
    return j;
}

std::vector<CsvFile> sizing_csv(const BeamSpec& spec, const Deflection& d, const std::vector<SweepRow>& sweep) {
    std::string s = "length_mm,inertia_mm4,deflection_mm,stiffness_N_per_m\n";
    if (sweep.empty()) {
        s += cell(spec.length_mm) + "," + cell(d.inertia_mm4) + "," + cell(d.delta_mm) + "," +
             cell(d.stiffness_n_per_m) + "\n";
    } else {
        for (const auto& r : sweep)
            s += cell(r.length_mm) + "," + cell(r.result.inertia_mm4) + "," + cell(r.result.delta_mm) + "," +
                 cell(r.result.stiffness_n_per_m) + "\n";
    }
    return {{"sizing.csv", s}};
}

}  // namespace stiffid
