// stiffid: command-line front end for stiffness identification campaigns.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stiffid/center.hpp"
#include "stiffid/errors.hpp"
#include "stiffid/identify.hpp"
#include "stiffid/ingest.hpp"
#include "stiffid/json_text.hpp"
#include "stiffid/report.hpp"
#include "stiffid/sizing.hpp"
#include "stiffid/svg.hpp"
#include "stiffid/synth.hpp"

namespace fs = std::filesystem;
using stiffid::json_text::Json;

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kNumerical = 2, kIo = 3 };

struct Options {
    std::string out_dir;
    bool plots = false;
    std::string format = "json";
};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) throw stiffid::IoError("cli", "cannot write '" + path.string() + "'");
}

fs::path output_dir(const Options& o) {
    const fs::path dir = o.out_dir.empty() ? fs::path(".") : fs::path(o.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw stiffid::IoError("cli", "cannot create output directory '" + dir.string() + "'");
    return dir;
}

void emit(const Options& o, const std::string& name, const Json& report, const std::vector<stiffid::CsvFile>& csv) {
    if (o.format == "csv") {
        if (o.out_dir.empty()) {
            for (const auto& [file, content] : csv) std::cout << "# " << file << "\n" << content;
        } else {
            const fs::path dir = output_dir(o);
            for (const auto& [file, content] : csv) write_file(dir / file, content);
        }
        return;
    }
    const std::string text = stiffid::json_text::dump(report) + "\n";
    if (o.out_dir.empty()) std::cout << text;
    else write_file(output_dir(o) / (name + ".json"), text);
}

void write_plot(const Options& o, const std::string& file, const std::string& svg) {
    write_file(output_dir(o) / file, svg);
}

std::string plot_name(const std::string& label) {
    std::string out;
    for (char c : label) out += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    return out;
}

int run_validate(const Options& o, const std::string& path) {
    const std::string text = stiffid::read_text_file(path);
    const stiffid::Campaign c = stiffid::parse_campaign_text(text);
    std::size_t steps = 0;
    for (const auto& lc : c.cases) steps += lc.steps.size();
    Json j;
    j["metadata"] = stiffid::report_metadata("validate", {{path, text}});
    j["valid"] = true;
    j["block_id"] = stiffid::to_string(c.block_id);
    j["cases"] = c.cases.size();
    j["steps"] = steps;
    j["repetitions"] = c.repetitions;
    const std::string csv = "valid,block_id,cases,steps\ntrue," + stiffid::to_string(c.block_id) + "," +
                            std::to_string(c.cases.size()) + "," + std::to_string(steps) + "\n";
    emit(o, "validate", j, {{"validate.csv", csv}});
    return kOk;
}

int run_identify(const Options& o, const std::string& path, const std::string& csv_path,
                 const std::vector<std::string>& planes) {
    const std::string text = stiffid::read_text_file(path);
    std::vector<std::pair<std::string, std::string_view>> inputs{{path, text}};
    stiffid::Campaign campaign;
    std::string csv_text;
    if (csv_path.empty()) {
        campaign = stiffid::parse_campaign_text(text);
    } else {
        csv_text = stiffid::read_text_file(csv_path);
        inputs.emplace_back(csv_path, csv_text);
        campaign = stiffid::import_logger_csv(csv_text, stiffid::parse_campaign_text(text));
    }
    const auto id = stiffid::identify(campaign, planes);
    for (const auto& w : id.warnings) std::cerr << "warning: " << w << "\n";
    emit(o, "identify", stiffid::identification_json(id, stiffid::report_metadata("identify", inputs)),
         stiffid::identification_csv(id));
    if (o.plots)
        for (const auto& c : id.cases) write_plot(o, "fit_" + plot_name(c.label) + ".svg", stiffid::svg::fit_plot(c));
    return kOk;
}

int run_assemble(const Options& o, const std::string& bt_path, const std::string& bw_path,
                 const std::vector<std::string>& planes) {
    const std::string bt = stiffid::read_text_file(bt_path);
    const std::string bw = stiffid::read_text_file(bw_path);
    const auto a = stiffid::assemble_systems(stiffid::read_kf_text(bt, bt_path), stiffid::read_kf_text(bw, bw_path), planes);
    for (const auto& w : a.warnings) std::cerr << "warning: " << w << "\n";
    emit(o, "assemble", stiffid::assembly_json(a, stiffid::report_metadata("assemble", {{bt_path, bt}, {bw_path, bw}})),
         stiffid::assembly_csv(a));
    return kOk;
}

std::optional<stiffid::Vec3> parse_v3(const std::string& s) {
    if (s.empty()) return std::nullopt;
    stiffid::Vec3 v;
    char c1 = 0, c2 = 0;
    std::istringstream in(s);
    if (!(in >> v.x >> c1 >> v.y >> c2 >> v.z) || c1 != ',' || c2 != ',' || !(in >> std::ws).eof())
        throw stiffid::InvalidArgument("cli", "--v3 expects 'x,y,z', got '" + s + "'");
    return v;
}

int run_center(const Options& o, const std::string& path, const std::string& v3_text) {
    const std::string text = stiffid::read_text_file(path);
    auto m = stiffid::parse_center_measurement_text(text);
    if (auto v3 = parse_v3(v3_text)) m.v3 = v3;
    const auto s = stiffid::locate_center(m.pairs);
    std::optional<double> angle;
    if (m.v3) angle = stiffid::center_direction_angle(s.CR, *m.v3, m.origin);
    emit(o, "center", stiffid::center_json(m, s, angle, stiffid::report_metadata("center", {{path, text}})),
         stiffid::center_csv(s, angle));
    if (o.plots) write_plot(o, "center.svg", stiffid::svg::center_plot(m, s));
    return kOk;
}

struct SizingArgs {
    std::string config;
    std::optional<double> force, young, diameter, length;
    std::string sweep;
};

int run_size_fixture(const Options& o, const SizingArgs& args) {
    stiffid::BeamSpec spec;
    std::string config_text;
    std::vector<std::pair<std::string, std::string_view>> inputs;
    std::string sweep = args.sweep;
    if (!args.config.empty()) {
        config_text = stiffid::read_text_file(args.config);
        inputs.emplace_back(args.config, config_text);
        const Json j = stiffid::json_text::parse(config_text);
        const auto get = [&](const char* key, double& dst) {
            if (j.is_object() && j.contains(key)) dst = stiffid::json_text::read_number(j.at(key), 0, key);
        };
        get("force_N", spec.force_n);
        get("young_Nmm2", spec.young_nmm2);
        get("diameter_mm", spec.diameter_mm);
        get("length_mm", spec.length_mm);
        if (sweep.empty() && j.is_object() && j.contains("sweep_mm")) {
            const Json& s = j.at("sweep_mm");
            if (!s.is_array() || s.size() != 3) throw stiffid::SchemaError("cli", "sweep_mm must be [lo, hi, step]");
            sweep = stiffid::json_text::shortest(stiffid::json_text::read_number(s[0], 0, "sweep_mm")) + ":" +
                    stiffid::json_text::shortest(stiffid::json_text::read_number(s[1], 0, "sweep_mm")) + ":" +
                    stiffid::json_text::shortest(stiffid::json_text::read_number(s[2], 0, "sweep_mm"));
        }
    }
    if (args.force) spec.force_n = *args.force;
    if (args.young) spec.young_nmm2 = *args.young;
    if (args.diameter) spec.diameter_mm = *args.diameter;
    if (args.length) spec.length_mm = *args.length;
    if (spec.young_nmm2 == 0.0) throw stiffid::InvalidArgument("cli", "Young modulus is required (--young-nmm2)");

    const auto d = stiffid::deflection(spec);
    std::vector<stiffid::SweepRow> rows;
    if (!sweep.empty()) {
        double lo = 0, hi = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(sweep);
        if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
            throw stiffid::InvalidArgument("cli", "--sweep expects lo:hi:step in mm, got '" + sweep + "'");
        rows = stiffid::sweep_lengths(spec, lo, hi, step);
    }
    emit(o, "sizing", stiffid::sizing_json(spec, d, rows, stiffid::report_metadata("size-fixture", inputs)),
         stiffid::sizing_csv(spec, d, rows));
    if (o.plots && !rows.empty()) write_plot(o, "sizing.svg", stiffid::svg::sweep_plot(rows));
    return kOk;
}

int run_synth(const Options& o, const std::string& path) {
    const auto spec = stiffid::parse_synth_spec(path);
    const std::string campaign = stiffid::write_campaign(stiffid::simulate_campaign(spec));
    if (o.out_dir.empty()) std::cout << campaign;
    else write_file(output_dir(o) / "campaign.json", campaign);
    return kOk;
}

int exit_code(const stiffid::Error& e) {
    switch (e.category()) {
        case stiffid::ErrorCategory::validation: return kValidation;
        case stiffid::ErrorCategory::numerical: return kNumerical;
        case stiffid::ErrorCategory::io: return kIo;
    }
    return kValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Static stiffness identification of machine-tool systems"};
    app.set_version_flag("--version", std::string(stiffid::kToolVersion));
    app.require_subcommand(1);

    Options opt;
    app.add_option("--out", opt.out_dir, "Output directory (stdout when omitted)");
    app.add_flag("--plots", opt.plots, "Write SVG plots into the output directory");
    app.add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"json", "csv"}));

    std::string campaign_path, csv_path, bt_path, bw_path, center_path, v3_text, synth_path;
    std::vector<std::string> planes{"xy", "yz"};
    SizingArgs sizing;

    auto* validate = app.add_subcommand("validate", "Check a campaign file");
    validate->add_option("campaign", campaign_path, "Campaign JSON")->required();

    auto* identify = app.add_subcommand("identify", "Identify the stiffness matrix of a campaign");
    identify->add_option("campaign", campaign_path, "Campaign JSON (layout only when --csv is given)")->required();
    identify->add_option("--csv", csv_path, "Logger CSV with the readings");
    identify->add_option("--plane", planes, "Planes for the principal angle (xy, yz, xz)")->take_all();

    auto* assemble = app.add_subcommand("assemble", "Assemble BT and BW displacement stiffness in parallel");
    assemble->add_option("bt", bt_path, "BT identify report or K_F file")->required();
    assemble->add_option("bw", bw_path, "BW identify report or K_F file")->required();
    assemble->add_option("--plane", planes, "Planes for alpha_K")->take_all();

    auto* center = app.add_subcommand("center", "Locate the stiffness center");
    center->add_option("measurement", center_path, "Center measurement JSON")->required();
    center->add_option("--v3", v3_text, "Eigenvector x,y,z to compare with CR - O");

    auto* size = app.add_subcommand("size-fixture", "Cantilever fixture deflection and stiffness");
    size->add_option("--config", sizing.config, "JSON with force_N, young_Nmm2, diameter_mm, length_mm, sweep_mm");
    size->add_option("--force-n", sizing.force, "Tip force (N)");
    size->add_option("--young-nmm2", sizing.young, "Young modulus (N/mm^2)");
    size->add_option("--diameter-mm", sizing.diameter, "Bar diameter (mm)");
    size->add_option("--length-mm", sizing.length, "Overhang length (mm)");
    size->add_option("--sweep", sizing.sweep, "Length sweep lo:hi:step (mm)");

    auto* synth = app.add_subcommand("synth", "Generate a synthetic campaign from a SynthSpec");
    synth->add_option("spec", synth_path, "SynthSpec JSON")->required();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (*validate) return run_validate(opt, campaign_path);
        if (*identify) return run_identify(opt, campaign_path, csv_path, planes);
        if (*assemble) return run_assemble(opt, bt_path, bw_path, planes);
        if (*center) return run_center(opt, center_path, v3_text);
        if (*size) return run_size_fixture(opt, sizing);
        if (*synth) return run_synth(opt, synth_path);
    } catch (const stiffid::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kValidation;
}
