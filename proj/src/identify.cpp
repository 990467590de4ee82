#include "stiffid/identify.hpp"

#include <algorithm>
#include <sstream>

#include "stiffid/errors.hpp"

namespace stiffid {

Wrench CaseReduction::reference_wrench() const {
    return wrench_from_vector(
        {unit_wrench.force.x * reference_force, unit_wrench.force.y * reference_force,
         unit_wrench.force.z * reference_force, unit_wrench.moment.x * reference_force,
         unit_wrench.moment.y * reference_force, unit_wrench.moment.z * reference_force},
        unit_wrench.at, unit_wrench.axes);
}

Twist CaseReduction::reference_twist() const {
    Vec6 v{};
    for (std::size_t k = 0; k < 6; ++k) v[k] = twist_per_newton[k] * reference_force;
    return twist_from_vector(v, unit_wrench.at, unit_wrench.axes);
}

std::pair<ChargePath, ChargePath> component_paths(const LoadCase& c, const SensorConfig& cfg, std::size_t component) {
    ChargePath charge{{}, Phase::charge};
    ChargePath discharge{{}, Phase::discharge};
    for (const auto& s : c.steps) {
        const double value = readings_to_twist(s.readings, cfg).as_vector()[component];
        (s.phase == Phase::charge ? charge : discharge).points.emplace_back(s.force, value);
    }
    return {charge, discharge};
}

CaseReduction reduce_case(const LoadCase& c, const SensorConfig& cfg) {
    CaseReduction out;
    out.label = c.label;
    out.unit_wrench = unit_case_wrench(c, cfg.expressed_at);
    for (const auto& s : c.steps) out.reference_force = std::max(out.reference_force, s.force);
    for (std::size_t k = 0; k < 6; ++k) {
        const auto [charge, discharge] = component_paths(c, cfg, k);
        out.fits[k] = midline(charge, discharge);
        out.twist_per_newton[k] = out.fits[k].slope;
        out.error_percent[k] = error_percent(out.fits[k]);
    }
    return out;
}

std::vector<AngleReport> plane_angles(const std::optional<PrincipalDecomposition>& pd,
                                      const std::vector<std::string>& planes) {
    std::vector<AngleReport> out;
    for (const auto& name : planes) {
        AngleReport a{name, std::nullopt, {}};
        if (pd) {
            try {
                a.degrees = principal_angle_in_plane(*pd, Plane::named(name));
            } catch (const DegenerateProjection& e) {
                a.note = e.what();
            }
        } else {
            a.note = "no real principal decomposition";
        }
        out.push_back(a);
    }
    return out;
}

Identification identify(const Campaign& campaign, const std::vector<std::string>& planes) {
    campaign.validate();
    Identification out;
    out.block = campaign.block_id;
    out.at = campaign.sensor_config.expressed_at;
    for (const auto& c : campaign.cases) {
        try {
            out.cases.push_back(reduce_case(c, campaign.sensor_config));
        } catch (const LevelMismatch& e) {
            throw LevelMismatch("identify", "case '" + c.label + "': " + e.what());
        }
    }

    const std::size_t n = out.cases.size();
    std::vector<LoadCaseTorsors> torsors;
    for (const auto& r : out.cases) torsors.push_back({r.reference_wrench(), r.reference_twist()});

    if (campaign.block_id == BlockId::BW && n == 3) {
        out.translation_only = true;
        Mat3 forces;
        for (std::size_t c = 0; c < 3; ++c)
            for (std::size_t r = 0; r < 3; ++r) forces(r, c) = out.cases[c].unit_wrench.force[r];
        out.load_condition = condition_number(forces);
        if (!(out.load_condition < kSingularLoadCondition))
            throw RankError("identify", "BW load-case forces do not span 3D");
        out.kf = identify_translation_stiffness(torsors);
        out.symmetry_deviation = symmetry_deviation(out.kf);
        out.error_matrix.assign(3, std::vector<double>(3));
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) out.error_matrix[r][c] = out.cases[c].error_percent[3 + r];
    } else if (n == 6) {
        try {
            out.compliance = assemble_compliance(torsors);
        } catch (const SingularLoadSet& e) {
            throw RankError("identify", e.what());
        }
        out.stiffness = invert_to_stiffness(*out.compliance);
        out.kf = out.stiffness->block(Block::F);
        out.load_condition = out.compliance->load_condition;
        out.symmetry_deviation = symmetry_deviation(out.stiffness->matrix);
        if (out.compliance->ill_conditioned) {
            std::ostringstream msg;
            msg << "ill-conditioned load set (condition " << out.load_condition << ")";
            out.warnings.push_back(msg.str());
        }
        out.error_matrix.assign(6, std::vector<double>(6));
        for (std::size_t r = 0; r < 6; ++r)
            for (std::size_t c = 0; c < 6; ++c) out.error_matrix[r][c] = out.cases[c].error_percent[r];
    } else {
        throw RankError("identify", to_string(campaign.block_id) + " campaign with " + std::to_string(n) +
                                        " load cases cannot be identified (need 6, or 3 for BW)");
    }

    for (const auto& r : out.cases)
        if (!r.reference_twist().small_rotation())
            out.warnings.push_back("case '" + r.label + "' exceeds the small-rotation limit (1e-2 rad)");

    try {
        out.principal = principal_decomposition(out.kf, "K_F");
    } catch (const ComplexSpectrum& e) {
        out.warnings.push_back(e.what());
    }
    out.angles = plane_angles(out.principal, planes);
    return out;
}

}  // namespace stiffid
