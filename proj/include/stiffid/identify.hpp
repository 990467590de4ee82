#pragma once

// Campaign -> stiffness: fits every (case, twist component) series with the
// hysteresis midline, builds torsors, and runs the solver.

#include <optional>
#include <string>
#include <vector>

#include "stiffid/fitting.hpp"
#include "stiffid/ingest.hpp"
#include "stiffid/solver.hpp"

namespace stiffid {

struct CaseReduction {
    std::string label;
    double reference_force = 0.0;      // N, the largest load level
    Wrench unit_wrench;                // per N of applied force
    Vec6 twist_per_newton{};           // midline slopes (rho, eps)
    std::array<MidlineFit, 6> fits;    // one per twist component
    std::array<double, 6> error_percent{};

    Wrench reference_wrench() const;
    Twist reference_twist() const;
};

struct AngleReport {
    std::string plane;
    std::optional<double> degrees;
    std::string note;  // set when the angle is undefined
};

struct Identification {
    BlockId block = BlockId::BT;
    bool translation_only = false;
    Point3 at;
    std::vector<CaseReduction> cases;

    std::optional<Compliance6> compliance;  // full 6x6 identification only
    std::optional<Stiffness6> stiffness;
    Mat3 kf;                                // displacement block
    double load_condition = 0.0;
    double symmetry_deviation = 0.0;        // of K (6x6) or K_F (translation-only)
    /// Rows: twist components (rho_x..eps_z, or eps_x..eps_z when translation-only); columns: cases.
    std::vector<std::vector<double>> error_matrix;

    std::optional<PrincipalDecomposition> principal;
    std::vector<AngleReport> angles;
    std::vector<std::string> warnings;
};

/// Angle of the max-deformation direction in each named plane; undefined
/// angles carry a note instead.
std::vector<AngleReport> plane_angles(const std::optional<PrincipalDecomposition>& pd,
                                      const std::vector<std::string>& planes);

/// Charge and discharge paths of one twist component of a load case.
std::pair<ChargePath, ChargePath> component_paths(const LoadCase& c, const SensorConfig& cfg, std::size_t component);

CaseReduction reduce_case(const LoadCase& c, const SensorConfig& cfg);

/// BT (6 cases) -> full 6x6; BW with 3 cases -> translation-only K_F; BW with
/// 6 cases -> full 6x6. Eigen failures are reported as warnings.
Identification identify(const Campaign& campaign, const std::vector<std::string>& planes = {"xy", "yz"});

}  // namespace stiffid
