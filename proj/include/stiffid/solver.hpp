#pragma once

// Compliance/stiffness identification from load-case torsors, block layout,
// parallel assembly and principal directions.

#include <array>
#include <span>
#include <string>

#include "stiffid/eig3.hpp"
#include "stiffid/linalg.hpp"
#include "stiffid/torsor.hpp"

namespace stiffid {

/// Load cases above this wrench-matrix condition are rejected as singular.
inline constexpr double kSingularLoadCondition = 1e8;
/// Load cases above this condition are flagged as ill-conditioned.
inline constexpr double kIllConditionedLoad = 1e6;

/// 3x3 blocks of the 6x6 stiffness matrix. Rows are (F, M), columns (rho, eps):
///
///     [ K_FC  K_F  ]
///     [ K_C   K_CF ]
enum class Block { F, C, FC, CF };

std::string to_string(Block b);

/// Maps a wrench column to a twist column: D = C0 * T.
struct Compliance6 {
    Mat6 matrix;
    Point3 at;
    std::string axes = kMachineAxes;
    double load_condition = 0.0;  // 1-norm condition of the stacked wrenches
    bool ill_conditioned = false;
};

struct Stiffness6 {
    Mat6 matrix;
    Point3 at;
    std::string axes = kMachineAxes;

    Mat3 block(Block b) const;
};

struct LoadCaseTorsors {
    Wrench wrench;
    Twist twist;
};

/// Solves D = C0 * T column-wise for six load cases sharing point and axes.
Compliance6 assemble_compliance(std::span<const LoadCaseTorsors> cases);

Stiffness6 invert_to_stiffness(const Compliance6& c0);

Mat3 extract_block(const Mat6& k, Block which);
Mat6 assemble_blocks(const Mat3& fc, const Mat3& f, const Mat3& c, const Mat3& cf);

/// Translation-only identification from three force-only cases: eps = C_F * F,
/// returns K_F = C_F^-1.
Mat3 identify_translation_stiffness(std::span<const LoadCaseTorsors> cases);

/// Springs sharing one deflection point add.
Mat3 assemble_parallel(const Mat3& kf_a, const Mat3& kf_b);

struct PrincipalDecomposition {
    std::array<double, 3> eigenvalues{};  // ascending magnitude
    Mat3 eigenvectors;                    // columns
    std::string source;

    /// Eigenvector of the smallest-magnitude stiffness: the direction of largest deformation.
    Vec3 max_deformation_direction() const { return column(eigenvectors, 0); }
};

PrincipalDecomposition principal_decomposition(const Mat3& kf, std::string source = {});

struct Plane {
    Vec3 axis1;
    Vec3 axis2;
    std::string name;

    /// "xy", "yz", "xz" (and reversed spellings) over the machine axes.
    static Plane named(const std::string& name);
};

/// Angle in degrees in [0, 180) of the projected max-deformation direction,
/// measured from axis1 toward axis2.
double principal_angle_in_plane(const PrincipalDecomposition& pd, const Plane& plane);

}  // namespace stiffid
