#pragma once

#include <string>

#include "stiffid/linalg.hpp"

namespace stiffid {

/// Label for the machine axes a torsor is expressed in (x cross, y cutting, z feed).
inline const std::string kMachineAxes = "xyz";

/// Rotations above this (rad) leave the small-displacement regime.
inline constexpr double kSmallRotationLimit = 1e-2;

/// Mechanical-action torsor: resultant force and moment at a reference point.
struct Wrench {
    Vec3 force;   // N
    Vec3 moment;  // N.m
    Point3 at;    // m
    std::string axes = kMachineAxes;

    /// (Fx, Fy, Fz, Mx, My, Mz), the row order of the stiffness relation.
    Vec6 as_vector() const { return {force.x, force.y, force.z, moment.x, moment.y, moment.z}; }
};

/// Small-displacement torsor: rotation and translation of a reference point.
struct Twist {
    Vec3 rotation;     // rad
    Vec3 translation;  // m
    Point3 at;         // m
    std::string axes = kMachineAxes;

    /// (rho_x, rho_y, rho_z, eps_x, eps_y, eps_z), the column order of the stiffness relation.
    Vec6 as_vector() const {
        return {rotation.x, rotation.y, rotation.z, translation.x, translation.y, translation.z};
    }

    bool small_rotation() const;
};

bool is_finite(const Wrench& w);
bool is_finite(const Twist& t);

Wrench wrench_from_vector(const Vec6& v, const Point3& at, const std::string& axes = kMachineAxes);
Twist twist_from_vector(const Vec6& v, const Point3& at, const std::string& axes = kMachineAxes);

/// Force F applied at `applied_at`, reduced to `expressed_at`.
Wrench wrench_from_point_force(const Vec3& force, const Point3& applied_at, const Point3& expressed_at);

/// Varignon transport: M_to = M_at + (at - to) x F.
Wrench transport_wrench(const Wrench& w, const Point3& to);

/// Displacement-field transport: eps_to = eps_at + rho x (to - at).
Twist transport_twist(const Twist& t, const Point3& to);

}  // namespace stiffid
