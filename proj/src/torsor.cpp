#include "stiffid/torsor.hpp"

namespace stiffid {

bool Twist::small_rotation() const {
    return std::abs(rotation.x) <= kSmallRotationLimit && std::abs(rotation.y) <= kSmallRotationLimit &&
           std::abs(rotation.z) <= kSmallRotationLimit;
}

bool is_finite(const Wrench& w) { return is_finite(w.force) && is_finite(w.moment) && is_finite(w.at); }

bool is_finite(const Twist& t) { return is_finite(t.rotation) && is_finite(t.translation) && is_finite(t.at); }

Wrench wrench_from_vector(const Vec6& v, const Point3& at, const std::string& axes) {
    return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, at, axes};
}

Twist twist_from_vector(const Vec6& v, const Point3& at, const std::string& axes) {
    return {{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, at, axes};
}

Wrench wrench_from_point_force(const Vec3& force, const Point3& applied_at, const Point3& expressed_at) {
    return {force, cross(applied_at - expressed_at, force), expressed_at, kMachineAxes};
}

Wrench transport_wrench(const Wrench& w, const Point3& to) {
    if (to == w.at) return w;
    return {w.force, w.moment + cross(w.at - to, w.force), to, w.axes};
}

Twist transport_twist(const Twist& t, const Point3& to) {
    if (to == t.at) return t;
    return {t.rotation, t.translation + cross(t.rotation, to - t.at), to, t.axes};
}

}  // namespace stiffid
