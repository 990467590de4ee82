#include "stiffid/solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "stiffid/errors.hpp"

namespace stiffid {

namespace {

constexpr const char* kModule = "solver";

void check_common_frame(std::span<const LoadCaseTorsors> cases) {
    const auto& ref = cases.front().wrench;
    for (const auto& c : cases) {
        if (c.wrench.at != ref.at || c.twist.at != ref.at || c.wrench.axes != ref.axes || c.twist.axes != ref.axes)
            throw FrameMismatch(kModule, "all torsors must be expressed at the same point and axes");
    }
}

std::pair<std::size_t, std::size_t> block_origin(Block b) {
    switch (b) {
        case Block::F: return {0, 3};
        case Block::C: return {3, 0};
        case Block::FC: return {0, 0};
        case Block::CF: return {3, 3};
    }
    return {0, 0};
}

}  // namespace

std::string to_string(Block b) {
    switch (b) {
        case Block::F: return "K_F";
        case Block::C: return "K_C";
        case Block::FC: return "K_FC";
        case Block::CF: return "K_CF";
    }
    return "?";
}

Mat3 Stiffness6::block(Block b) const { return extract_block(matrix, b); }

Compliance6 assemble_compliance(std::span<const LoadCaseTorsors> cases) {
    if (cases.size() != 6)
        throw SingularLoadSet(kModule, "need exactly 6 load cases, got " + std::to_string(cases.size()));
    check_common_frame(cases);

    Mat6 t, d;
    for (std::size_t c = 0; c < 6; ++c) {
        const auto w = cases[c].wrench.as_vector();
        const auto v = cases[c].twist.as_vector();
        for (std::size_t r = 0; r < 6; ++r) {
            t(r, c) = w[r];
            d(r, c) = v[r];
        }
    }
    const double cond = condition_number(t);
    if (!(cond < kSingularLoadCondition)) {
        std::ostringstream msg;
        msg << "load-case wrenches are not independent (condition " << cond << ")";
        throw SingularLoadSet(kModule, msg.str());
    }

    // C0 * T = D  <=>  T^T * C0^T = D^T, one solve per row of C0.
    Lu<6> lu(t.transposed());
    Compliance6 out;
    for (std::size_t r = 0; r < 6; ++r) {
        Vec6 rhs{};
        for (std::size_t c = 0; c < 6; ++c) rhs[c] = d(r, c);
        const auto row = lu.solve(rhs);
        for (std::size_t c = 0; c < 6; ++c) out.matrix(r, c) = row[c];
    }
    out.at = cases.front().wrench.at;
    out.axes = cases.front().wrench.axes;
    out.load_condition = cond;
    out.ill_conditioned = cond > kIllConditionedLoad;
    return out;
}

Stiffness6 invert_to_stiffness(const Compliance6& c0) {
    const auto inv = try_inverse(c0.matrix);
    if (!inv || !is_finite(*inv)) throw Singular(kModule, "compliance matrix is singular");
    return {*inv, c0.at, c0.axes};
}

Mat3 extract_block(const Mat6& k, Block which) {
    const auto [r0, c0] = block_origin(which);
    Mat3 out;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) out(r, c) = k(r0 + r, c0 + c);
    return out;
}

Mat6 assemble_blocks(const Mat3& fc, const Mat3& f, const Mat3& c, const Mat3& cf) {
    Mat6 out;
    for (const auto& [b, m] : {std::pair{Block::FC, &fc}, {Block::F, &f}, {Block::C, &c}, {Block::CF, &cf}}) {
        const auto [r0, c0] = block_origin(b);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t col = 0; col < 3; ++col) out(r0 + r, c0 + col) = (*m)(r, col);
    }
    return out;
}

Mat3 identify_translation_stiffness(std::span<const LoadCaseTorsors> cases) {
    if (cases.size() != 3)
        throw SingularLoadSet(kModule, "translation-only identification needs 3 cases, got " +
                                           std::to_string(cases.size()));
    check_common_frame(cases);
    Mat3 f, e;
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t r = 0; r < 3; ++r) {
            f(r, c) = cases[c].wrench.force[r];
            e(r, c) = cases[c].twist.translation[r];
        }
    const double cond = condition_number(f);
    if (!(cond < kSingularLoadCondition)) throw SingularLoadSet(kModule, "load-case forces do not span 3D");
    // eps = C_F * F  =>  K_F = C_F^-1 = F * E^-1
    const auto e_inv = try_inverse(e);
    if (!e_inv) throw Singular(kModule, "translation compliance is singular");
    return f * *e_inv;
}

Mat3 assemble_parallel(const Mat3& kf_a, const Mat3& kf_b) { return kf_a + kf_b; }

PrincipalDecomposition principal_decomposition(const Mat3& kf, std::string source) {
    const Eigen3 e = eig3_real(kf);
    return {e.values, e.vector_matrix(), std::move(source)};
}

Plane Plane::named(const std::string& name) {
    const auto axis = [&](char c) -> Vec3 {
        switch (c) {
            case 'x': return {1, 0, 0};
            case 'y': return {0, 1, 0};
            case 'z': return {0, 0, 1};
        }
        throw InvalidArgument(kModule, "unknown plane '" + name + "' (use e.g. xy, yz, xz)");
    };
    if (name.size() != 2 || name[0] == name[1])
        throw InvalidArgument(kModule, "unknown plane '" + name + "' (use e.g. xy, yz, xz)");
    return {axis(name[0]), axis(name[1]), name};
}

double principal_angle_in_plane(const PrincipalDecomposition& pd, const Plane& plane) {
    if (std::abs(norm(plane.axis1) - 1.0) > 1e-9 || std::abs(norm(plane.axis2) - 1.0) > 1e-9 ||
        std::abs(dot(plane.axis1, plane.axis2)) > 1e-9)
        throw InvalidArgument(kModule, "plane axes must be orthonormal");
    const Vec3 v = pd.max_deformation_direction();
    const double u = dot(v, plane.axis1);
    const double w = dot(v, plane.axis2);
    if (std::hypot(u, w) < 1e-6)
        throw DegenerateProjection(kModule, "max-deformation direction is normal to plane " + plane.name);
    double deg = std::atan2(w, u) * 180.0 / std::numbers::pi;
    if (deg < 0.0) deg += 180.0;
    if (deg >= 180.0) deg -= 180.0;
    return deg;
}

}  // namespace stiffid
