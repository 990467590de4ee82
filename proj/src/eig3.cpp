#include "stiffid/eig3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "stiffid/errors.hpp"

namespace stiffid {

namespace {

constexpr double kComplexTolerance = 1e-6;
constexpr double kRankTolerance = 1e-10;
constexpr double kRepeatTolerance = 1e-7;

struct Cubic {
    double b, c, d;  // lambda^3 + b lambda^2 + c lambda + d

    double operator()(double x) const { return ((x + b) * x + c) * x + d; }
    double derivative(double x) const { return (3.0 * x + 2.0 * b) * x + c; }
};

double polish(const Cubic& f, double x) {
    for (int it = 0; it < 4; ++it) {
        const double fx = f(x);
        const double dfx = f.derivative(x);
        if (fx == 0.0 || dfx == 0.0) break;
        const double next = x - fx / dfx;
        if (!(std::abs(f(next)) < std::abs(fx))) break;
        x = next;
    }
    return x;
}

[[noreturn]] void complex_pair(double imag) {
    std::ostringstream msg;
    msg << "conjugate eigenvalue pair with imaginary part " << imag << " x ||M|| (badly conditioned identification)";
    throw ComplexSpectrum("torsor-core", msg.str());
}

/// Roots of the monic cubic. The most isolated root is found first and polished,
/// the other two come from the deflated quadratic, which keeps repeated roots exact.
std::array<double, 3> cubic_roots(const Cubic& f) {
    const double b = f.b;
    const double p = f.c - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * f.c / 3.0 + f.d;
    const double shift = -b / 3.0;
    const double disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);

    // A triple root is only resolvable to about cbrt(eps) from the coefficients.
    if (std::abs(p) <= 1e-10 && std::abs(q) <= 1e-14) return {shift, shift, shift};

    double isolated = 0.0;
    if (disc > 0.0) {
        const double s = std::sqrt(disc);
        isolated = std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s);
    } else if (p < 0.0) {
        const double r = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * r), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        std::array<double, 3> t{};
        for (int k = 0; k < 3; ++k) t[k] = r * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0);
        std::size_t best = 0;
        double best_gap = -1.0;
        for (std::size_t k = 0; k < 3; ++k) {
            const double gap = std::min(std::abs(t[k] - t[(k + 1) % 3]), std::abs(t[k] - t[(k + 2) % 3]));
            if (gap > best_gap) {
                best_gap = gap;
                best = k;
            }
        }
        isolated = t[best];
    }
    const double r1 = polish(f, isolated + shift);

    // remaining pair: sum s2 and product p2
    const double s2 = -b - r1;
    const double p2 = f.c - r1 * s2;
    const double dq = s2 * s2 - 4.0 * p2;
    const double half_gap = std::sqrt(std::abs(dq)) / 2.0;
    if (dq < 0.0 && half_gap > kComplexTolerance) complex_pair(half_gap);
    if (dq <= 0.0 || half_gap <= kRepeatTolerance / 2.0) return {r1, s2 / 2.0, s2 / 2.0};
    const double r2 = (s2 + std::copysign(2.0 * half_gap, s2)) / 2.0;
    const double r3 = r2 != 0.0 ? p2 / r2 : s2 - r2;
    return {r1, polish(f, r2), polish(f, r3)};
}

Vec3 any_perpendicular(const Vec3& v) {
    const Vec3 axis = std::abs(v.x) <= std::abs(v.y) && std::abs(v.x) <= std::abs(v.z) ? Vec3{1, 0, 0}
                      : std::abs(v.y) <= std::abs(v.z)                                 ? Vec3{0, 1, 0}
                                                                                        : Vec3{0, 0, 1};
    return normalized(cross(v, axis));
}

/// Orthonormal basis of the (numerical) null space of m; at most 3 vectors.
std::vector<Vec3> null_space(const Mat3& m) {
    const Vec3 rows[3] = {{m(0, 0), m(0, 1), m(0, 2)}, {m(1, 0), m(1, 1), m(1, 2)}, {m(2, 0), m(2, 1), m(2, 2)}};
    const Vec3 crosses[3] = {cross(rows[0], rows[1]), cross(rows[0], rows[2]), cross(rows[1], rows[2])};
    const Vec3* best = &crosses[0];
    for (const auto& c : crosses)
        if (norm(c) > norm(*best)) best = &c;
    if (norm(*best) > kRankTolerance) return {normalized(*best)};

    const Vec3* big = &rows[0];
    for (const auto& r : rows)
        if (norm(r) > norm(*big)) big = &r;
    if (norm(*big) <= kRankTolerance) return {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    const Vec3 u1 = any_perpendicular(*big);
    return {u1, normalized(cross(*big, u1))};
}

Vec3 refine(const Mat3& a, double lambda, const Vec3& v) {
    const double shift = lambda + 1e-10 * std::max(1.0, std::abs(lambda));
    Lu<3> lu(a - Mat3::identity() * shift);
    if (!lu.ok()) return v;
    const auto x = lu.solve({v.x, v.y, v.z});
    const Vec3 w{x[0], x[1], x[2]};
    const double n = norm(w);
    if (!std::isfinite(n) || n == 0.0) return v;
    return w / n;
}

Vec3 fix_sign(Vec3 v) {
    std::size_t k = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (std::abs(v[i]) > std::abs(v[k])) k = i;
    if (v[k] < 0.0) v = -v;
    return v + Vec3{0.0, 0.0, 0.0};  // no negative zeros
}

}  // namespace

Eigen3 eig3_real(const Mat3& m) {
    if (!is_finite(m)) throw InvalidArgument("torsor-core", "eig3_real: non-finite matrix entry");
    const double scale = frobenius(m);
    Eigen3 out;
    if (scale == 0.0) {
        out.values = {0.0, 0.0, 0.0};
        out.vectors = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
        return out;
    }
    const Mat3 a = m * (1.0 / scale);

    const double trace = a(0, 0) + a(1, 1) + a(2, 2);
    const double minors = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) +
                          a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
    auto roots = cubic_roots({-trace, minors, -determinant(a)});

    std::array<std::size_t, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (std::abs(roots[i]) != std::abs(roots[j])) return std::abs(roots[i]) < std::abs(roots[j]);
        return roots[i] < roots[j];
    });

    std::array<double, 3> sorted{};
    for (std::size_t k = 0; k < 3; ++k) sorted[k] = roots[order[k]];

    for (std::size_t k = 0; k < 3; ++k) {
        // Earlier entries with the same eigenvalue consume the leading null-space vectors.
        std::size_t rank_in_group = 0;
        for (std::size_t j = 0; j < k; ++j)
            if (std::abs(sorted[j] - sorted[k]) <= kRepeatTolerance) ++rank_in_group;
        const auto basis = null_space(a - Mat3::identity() * sorted[k]);
        Vec3 v = basis[std::min(rank_in_group, basis.size() - 1)];
        if (basis.size() == 1) v = refine(a, sorted[k], v);
        out.vectors[k] = fix_sign(v);
        out.values[k] = sorted[k] * scale;
    }
    return out;
}

}  // namespace stiffid
