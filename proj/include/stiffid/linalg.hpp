#pragma once

// Fixed-size 3D/6D primitives. Everything here is a plain value type.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <optional>

namespace stiffid {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
    constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    constexpr Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    constexpr Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

    constexpr bool operator==(const Vec3&) const = default;
};

/// Positions share the vector representation; the name documents intent.
using Point3 = Vec3;

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

inline bool is_finite(const Vec3& v) {
    return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}

/// Angle between two non-zero vectors, radians in [0, pi].
inline double angle_between(const Vec3& a, const Vec3& b) {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

/// Row-major N x N matrix.
template <std::size_t N>
struct Mat {
    std::array<double, N * N> a{};

    static constexpr std::size_t size = N;

    static constexpr Mat zero() { return {}; }
    static constexpr Mat identity() {
        Mat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }
    static constexpr Mat diagonal(const std::array<double, N>& d) {
        Mat m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
        return m;
    }

    constexpr double& operator()(std::size_t r, std::size_t c) { return a[r * N + c]; }
    constexpr double operator()(std::size_t r, std::size_t c) const { return a[r * N + c]; }

    constexpr Mat operator+(const Mat& o) const {
        Mat m;
        for (std::size_t i = 0; i < N * N; ++i) m.a[i] = a[i] + o.a[i];
        return m;
    }
    constexpr Mat operator-(const Mat& o) const {
        Mat m;
        for (std::size_t i = 0; i < N * N; ++i) m.a[i] = a[i] - o.a[i];
        return m;
    }
    constexpr Mat operator*(double s) const {
        Mat m;
        for (std::size_t i = 0; i < N * N; ++i) m.a[i] = a[i] * s;
        return m;
    }
    constexpr Mat operator*(const Mat& o) const {
        Mat m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t k = 0; k < N; ++k) {
                const double v = (*this)(r, k);
                for (std::size_t c = 0; c < N; ++c) m(r, c) += v * o(k, c);
            }
        return m;
    }
    constexpr std::array<double, N> operator*(const std::array<double, N>& v) const {
        std::array<double, N> out{};
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) out[r] += (*this)(r, c) * v[c];
        return out;
    }

    constexpr Mat transposed() const {
        Mat m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(c, r) = (*this)(r, c);
        return m;
    }

    constexpr bool operator==(const Mat&) const = default;
};

using Mat3 = Mat<3>;
using Mat6 = Mat<6>;
using Vec6 = std::array<double, 6>;

inline Vec3 operator*(const Mat3& m, const Vec3& v) {
    return {m(0, 0) * v.x + m(0, 1) * v.y + m(0, 2) * v.z,
            m(1, 0) * v.x + m(1, 1) * v.y + m(1, 2) * v.z,
            m(2, 0) * v.x + m(2, 1) * v.y + m(2, 2) * v.z};
}

inline Mat3 outer(const Vec3& u, const Vec3& v) {
    Mat3 m;
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) m(r, c) = u[r] * v[c];
    return m;
}

inline Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
    Mat3 m;
    for (std::size_t r = 0; r < 3; ++r) {
        m(r, 0) = c0[r];
        m(r, 1) = c1[r];
        m(r, 2) = c2[r];
    }
    return m;
}

inline Vec3 column(const Mat3& m, std::size_t c) { return {m(0, c), m(1, c), m(2, c)}; }

template <std::size_t N>
double frobenius(const Mat<N>& m) {
    double s = 0.0;
    for (double v : m.a) s += v * v;
    return std::sqrt(s);
}

template <std::size_t N>
double norm1(const Mat<N>& m) {
    double best = 0.0;
    for (std::size_t c = 0; c < N; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < N; ++r) s += std::abs(m(r, c));
        best = std::max(best, s);
    }
    return best;
}

template <std::size_t N>
bool is_finite(const Mat<N>& m) {
    for (double v : m.a)
        if (!std::isfinite(v)) return false;
    return true;
}

/// LU factorization with partial pivoting. `ok()` is false when a pivot
/// underflows relative to the matrix scale.
template <std::size_t N>
class Lu {
public:
    explicit Lu(const Mat<N>& m) : a_(m), lu_(m) {
        for (std::size_t i = 0; i < N; ++i) perm_[i] = i;
        const double scale = std::max(norm1(m), 1e-300);
        for (std::size_t k = 0; k < N; ++k) {
            std::size_t p = k;
            for (std::size_t r = k + 1; r < N; ++r)
                if (std::abs(lu_(r, k)) > std::abs(lu_(p, k))) p = r;
            if (std::abs(lu_(p, k)) <= 1e-15 * scale) {
                ok_ = false;
                return;
            }
            if (p != k) {
                for (std::size_t c = 0; c < N; ++c) std::swap(lu_(k, c), lu_(p, c));
                std::swap(perm_[k], perm_[p]);
            }
            for (std::size_t r = k + 1; r < N; ++r) {
                lu_(r, k) /= lu_(k, k);
                const double f = lu_(r, k);
                for (std::size_t c = k + 1; c < N; ++c) lu_(r, c) -= f * lu_(k, c);
            }
        }
    }

    bool ok() const { return ok_; }

    /// Solution with two steps of iterative refinement (residuals in long double).
    std::array<double, N> solve(const std::array<double, N>& b) const {
        std::array<double, N> x = substitute(b);
        for (int step = 0; step < 2; ++step) {
            std::array<double, N> r{};
            for (std::size_t i = 0; i < N; ++i) {
                long double s = b[i];
                for (std::size_t j = 0; j < N; ++j) s -= static_cast<long double>(a_(i, j)) * x[j];
                r[i] = static_cast<double>(s);
            }
            const auto dx = substitute(r);
            for (std::size_t i = 0; i < N; ++i) x[i] += dx[i];
        }
        return x;
    }

    Mat<N> inverse() const {
        Mat<N> inv;
        for (std::size_t c = 0; c < N; ++c) {
            std::array<double, N> e{};
            e[c] = 1.0;
            const auto col = solve(e);
            for (std::size_t r = 0; r < N; ++r) inv(r, c) = col[r];
        }
        return inv;
    }

private:
    std::array<double, N> substitute(const std::array<double, N>& b) const {
        std::array<double, N> x{};
        for (std::size_t i = 0; i < N; ++i) {
            double s = b[perm_[i]];
            for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
            x[i] = s;
        }
        for (std::size_t i = N; i-- > 0;) {
            double s = x[i];
            for (std::size_t j = i + 1; j < N; ++j) s -= lu_(i, j) * x[j];
            x[i] = s / lu_(i, i);
        }
        return x;
    }

    Mat<N> a_;
    Mat<N> lu_;
    std::array<std::size_t, N> perm_{};
    bool ok_ = true;
};

/// Inverse, or nullopt when the matrix is numerically singular.
template <std::size_t N>
std::optional<Mat<N>> try_inverse(const Mat<N>& m) {
    Lu<N> lu(m);
    if (!lu.ok()) return std::nullopt;
    return lu.inverse();
}

/// 1-norm condition number; +inf for singular input.
template <std::size_t N>
double condition_number(const Mat<N>& m) {
    const auto inv = try_inverse(m);
    if (!inv) return INFINITY;
    return norm1(m) * norm1(*inv);
}

inline double determinant(const Mat3& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

/// Relative Frobenius distance ||a - b|| / ||b||.
template <std::size_t N>
double relative_error(const Mat<N>& a, const Mat<N>& b) {
    return frobenius(a - b) / frobenius(b);
}

/// ||K - K^T|| / ||K||, zero for symmetric input.
template <std::size_t N>
double symmetry_deviation(const Mat<N>& m) {
    const double n = frobenius(m);
    return n == 0.0 ? 0.0 : frobenius(m - m.transposed()) / n;
}

}  // namespace stiffid
