#pragma once

#include <cmath>

namespace hodokit {

/// 3-component Euclidean vector. All quantities in the library (positions,
/// velocities, angular momenta, directions) use this type.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    Vec3& operator-=(const Vec3& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    Vec3& operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    constexpr double norm_squared() const { return x * x + y * y + z * z; }
    Vec3 normalized() const { return *this / norm(); }

    bool is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Signed angle from `a` to `b` about the unit axis `axis`, in (-pi, pi].
/// Positive means counterclockwise when looking down the axis.
inline double signed_angle(const Vec3& a, const Vec3& b, const Vec3& axis) {
    const double s = dot(cross(a, b), axis);
    const double c = dot(a, b);
    return std::atan2(s, c);
}

/// Rotate `v` about the unit axis `axis` by `angle` (Rodrigues formula).
inline Vec3 rotate_about(const Vec3& v, const Vec3& axis, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return v * c + cross(axis, v) * s + axis * (dot(axis, v) * (1.0 - c));
}

/// Proper rotation, stored as the images of the coordinate axes.
struct Rotation {
    Vec3 ex{1, 0, 0};
    Vec3 ey{0, 1, 0};
    Vec3 ez{0, 0, 1};

    Vec3 apply(const Vec3& v) const { return ex * v.x + ey * v.y + ez * v.z; }

    /// Build from a (not necessarily normalized) quaternion w + xi + yj + zk.
    static Rotation from_quaternion(double w, double x, double y, double z) {
        const double n = std::sqrt(w * w + x * x + y * y + z * z);
        w /= n;
        x /= n;
        y /= n;
        z /= n;
        Rotation r;
        r.ex = {1 - 2 * (y * y + z * z), 2 * (x * y + w * z), 2 * (x * z - w * y)};
        r.ey = {2 * (x * y - w * z), 1 - 2 * (x * x + z * z), 2 * (y * z + w * x)};
        r.ez = {2 * (x * z + w * y), 2 * (y * z - w * x), 1 - 2 * (x * x + y * y)};
        return r;
    }
};

}  // namespace hodokit
