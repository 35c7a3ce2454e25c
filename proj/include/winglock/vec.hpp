#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>

namespace winglock {

inline constexpr double kPi = 3.14159265358979323846;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }

    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm2(const Vec3& v) { return dot(v, v); }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
    double n = norm(v);
    return n > 0.0 ? v / n : Vec3{};
}

inline std::ostream& operator<<(std::ostream& os, const Vec3& v) {
    return os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
}

struct Mat3 {
    // row-major
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    static Mat3 identity() { return Mat3{}; }

    double& operator()(int r, int c) { return m[static_cast<std::size_t>(r * 3 + c)]; }
    double operator()(int r, int c) const { return m[static_cast<std::size_t>(r * 3 + c)]; }

    Vec3 operator*(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }

    Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int k = 0; k < 3; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }

    Mat3 transposed() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
        return r;
    }

    double det() const {
        return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
               m[2] * (m[3] * m[7] - m[4] * m[6]);
    }

    // Rodrigues rotation about a unit axis.
    static Mat3 axis_angle(const Vec3& axis_unit, double angle) {
        const Vec3& u = axis_unit;
        double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
        Mat3 r;
        r(0, 0) = c + u.x * u.x * t;
        r(0, 1) = u.x * u.y * t - u.z * s;
        r(0, 2) = u.x * u.z * t + u.y * s;
        r(1, 0) = u.y * u.x * t + u.z * s;
        r(1, 1) = c + u.y * u.y * t;
        r(1, 2) = u.y * u.z * t - u.x * s;
        r(2, 0) = u.z * u.x * t - u.y * s;
        r(2, 1) = u.z * u.y * t + u.x * s;
        r(2, 2) = c + u.z * u.z * t;
        return r;
    }

    static Mat3 rotation_x(double angle) { return axis_angle({1, 0, 0}, angle); }
    static Mat3 rotation_z(double angle) { return axis_angle({0, 0, 1}, angle); }
};

// Proper rigid motion: p -> rotation * p + translation.
struct RigidMotion {
    Mat3 rotation;
    Vec3 translation;

    static RigidMotion identity() { return {}; }

    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }

    RigidMotion then(const RigidMotion& second) const {
        // second ∘ first
        return {second.rotation * rotation, second.rotation * translation + second.translation};
    }

    // Rotation about an axis through a point.
    static RigidMotion about_axis(const Vec3& point, const Vec3& axis_unit, double angle) {
        Mat3 r = Mat3::axis_angle(axis_unit, angle);
        return {r, point - r * point};
    }

    static RigidMotion translate(const Vec3& t) { return {Mat3::identity(), t}; }

    // Orthonormality defect: max |R^T R - I| entry.
    double orthonormality_defect() const {
        Mat3 g = rotation.transposed() * rotation;
        double worst = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double want = (i == j) ? 1.0 : 0.0;
                worst = std::max(worst, std::abs(g(i, j) - want));
            }
        return worst;
    }
};

inline Vec3 apply_motion(const RigidMotion& m, const Vec3& p) { return m.apply(p); }

// Infinitesimal rigid motion: velocity at p is vel + omega x (p - ref_point).
struct Twist {
    Vec3 omega;
    Vec3 vel;
    Vec3 ref_point;

    Vec3 velocity_at(const Vec3& p) const { return vel + cross(omega, p - ref_point); }
};

}  // namespace winglock
