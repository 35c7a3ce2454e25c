#pragma once

#include <array>
#include <cmath>

#include "winglock/error.hpp"
#include "winglock/vec.hpp"

namespace winglock {

// Pentagon ring: vertex s at (radius cos(theta_s), radius sin(theta_s), z) with
// theta_s = ((angle_index + 2 s) mod 10) * pi/5. Keeping the angle as an
// integer index makes rim rings of consecutive decahedra bitwise identical.
struct RingSpec {
    double radius = 1.0;
    int angle_index = 0;  // angle offset in units of pi/5
    double z = 0.0;
};

inline std::array<Vec3, 5> ring_vertices(const RingSpec& spec) {
    if (spec.radius <= 0.0) throw Error(Errc::InputError, "ring radius must be positive");
    std::array<Vec3, 5> out;
    for (int s = 0; s < 5; ++s) {
        int idx = (spec.angle_index + 2 * s) % 10;
        if (idx < 0) idx += 10;
        double a = idx * (kPi / 5.0);
        out[static_cast<std::size_t>(s)] = {spec.radius * std::cos(a),
                                            spec.radius * std::sin(a), spec.z};
    }
    return out;
}

// A decahedron: a dodecahedron with the two horizontal pentagon faces removed.
// Four rings bottom to top at radii (2,3,3,2); the two lower rings share one
// angular offset, the two upper rings the other (shifted by pi/5).
struct DecahedronSpec {
    int index = 1;   // k
    int parity = 1;  // r(k) = k mod 2
    std::array<RingSpec, 4> rings;
    std::array<std::array<Vec3, 5>, 4> points;  // realized ring vertices

    // Lower-belt face s: (P1_s, P1_{s+1}, P2_{s+1}, P3_s, P2_s)
    std::array<Vec3, 5> lower_face(int s) const {
        int sp = (s + 1) % 5;
        return {points[0][static_cast<std::size_t>(s)], points[0][static_cast<std::size_t>(sp)],
                points[1][static_cast<std::size_t>(sp)], points[2][static_cast<std::size_t>(s)],
                points[1][static_cast<std::size_t>(s)]};
    }

    // Upper-belt face s: (P4_s, P4_{s+1}, P3_{s+1}, P2_{s+1}, P3_s)
    std::array<Vec3, 5> upper_face(int s) const {
        int sp = (s + 1) % 5;
        return {points[3][static_cast<std::size_t>(s)], points[3][static_cast<std::size_t>(sp)],
                points[2][static_cast<std::size_t>(sp)], points[1][static_cast<std::size_t>(sp)],
                points[2][static_cast<std::size_t>(s)]};
    }

    Vec3 centroid() const {
        Vec3 c{};
        for (const auto& ring : points)
            for (const Vec3& p : ring) c += p;
        return c / 20.0;
    }
};

// k-th decahedron of the straight chain, rings at z_base + {0,1,2,3}.
inline DecahedronSpec build_decahedron(int k, double z_base) {
    if (k < 1) throw Error(Errc::InputError, "decahedron index must be >= 1");
    int r = k % 2;
    DecahedronSpec d;
    d.index = k;
    d.parity = r;
    d.rings = {RingSpec{2.0, r, z_base + 0.0}, RingSpec{3.0, r, z_base + 1.0},
               RingSpec{3.0, r + 1, z_base + 2.0}, RingSpec{2.0, r + 1, z_base + 3.0}};
    for (int i = 0; i < 4; ++i)
        d.points[static_cast<std::size_t>(i)] = ring_vertices(d.rings[static_cast<std::size_t>(i)]);
    return d;
}

// k-th decahedron of the necklace: planar rings rotated about the x-axis
// through (3(k-1)+l) * 2*pi/(3n), l = 0..3. The rotation index is reduced
// mod 3n so the closing rim matches bitwise.
inline DecahedronSpec necklace_decahedron(int k, int n) {
    if (k < 1) throw Error(Errc::InputError, "decahedron index must be >= 1");
    if (n < 3) throw Error(Errc::InputError, "necklace n must be >= 3");
    int r = k % 2;
    DecahedronSpec d;
    d.index = k;
    d.parity = r;
    d.rings = {RingSpec{2.0, r, 0.0}, RingSpec{3.0, r, 0.0}, RingSpec{3.0, r + 1, 0.0},
               RingSpec{2.0, r + 1, 0.0}};
    for (int l = 0; l < 4; ++l) {
        int idx = (3 * (k - 1) + l) % (3 * n);
        double theta = idx * (2.0 * kPi / (3.0 * n));
        Mat3 rot = Mat3::rotation_x(theta);
        auto flat = ring_vertices(d.rings[static_cast<std::size_t>(l)]);
        for (auto& p : flat) p = rot * p;
        d.points[static_cast<std::size_t>(l)] = flat;
    }
    return d;
}

}  // namespace winglock
