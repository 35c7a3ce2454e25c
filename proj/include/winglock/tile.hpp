#pragma once

#include <string>
#include <vector>

#include "winglock/decahedron.hpp"
#include "winglock/facet.hpp"

namespace winglock {

enum class TileRole { LowerBelt, UpperBelt, Decagon };

inline const char* to_string(TileRole r) {
    switch (r) {
        case TileRole::LowerBelt: return "L";
        case TileRole::UpperBelt: return "U";
        case TileRole::Decagon: return "D";
    }
    return "?";
}

// One rigid thin plate: a belt face with wings, a bare face, or a decagon
// insert. Facets are the centroid-fan triangles of the outline plus wing
// polygons hovering over neighbours.
struct Tile {
    int id = -1;
    int deca = 0;  // decahedron index k
    TileRole role = TileRole::LowerBelt;
    int orbit = 0;  // s within the belt, 0 for decagon
    std::vector<Vec3> outline;  // face polygon, cyclic
    Vec3 outward_ref;           // unit, oriented away from the decahedron
    std::vector<ConvexFacet> facets;
    double planarity_defect = 0.0;

    Vec3 outline_centroid() const {
        Vec3 c{};
        for (const Vec3& v : outline) c += v;
        return c / static_cast<double>(outline.size());
    }

    Aabb bounds() const {
        Aabb b;
        for (const ConvexFacet& f : facets)
            for (const Vec3& v : f.vertices) b.expand(v);
        return b;
    }

    std::string label() const {
        return "deca" + std::to_string(deca) + "." + to_string(role) + std::to_string(orbit);
    }
};

namespace detail {

// Unit eigenvector of the smallest eigenvalue of a symmetric 3x3 matrix
// (trigonometric Cardano; used for best-fit planes).
inline Vec3 smallest_eigenvector(double a00, double a01, double a02, double a11, double a12,
                                 double a22) {
    double p1 = a01 * a01 + a02 * a02 + a12 * a12;
    double eig;
    if (p1 < 1e-30) {
        eig = std::min({a00, a11, a22});
    } else {
        double q = (a00 + a11 + a22) / 3.0;
        double p2 = (a00 - q) * (a00 - q) + (a11 - q) * (a11 - q) + (a22 - q) * (a22 - q) +
                    2.0 * p1;
        double p = std::sqrt(p2 / 6.0);
        double b00 = (a00 - q) / p, b01 = a01 / p, b02 = a02 / p;
        double b11 = (a11 - q) / p, b12 = a12 / p, b22 = (a22 - q) / p;
        double detb = b00 * (b11 * b22 - b12 * b12) - b01 * (b01 * b22 - b12 * b02) +
                      b02 * (b01 * b12 - b11 * b02);
        double r = std::clamp(detb / 2.0, -1.0, 1.0);
        double phi = std::acos(r) / 3.0;
        eig = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);  // smallest
    }
    // eigenvector: cross of two rows of (A - eig I), best-conditioned pick
    Vec3 r0{a00 - eig, a01, a02}, r1{a01, a11 - eig, a12}, r2{a02, a12, a22 - eig};
    Vec3 c01 = cross(r0, r1), c02 = cross(r0, r2), c12 = cross(r1, r2);
    Vec3 best = c01;
    if (norm2(c02) > norm2(best)) best = c02;
    if (norm2(c12) > norm2(best)) best = c12;
    if (norm2(best) < 1e-30) return {0, 0, 1};
    return normalized(best);
}

}  // namespace detail

// Best-fit plane through a point loop; returns (unit normal, max |deviation|).
inline std::pair<Vec3, double> best_fit_plane(const std::vector<Vec3>& pts) {
    Vec3 c{};
    for (const Vec3& p : pts) c += p;
    c = c / static_cast<double>(pts.size());
    double a00 = 0, a01 = 0, a02 = 0, a11 = 0, a12 = 0, a22 = 0;
    for (const Vec3& p : pts) {
        Vec3 d = p - c;
        a00 += d.x * d.x; a01 += d.x * d.y; a02 += d.x * d.z;
        a11 += d.y * d.y; a12 += d.y * d.z; a22 += d.z * d.z;
    }
    Vec3 n = detail::smallest_eigenvector(a00, a01, a02, a11, a12, a22);
    double defect = 0.0;
    for (const Vec3& p : pts) defect = std::max(defect, std::abs(dot(n, p - c)));
    return {n, defect};
}

// Face tile skeleton: outline, outward reference, centroid-fan body facets.
inline Tile make_face_tile(int id, int deca, TileRole role, int orbit,
                           const std::array<Vec3, 5>& verts, const Vec3& deca_centroid) {
    Tile t;
    t.id = id;
    t.deca = deca;
    t.role = role;
    t.orbit = orbit;
    t.outline.assign(verts.begin(), verts.end());

    Vec3 c = t.outline_centroid();
    Vec3 n{};
    for (std::size_t i = 0; i < t.outline.size(); ++i)
        n += cross(t.outline[i] - c, t.outline[(i + 1) % t.outline.size()] - c);
    n = normalized(n);
    if (dot(n, c - deca_centroid) < 0.0) n = -n;
    t.outward_ref = n;

    for (std::size_t i = 0; i < t.outline.size(); ++i) {
        std::vector<Vec3> tri{t.outline[i], t.outline[(i + 1) % t.outline.size()], c};
        t.facets.push_back(make_facet(std::move(tri), n, FacetTag::Body));
    }
    t.planarity_defect = best_fit_plane(t.outline).second;
    return t;
}

enum class DirectionClass { Outward, Inward, OnFace };

inline const char* to_string(DirectionClass d) {
    switch (d) {
        case DirectionClass::Outward: return "Outward";
        case DirectionClass::Inward: return "Inward";
        case DirectionClass::OnFace: return "OnFace";
    }
    return "?";
}

// Sign of w against the belt face's outward reference vector.
inline DirectionClass classify_direction(const Tile& tile, const Vec3& w, double tol = 1e-9) {
    if (tile.role == TileRole::Decagon)
        throw Error(Errc::NotABeltFace, "direction classes are defined for belt faces only");
    double n = norm(w);
    if (n <= 0.0) throw Error(Errc::InputError, "zero direction");
    double d = dot(w, tile.outward_ref) / n;
    if (d > tol) return DirectionClass::Outward;
    if (d < -tol) return DirectionClass::Inward;
    return DirectionClass::OnFace;
}

enum class BuildKind { Chain, Necklace, Custom };

inline const char* to_string(BuildKind k) {
    switch (k) {
        case BuildKind::Chain: return "chain";
        case BuildKind::Necklace: return "necklace";
        case BuildKind::Custom: return "custom";
    }
    return "?";
}

struct BuildParams {
    BuildKind kind = BuildKind::Chain;
    int count = 1;          // number of decahedra
    int n = 0;              // necklace parameter (0 for chains)
    double wing = 0.4;      // wing width w; <= 0 disables wings
    double clearance = 0.02;  // delta
    double margin = 0.05;   // m
    bool decagon = false;   // add decagon inserts
    unsigned relation_flips = 0;  // bitmask over RelationFamily
};

// Immutable after construction.
struct Assembly {
    BuildParams params;
    std::vector<Tile> tiles;
    std::vector<int> fixed_tiles;

    const Tile* find(int id) const {
        for (const Tile& t : tiles)
            if (t.id == id) return &t;
        return nullptr;
    }
};

}  // namespace winglock
