#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "winglock/error.hpp"
#include "winglock/vec.hpp"

namespace winglock {

// Global geometric tolerance, in paper units (dodecahedron rings at radii 2 and 3).
constexpr double kTol = 1e-7;

struct Plane {
    Vec3 normal;    // unit
    double offset;  // normal . p = offset on the plane

    double signed_distance(const Vec3& p) const { return dot(normal, p) - offset; }
};

enum class FacetTag { Body, Wing };

// Planar convex polygon with an orientation tag: `normal` points to the tile's
// outer side. Vertices are in cyclic order consistent with the normal.
struct ConvexFacet {
    std::vector<Vec3> vertices;
    Plane plane;
    FacetTag tag = FacetTag::Body;
    int wing_edge = -1;  // pentagon edge index the wing is attached along

    std::size_t size() const { return vertices.size(); }
};

// 2D frame spanning a plane; used to run polygon predicates in the plane.
struct PlaneFrame {
    Vec3 origin;
    Vec3 u, v;  // orthonormal, u x v = normal

    std::array<double, 2> project(const Vec3& p) const {
        Vec3 d = p - origin;
        return {dot(d, u), dot(d, v)};
    }

    Vec3 lift(double a, double b) const { return origin + u * a + v * b; }
};

inline PlaneFrame make_frame(const Vec3& origin, const Vec3& normal_unit) {
    Vec3 a{1, 0, 0};
    if (std::abs(dot(a, normal_unit)) > 0.9) a = Vec3{0, 1, 0};
    Vec3 u = normalized(a - normal_unit * dot(a, normal_unit));
    Vec3 v = cross(normal_unit, u);
    return {origin, u, v};
}

using Poly2 = std::vector<std::array<double, 2>>;

inline double poly2_area_signed(const Poly2& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& a = p[i];
        const auto& b = p[(i + 1) % p.size()];
        s += a[0] * b[1] - b[0] * a[1];
    }
    return 0.5 * s;
}

// Signed inside-margin of a point vs a convex polygon: positive inside,
// value = distance to the nearest edge line. Works for CW or CCW input.
inline double poly2_inside_margin(const std::array<double, 2>& p, const Poly2& poly) {
    double sgn = poly2_area_signed(poly) >= 0.0 ? 1.0 : -1.0;
    double m = 1e300;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % poly.size()];
        double ex = b[0] - a[0], ey = b[1] - a[1];
        double len = std::sqrt(ex * ex + ey * ey);
        if (len < 1e-15) continue;
        // outward normal
        double nx = sgn * ey / len, ny = -sgn * ex / len;
        double d = nx * (p[0] - a[0]) + ny * (p[1] - a[1]);
        m = std::min(m, -d);
    }
    return m;
}

// Clip a convex polygon by the half-plane n.(p - a) <= 0.
inline Poly2 poly2_clip_halfplane(const Poly2& poly, const std::array<double, 2>& a,
                                  const std::array<double, 2>& n) {
    Poly2 out;
    std::size_t k = poly.size();
    for (std::size_t i = 0; i < k; ++i) {
        const auto& cur = poly[i];
        const auto& nxt = poly[(i + 1) % k];
        double dc = n[0] * (cur[0] - a[0]) + n[1] * (cur[1] - a[1]);
        double dn = n[0] * (nxt[0] - a[0]) + n[1] * (nxt[1] - a[1]);
        if (dc <= 0) out.push_back(cur);
        if ((dc < 0) != (dn < 0)) {
            double t = dc / (dc - dn);
            out.push_back({cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])});
        }
    }
    return out;
}

// Convex-convex intersection in 2D (Sutherland-Hodgman).
inline Poly2 poly2_clip(const Poly2& subject, const Poly2& clip) {
    double sgn = poly2_area_signed(clip) >= 0.0 ? 1.0 : -1.0;
    Poly2 out = subject;
    for (std::size_t i = 0; i < clip.size() && !out.empty(); ++i) {
        const auto& a = clip[i];
        const auto& b = clip[(i + 1) % clip.size()];
        double ex = b[0] - a[0], ey = b[1] - a[1];
        std::array<double, 2> n{sgn * ey, -sgn * ex};  // outward
        out = poly2_clip_halfplane(out, a, n);
    }
    return out;
}

// Clip segment p0 + t (p1 - p0), t in [0, 1], to a convex polygon.
// Returns false when the segment misses the polygon.
inline bool poly2_clip_segment(const std::array<double, 2>& p0, const std::array<double, 2>& p1,
                               const Poly2& poly, double& t0, double& t1) {
    double sgn = poly2_area_signed(poly) >= 0.0 ? 1.0 : -1.0;
    t0 = 0.0;
    t1 = 1.0;
    double dx = p1[0] - p0[0], dy = p1[1] - p0[1];
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % poly.size()];
        double ex = b[0] - a[0], ey = b[1] - a[1];
        double nx = sgn * ey, ny = -sgn * ex;  // outward
        double den = nx * dx + ny * dy;
        double num = nx * (a[0] - p0[0]) + ny * (a[1] - p0[1]);
        if (std::abs(den) < 1e-300) {
            if (-num > 0) return false;  // fully outside this edge
            continue;
        }
        double t = num / den;
        if (den > 0)
            t1 = std::min(t1, t);
        else
            t0 = std::max(t0, t);
        if (t0 > t1) return false;
    }
    return true;
}

// Facet construction from vertices; fits the plane, checks convexity/planarity.
inline ConvexFacet make_facet(std::vector<Vec3> vertices, const Vec3& orient_hint,
                              FacetTag tag = FacetTag::Body, int wing_edge = -1,
                              double tol = kTol) {
    if (vertices.size() < 3) throw Error(Errc::DegenerateFacet, "facet needs >= 3 vertices");
    // Newell normal
    Vec3 n{};
    Vec3 c{};
    for (const Vec3& p : vertices) c += p;
    c = c / static_cast<double>(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vec3& a = vertices[i];
        const Vec3& b = vertices[(i + 1) % vertices.size()];
        n += cross(a - c, b - c);
    }
    double area = 0.5 * norm(n);
    if (area < tol * tol) throw Error(Errc::DegenerateFacet, "facet area below tolerance");
    Vec3 nu = normalized(n);
    if (dot(nu, orient_hint) < 0.0) {
        nu = -nu;
        std::reverse(vertices.begin(), vertices.end());
    }
    ConvexFacet f;
    f.vertices = std::move(vertices);
    f.plane = Plane{nu, dot(nu, c)};
    f.tag = tag;
    f.wing_edge = wing_edge;
    return f;
}

inline PlaneFrame facet_frame(const ConvexFacet& f) {
    return make_frame(f.vertices.front(), f.plane.normal);
}

inline Poly2 facet_project(const ConvexFacet& f, const PlaneFrame& frame) {
    Poly2 p;
    p.reserve(f.size());
    for (const Vec3& v : f.vertices) p.push_back(frame.project(v));
    return p;
}

// Planar area and area centroid (shoelace in the facet plane).
inline std::pair<double, Vec3> polygon_area_centroid(const ConvexFacet& f, double tol = kTol) {
    PlaneFrame fr = facet_frame(f);
    Poly2 p = facet_project(f, fr);
    double a2 = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& u = p[i];
        const auto& v = p[(i + 1) % p.size()];
        double w = u[0] * v[1] - v[0] * u[1];
        a2 += w;
        cx += (u[0] + v[0]) * w;
        cy += (u[1] + v[1]) * w;
    }
    double area = 0.5 * std::abs(a2);
    if (area < tol * tol) throw Error(Errc::DegenerateFacet, "degenerate polygon");
    double inv = 1.0 / (3.0 * a2);
    return {area, fr.lift(cx * inv, cy * inv)};
}

inline Vec3 facet_centroid(const ConvexFacet& f) {
    Vec3 c{};
    for (const Vec3& v : f.vertices) c += v;
    return c / static_cast<double>(f.size());
}

// Axis-aligned bounds.
struct Aabb {
    Vec3 lo{1e300, 1e300, 1e300};
    Vec3 hi{-1e300, -1e300, -1e300};

    void expand(const Vec3& p) {
        lo.x = std::min(lo.x, p.x); lo.y = std::min(lo.y, p.y); lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x); hi.y = std::max(hi.y, p.y); hi.z = std::max(hi.z, p.z);
    }

    void expand(const Aabb& o) { expand(o.lo); expand(o.hi); }

    bool overlaps(const Aabb& o, double pad = 0.0) const {
        return lo.x - pad <= o.hi.x && o.lo.x - pad <= hi.x &&
               lo.y - pad <= o.hi.y && o.lo.y - pad <= hi.y &&
               lo.z - pad <= o.hi.z && o.lo.z - pad <= hi.z;
    }
};

inline Aabb facet_bounds(const ConvexFacet& f) {
    Aabb b;
    for (const Vec3& v : f.vertices) b.expand(v);
    return b;
}

namespace detail {

inline double segment_segment_distance(const Vec3& p1, const Vec3& p2, const Vec3& q1,
                                        const Vec3& q2) {
    Vec3 d1 = p2 - p1, d2 = q2 - q1, r = p1 - q1;
    double a = dot(d1, d1), e = dot(d2, d2), f = dot(d2, r);
    double s, t;
    if (a < 1e-30 && e < 1e-30) return norm(r);
    if (a < 1e-30) {
        s = 0.0;
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        double c = dot(d1, r);
        if (e < 1e-30) {
            t = 0.0;
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            double b = dot(d1, d2), den = a * e - b * b;
            s = den > 1e-30 ? std::clamp((b * f - c * e) / den, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return norm((p1 + d1 * s) - (q1 + d2 * t));
}

inline double point_facet_distance(const Vec3& p, const ConvexFacet& f, const PlaneFrame& fr,
                                   const Poly2& poly) {
    auto q = fr.project(p);
    if (poly2_inside_margin(q, poly) >= 0.0) return std::abs(f.plane.signed_distance(p));
    double best = 1e300;
    for (std::size_t i = 0; i < f.size(); ++i)
        best = std::min(best, segment_segment_distance(p, p, f.vertices[i],
                                                       f.vertices[(i + 1) % f.size()]));
    return best;
}

}  // namespace detail

namespace detail {

// Zero when an edge of `a` pierces the interior of `b`.
inline bool edge_pierces(const ConvexFacet& a, const ConvexFacet& b, const PlaneFrame& fb,
                         const Poly2& pb) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Vec3& p = a.vertices[i];
        const Vec3& q = a.vertices[(i + 1) % a.size()];
        double dp = b.plane.signed_distance(p), dq = b.plane.signed_distance(q);
        if ((dp > 0) == (dq > 0) || dp == dq) continue;
        Vec3 x = p + (q - p) * (dp / (dp - dq));
        if (poly2_inside_margin(fb.project(x), pb) >= 0.0) return true;
    }
    return false;
}

}  // namespace detail

// Exact distance between two convex planar polygons in 3D.
inline double facet_distance(const ConvexFacet& a, const ConvexFacet& b) {
    PlaneFrame fa = facet_frame(a), fb = facet_frame(b);
    Poly2 pa = facet_project(a, fa), pb = facet_project(b, fb);
    if (detail::edge_pierces(a, b, fb, pb) || detail::edge_pierces(b, a, fa, pa)) return 0.0;
    double best = 1e300;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            best = std::min(best, detail::segment_segment_distance(
                                      a.vertices[i], a.vertices[(i + 1) % a.size()],
                                      b.vertices[j], b.vertices[(j + 1) % b.size()]));
    for (const Vec3& v : a.vertices) best = std::min(best, detail::point_facet_distance(v, b, fb, pb));
    for (const Vec3& v : b.vertices) best = std::min(best, detail::point_facet_distance(v, a, fa, pa));
    return best;
}

}  // namespace winglock
