#pragma once

#include <optional>

#include "winglock/facet.hpp"

namespace winglock {

enum class FacetRelation { Disjoint, Touching, Crossing, CoplanarOverlap };

inline const char* to_string(FacetRelation r) {
    switch (r) {
        case FacetRelation::Disjoint: return "Disjoint";
        case FacetRelation::Touching: return "Touching";
        case FacetRelation::Crossing: return "Crossing";
        case FacetRelation::CoplanarOverlap: return "CoplanarOverlap";
    }
    return "?";
}

namespace detail {

// Penetration of polygon `p` through plane `pl`: how far its vertices reach on
// the minority side; zero when all vertices are on one side.
inline double plane_penetration(const std::vector<Vec3>& p, const Plane& pl) {
    double hi = 0.0, lo = 0.0;
    for (const Vec3& v : p) {
        double d = pl.signed_distance(v);
        hi = std::max(hi, d);
        lo = std::min(lo, d);
    }
    return std::min(hi, -lo);
}

struct CrossingInfo {
    double margin = 0.0;   // min of the two plane penetrations
    double seg_len = 0.0;  // length of the shared intersection segment
};

// Transversal crossing test: the planes' intersection line, clipped to both
// footprints, must leave a shared segment, and both polygons must reach
// through the other's plane.
inline std::optional<CrossingInfo> transversal_crossing(const ConvexFacet& a,
                                                        const ConvexFacet& b, double tol) {
    Vec3 dir = cross(a.plane.normal, b.plane.normal);
    double dn = norm(dir);
    if (dn < 1e-9) return std::nullopt;  // parallel planes never cross transversally
    double depth_a = plane_penetration(a.vertices, b.plane);
    double depth_b = plane_penetration(b.vertices, a.plane);
    double margin = std::min(depth_a, depth_b);
    if (margin <= tol) return std::nullopt;
    dir = dir / dn;
    // point on both planes: solve [na; nb; dir] p = [oa; ob; 0]
    const Vec3& na = a.plane.normal;
    const Vec3& nb = b.plane.normal;
    Mat3 m;
    m(0, 0) = na.x; m(0, 1) = na.y; m(0, 2) = na.z;
    m(1, 0) = nb.x; m(1, 1) = nb.y; m(1, 2) = nb.z;
    m(2, 0) = dir.x; m(2, 1) = dir.y; m(2, 2) = dir.z;
    double det = m.det();
    if (std::abs(det) < 1e-18) return std::nullopt;
    Vec3 rhs{a.plane.offset, b.plane.offset, 0.0};
    // Cramer
    auto solve_col = [&](int col) {
        Mat3 t = m;
        t(0, col) = rhs.x;
        t(1, col) = rhs.y;
        t(2, col) = rhs.z;
        return t.det() / det;
    };
    Vec3 p0{solve_col(0), solve_col(1), solve_col(2)};
    // Clip a long parameter window of the line against both footprints.
    double span = 0.0;
    for (const ConvexFacet* f : {&a, &b})
        for (const Vec3& v : f->vertices) span = std::max(span, norm(v - p0));
    span = span * 2.0 + 1.0;
    Vec3 q0 = p0 - dir * span, q1 = p0 + dir * span;

    auto clip_in = [&](const ConvexFacet& f, double& t0, double& t1) {
        PlaneFrame fr = facet_frame(f);
        Poly2 poly = facet_project(f, fr);
        return poly2_clip_segment(fr.project(q0), fr.project(q1), poly, t0, t1);
    };
    double ta0, ta1, tb0, tb1;
    if (!clip_in(a, ta0, ta1) || !clip_in(b, tb0, tb1)) return std::nullopt;
    double lo = std::max(ta0, tb0), hi = std::min(ta1, tb1);
    double seg = (hi - lo) * 2.0 * span;
    if (seg <= tol) return std::nullopt;
    return CrossingInfo{margin, seg};
}

}  // namespace detail

inline void require_nondegenerate(const ConvexFacet& f, double tol) {
    // Newell area
    Vec3 n{};
    Vec3 c = facet_centroid(f);
    for (std::size_t i = 0; i < f.size(); ++i)
        n += cross(f.vertices[i] - c, f.vertices[(i + 1) % f.size()] - c);
    if (0.5 * norm(n) < tol * tol) throw Error(Errc::DegenerateFacet, "near-zero facet area");
}

// Classification per the one-sided contact model:
//   Crossing        transversal interior intersection, penetration margin > tol
//   CoplanarOverlap planes coincide within tol and the 2D interiors overlap
//   Touching        closest distance <= tol otherwise
//   Disjoint        everything else
inline FacetRelation facet_facet_classify(const ConvexFacet& a, const ConvexFacet& b,
                                          double tol = kTol) {
    require_nondegenerate(a, tol);
    require_nondegenerate(b, tol);

    if (auto cr = detail::transversal_crossing(a, b, tol)) {
        (void)cr;
        return FacetRelation::Crossing;
    }

    // coplanar: every vertex of each within tol of the other's plane
    double off = 0.0;
    for (const Vec3& v : a.vertices) off = std::max(off, std::abs(b.plane.signed_distance(v)));
    for (const Vec3& v : b.vertices) off = std::max(off, std::abs(a.plane.signed_distance(v)));
    if (off <= tol) {
        PlaneFrame fr = facet_frame(a);
        Poly2 pa = facet_project(a, fr);
        Poly2 pb;
        pb.reserve(b.size());
        for (const Vec3& v : b.vertices) pb.push_back(fr.project(v));
        Poly2 inter = poly2_clip(pa, pb);
        if (inter.size() >= 3) {
            // interiors overlap when the intersection has interior depth
            double deep = -1e300;
            Vec3 c{};  // centroid of intersection in 2D
            double cx = 0, cy = 0;
            for (const auto& p : inter) { cx += p[0]; cy += p[1]; }
            cx /= static_cast<double>(inter.size());
            cy /= static_cast<double>(inter.size());
            (void)c;
            deep = std::min(poly2_inside_margin({cx, cy}, pa), poly2_inside_margin({cx, cy}, pb));
            if (deep > tol) return FacetRelation::CoplanarOverlap;
        }
        return facet_distance(a, b) <= tol ? FacetRelation::Touching : FacetRelation::Disjoint;
    }

    return facet_distance(a, b) <= tol ? FacetRelation::Touching : FacetRelation::Disjoint;
}

// Intersection polygon of two coplanar facets, or nullopt when empty.
inline std::optional<ConvexFacet> clip_coplanar(const ConvexFacet& a, const ConvexFacet& b,
                                                double tol = kTol) {
    double off = 0.0;
    for (const Vec3& v : b.vertices) off = std::max(off, std::abs(a.plane.signed_distance(v)));
    if (off > 100 * tol) throw Error(Errc::NotCoplanar, "facet planes differ beyond tolerance");
    PlaneFrame fr = facet_frame(a);
    Poly2 pa = facet_project(a, fr);
    Poly2 pb;
    pb.reserve(b.size());
    for (const Vec3& v : b.vertices) pb.push_back(fr.project(v));
    Poly2 inter = poly2_clip(pa, pb);
    if (inter.size() < 3 || std::abs(poly2_area_signed(inter)) < tol * tol) return std::nullopt;
    std::vector<Vec3> verts;
    verts.reserve(inter.size());
    for (const auto& p : inter) verts.push_back(fr.lift(p[0], p[1]));
    return make_facet(std::move(verts), a.plane.normal, a.tag);
}

}  // namespace winglock
