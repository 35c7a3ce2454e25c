#pragma once

#include <map>
#include <vector>

#include "winglock/blocking.hpp"
#include "winglock/classify.hpp"

namespace winglock {

namespace detail {

inline void merge_short_edges(Poly2& poly, double min_edge) {
    bool merged = true;
    while (merged && poly.size() > 3) {
        merged = false;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            std::size_t j = (i + 1) % poly.size();
            double dx = poly[j][0] - poly[i][0], dy = poly[j][1] - poly[i][1];
            if (dx * dx + dy * dy < min_edge * min_edge) {
                poly[i] = {0.5 * (poly[i][0] + poly[j][0]), 0.5 * (poly[i][1] + poly[j][1])};
                poly.erase(poly.begin() + static_cast<std::ptrdiff_t>(j));
                merged = true;
                break;
            }
        }
    }
}

struct PendingWing {
    int cover_id = -1;
    int covered_id = -1;
    Vec3 attach_mid;  // shared-edge midpoint lifted to the wing plane
    ConvexFacet facet;
};

// Clip a wing polygon by the half-plane of `line` containing `keep`; the line
// is shifted by `inset` into the kept side so the pieces keep a positive gap.
inline bool clip_wing_by_line(ConvexFacet& f, const Vec3& line_point, const Vec3& line_dir,
                              const Vec3& keep, double inset) {
    PlaneFrame fr = facet_frame(f);
    Poly2 poly = facet_project(f, fr);
    auto p0 = fr.project(line_point);
    auto p1 = fr.project(line_point + line_dir);
    std::array<double, 2> n{p1[1] - p0[1], -(p1[0] - p0[0])};
    double nn = std::sqrt(n[0] * n[0] + n[1] * n[1]);
    if (nn < 1e-15) return true;
    n = {n[0] / nn, n[1] / nn};
    auto k = fr.project(keep);
    double side = n[0] * (k[0] - p0[0]) + n[1] * (k[1] - p0[1]);
    if (side < 0.0) n = {-n[0], -n[1]};
    std::array<double, 2> base{p0[0] + n[0] * inset, p0[1] + n[1] * inset};
    poly = poly2_clip_halfplane(poly, base, {-n[0], -n[1]});
    merge_short_edges(poly, 1e-2);
    if (poly.size() < 3 || std::abs(poly2_area_signed(poly)) < 1e-6) return false;
    std::vector<Vec3> verts;
    verts.reserve(poly.size());
    for (const auto& p : poly) verts.push_back(fr.lift(p[0], p[1]));
    f = make_facet(std::move(verts), f.plane.normal, f.tag, f.wing_edge);
    return true;
}

// Intersection line of two planes, anchored near `mid`.
inline bool plane_plane_line(const Plane& pa, const Plane& pb, const Vec3& mid, Vec3& point,
                             Vec3& dir) {
    dir = cross(pa.normal, pb.normal);
    double dn = norm(dir);
    if (dn < 1e-12) return false;
    dir = dir / dn;
    double nanb = dot(pa.normal, pb.normal);
    double da = pa.signed_distance(mid), db = pb.signed_distance(mid);
    double det = 1.0 - nanb * nanb;
    if (std::abs(det) < 1e-15) return false;
    double ka = (-da + nanb * db) / det;
    double kb = (-db + nanb * da) / det;
    point = mid + pa.normal * ka + pb.normal * kb;
    return true;
}

}  // namespace detail

// Build the wing of `cover` over `covered` along their shared edge: a quad of
// depth w in the plane of the covered face's boundary triangle at that edge,
// trimmed to the covered footprint inset by the margin, then lifted by the
// clearance along the covered face's outer side.
inline std::optional<detail::PendingWing> make_wing(const Tile& cover, const Tile& covered,
                                                    const BlockingEdge& be, double w,
                                                    double delta, double margin) {
    if (delta >= w) throw Error(Errc::ClearanceTooLarge, "clearance must be below wing width");
    const std::size_t nq = covered.outline.size();
    Vec3 a = covered.outline[static_cast<std::size_t>(be.covered_edge)];
    Vec3 b = covered.outline[(static_cast<std::size_t>(be.covered_edge) + 1) % nq];
    Vec3 cq = covered.outline_centroid();

    Vec3 n = normalized(cross(b - a, cq - a));
    if (dot(n, covered.outward_ref) < 0.0) {
        n = -n;
        std::swap(a, b);
    }
    Vec3 e = normalized(b - a);
    double len = norm(b - a);
    Vec3 d = cq - a;
    d = d - e * dot(d, e);
    d = d - n * dot(d, n);
    d = normalized(d);

    auto to2 = [&](const Vec3& p) -> std::array<double, 2> {
        Vec3 v = p - a;
        return {dot(v, e), dot(v, d)};
    };

    if (2.0 * margin >= len) throw Error(Errc::WingOverflow, "margin eats the attachment edge");
    Poly2 poly{{margin, 0.0}, {len - margin, 0.0}, {len - margin, w}, {margin, w}};
    Poly2 foot;
    foot.reserve(nq);
    for (const Vec3& p : covered.outline) foot.push_back(to2(p));
    auto c2 = to2(cq);
    for (std::size_t i = 0; i < nq && poly.size() >= 3; ++i) {
        if (static_cast<int>(i) == be.covered_edge) continue;  // attachment edge stays
        const auto& fa = foot[i];
        const auto& fb = foot[(i + 1) % nq];
        double ex = fb[0] - fa[0], ey = fb[1] - fa[1];
        double ln = std::sqrt(ex * ex + ey * ey);
        std::array<double, 2> nrm{-ey / ln, ex / ln};
        if (nrm[0] * (c2[0] - fa[0]) + nrm[1] * (c2[1] - fa[1]) < 0) nrm = {-nrm[0], -nrm[1]};
        // inward inset by margin; clip keeps the centroid side
        std::array<double, 2> base{fa[0] + nrm[0] * margin, fa[1] + nrm[1] * margin};
        poly = poly2_clip_halfplane(poly, base, {-nrm[0], -nrm[1]});
    }
    if (poly.size() < 3) return std::nullopt;
    detail::merge_short_edges(poly, 1e-2);
    double area = std::abs(poly2_area_signed(poly));
    double full = w * (len - 2.0 * margin);
    if (area < 0.10 * full)
        throw Error(Errc::WingOverflow, "wing width exceeds the available footprint depth");

    std::vector<Vec3> verts;
    verts.reserve(poly.size());
    for (const auto& p : poly) verts.push_back(a + e * p[0] + d * p[1] + n * delta);
    detail::PendingWing pw;
    pw.cover_id = cover.id;
    pw.covered_id = covered.id;
    pw.attach_mid = (a + b) * 0.5 + n * delta;
    pw.facet = make_facet(std::move(verts), n, FacetTag::Wing, be.cover_edge);
    return pw;
}

// Attach wings per the relation. Two wings over the same covered face can
// contest the corner between adjacent covered edges (the non-planar pentagon
// tilts their planes against each other); such pairs are split along their
// planes' intersection line so they meet without crossing.
inline void attach_wings(std::vector<Tile>& tiles, const BlockingRelation& rel, double w,
                         double delta, double margin) {
    if (w <= 0.0) throw Error(Errc::InputError, "wing width must be positive");
    if (delta <= 0.0 || delta >= w)
        throw Error(Errc::ClearanceTooLarge, "clearance must satisfy 0 < delta < w");
    if (margin < 0.0) throw Error(Errc::InputError, "margin must be non-negative");
    auto by_id = [&](int id) -> Tile& {
        for (Tile& t : tiles)
            if (t.id == id) return t;
        throw Error(Errc::InputError, "relation references unknown tile");
    };

    std::vector<detail::PendingWing> pending;
    for (const BlockingEdge& be : rel.edges) {
        const Tile& p = by_id(be.cover_tile);
        const Tile& q = by_id(be.covered_tile);
        if (auto pw = make_wing(p, q, be, w, delta, margin)) pending.push_back(std::move(*pw));
    }

    // trim the overhang where the covered face's non-planar surface rises
    // through the wing plane
    for (detail::PendingWing& pw : pending) {
        const Tile& q = by_id(pw.covered_id);
        for (int pass = 0; pass < 8; ++pass) {
            bool clipped = false;
            for (const ConvexFacet& body : q.facets) {
                if (body.tag != FacetTag::Body) continue;
                if (facet_facet_classify(pw.facet, body) != FacetRelation::Crossing) continue;
                Vec3 point, dir;
                if (!detail::plane_plane_line(pw.facet.plane, body.plane,
                                              facet_centroid(pw.facet), point, dir))
                    continue;
                if (!detail::clip_wing_by_line(pw.facet, point, dir, pw.attach_mid, 0.005))
                    throw Error(Errc::WingOverflow, "wing vanished while clearing the face body");
                clipped = true;
            }
            if (!clipped) break;
            if (pass == 7)
                throw Error(Errc::WingOverflow, "wing cannot clear the covered face body");
        }
    }

    // split crossing wing pairs along their planes' intersection line
    for (std::size_t i = 0; i < pending.size(); ++i) {
        for (std::size_t j = i + 1; j < pending.size(); ++j) {
            detail::PendingWing& wa = pending[i];
            detail::PendingWing& wb = pending[j];
            if (!facet_bounds(wa.facet).overlaps(facet_bounds(wb.facet), kTol)) continue;
            if (facet_facet_classify(wa.facet, wb.facet) != FacetRelation::Crossing) continue;
            Vec3 point, dir;
            Vec3 mid = (facet_centroid(wa.facet) + facet_centroid(wb.facet)) * 0.5;
            if (!detail::plane_plane_line(wa.facet.plane, wb.facet.plane, mid, point, dir))
                continue;
            bool oka = detail::clip_wing_by_line(wa.facet, point, dir, wa.attach_mid, 0.0025);
            bool okb = detail::clip_wing_by_line(wb.facet, point, dir, wb.attach_mid, 0.0025);
            if (!oka || !okb)
                throw Error(Errc::WingOverflow, "wing conflict clip removed a wing");
        }
    }

    for (detail::PendingWing& pw : pending) by_id(pw.cover_id).facets.push_back(std::move(pw.facet));
}

}  // namespace winglock
