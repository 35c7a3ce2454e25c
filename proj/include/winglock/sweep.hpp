#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "winglock/classify.hpp"

namespace winglock {

// t in [0,1] -> rigid motion; path(0) must be the identity.
using MotionPath = std::function<RigidMotion(double)>;

struct SweptHit {
    double t = 1.0;
    int moving_index = -1;
    int obstacle_index = -1;
};

namespace detail {

// Inradius-style feature size, robust against short clip edges.
inline double facet_feature_size(const ConvexFacet& f) {
    Vec3 n{};
    Vec3 c = facet_centroid(f);
    double per = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Vec3& a = f.vertices[i];
        const Vec3& b = f.vertices[(i + 1) % f.size()];
        n += cross(a - c, b - c);
        per += norm(b - a);
    }
    double area = 0.5 * norm(n);
    return per > 0.0 ? 2.0 * area / per : 0.0;
}

inline double bisect_zero(const std::function<double(double)>& f, double t0, double t1,
                          double f0, double f1, int iters = 60) {
    // f(t0) >= 0 >= f(t1) (or the reverse); returns the crossing parameter
    bool descending = f0 >= f1;
    for (int i = 0; i < iters; ++i) {
        double tm = 0.5 * (t0 + t1);
        double fm = f(tm);
        if ((fm >= 0.0) == descending)
            t0 = tm;
        else
            t1 = tm;
    }
    return 0.5 * (t0 + t1);
}

struct MovingFacetState {
    const ConvexFacet* facet;
    Vec3 plane_point;  // a point of the facet, to track the moving plane
};

}  // namespace detail

// First-contact sweep. Each step is tested three ways: the moving facet's
// vertex chords against the obstacle plane-and-footprint, the obstacle's
// vertices against the moving facet's swept plane-and-footprint (these two
// catch parallel-gap closures and prevent tunneling), and a transversal
// crossing test at the step end. Contact times are refined inside the step,
// so the returned t is accurate well below one step width.
//
// Throws StepTooCoarse when a step displaces any moving vertex by more than
// half the smallest feature size among the participating facets.
inline std::optional<SweptHit> swept_first_hit(const std::vector<ConvexFacet>& moving,
                                               const MotionPath& path,
                                               const std::vector<ConvexFacet>& obstacles,
                                               int steps, double tol = kTol) {
    if (steps < 2) throw Error(Errc::InputError, "steps must be >= 2");
    if (obstacles.empty() || moving.empty()) return std::nullopt;

    double min_feature = 1e300;
    for (const ConvexFacet& f : moving) min_feature = std::min(min_feature, detail::facet_feature_size(f));
    for (const ConvexFacet& f : obstacles) min_feature = std::min(min_feature, detail::facet_feature_size(f));

    // swept bounds of all moving facets for a broad-phase pair cull
    Aabb swept;
    std::vector<std::vector<Vec3>> pos0(moving.size());
    for (std::size_t i = 0; i < moving.size(); ++i) {
        pos0[i] = moving[i].vertices;
        for (const Vec3& v : moving[i].vertices) swept.expand(v);
    }
    for (int s = 1; s <= steps; ++s) {
        RigidMotion m = path(static_cast<double>(s) / steps);
        for (const std::vector<Vec3>& vs : pos0)
            for (const Vec3& v : vs) swept.expand(m.apply(v));
    }

    struct Pair {
        int mi, oi;
        Poly2 opoly;         // obstacle footprint in its own frame
        PlaneFrame oframe;
    };
    std::vector<Pair> pairs;
    std::vector<Aabb> obounds(obstacles.size());
    for (std::size_t oi = 0; oi < obstacles.size(); ++oi) obounds[oi] = facet_bounds(obstacles[oi]);
    for (std::size_t mi = 0; mi < moving.size(); ++mi) {
        Aabb mb;  // this facet's swept bounds
        for (int s = 0; s <= steps; ++s) {
            RigidMotion m = path(static_cast<double>(s) / steps);
            for (const Vec3& v : pos0[mi]) mb.expand(m.apply(v));
        }
        for (std::size_t oi = 0; oi < obstacles.size(); ++oi) {
            if (!mb.overlaps(obounds[oi], 10 * tol)) continue;
            PlaneFrame fr = facet_frame(obstacles[oi]);
            pairs.push_back({static_cast<int>(mi), static_cast<int>(oi),
                             facet_project(obstacles[oi], fr), fr});
        }
    }
    if (pairs.empty()) return std::nullopt;

    auto transform_facet = [&](const ConvexFacet& f, const RigidMotion& m) {
        ConvexFacet g = f;
        for (Vec3& v : g.vertices) v = m.apply(v);
        g.plane.normal = m.rotation * f.plane.normal;
        g.plane.offset = dot(g.plane.normal, m.apply(f.vertices.front()));
        return g;
    };

    std::optional<SweptHit> best;
    for (int s = 0; s < steps; ++s) {
        double t0 = static_cast<double>(s) / steps;
        double t1 = static_cast<double>(s + 1) / steps;
        RigidMotion m0 = path(t0), m1 = path(t1);

        // step-size guard
        double disp = 0.0;
        for (const std::vector<Vec3>& vs : pos0)
            for (const Vec3& v : vs) disp = std::max(disp, norm(m1.apply(v) - m0.apply(v)));
        if (disp > 0.5 * min_feature)
            throw Error(Errc::StepTooCoarse, "per-step displacement exceeds half the feature size");

        for (const Pair& pr : pairs) {
            const ConvexFacet& F = moving[static_cast<std::size_t>(pr.mi)];
            const ConvexFacet& O = obstacles[static_cast<std::size_t>(pr.oi)];
            double cand = 2.0;

            // (a) moving vertices through the obstacle plane
            for (const Vec3& v0 : F.vertices) {
                double d0 = O.plane.signed_distance(m0.apply(v0));
                double d1 = O.plane.signed_distance(m1.apply(v0));
                bool down = d0 > -tol && d1 < -tol && (d0 - d1) > tol;
                bool up = d0 < tol && d1 > tol && (d1 - d0) > tol;
                if (!down && !up) continue;
                auto dist = [&](double t) { return O.plane.signed_distance(path(t).apply(v0)); };
                double tc = detail::bisect_zero(dist, t0, t1, d0, d1);
                Vec3 p = path(tc).apply(v0);
                if (poly2_inside_margin(pr.oframe.project(p), pr.opoly) > tol)
                    cand = std::min(cand, tc);
            }

            // (b) obstacle vertices through the moving facet's plane
            Vec3 fp0 = F.vertices.front();
            const Vec3 fn0 = F.plane.normal;
            auto moving_dist = [&](const Vec3& o, const RigidMotion& m) {
                Vec3 n = m.rotation * fn0;
                return dot(n, o - m.apply(fp0));
            };
            for (const Vec3& o : O.vertices) {
                double e0 = moving_dist(o, m0);
                double e1 = moving_dist(o, m1);
                bool cross01 = (e0 > -tol && e1 < -tol && (e0 - e1) > tol) ||
                               (e0 < tol && e1 > tol && (e1 - e0) > tol);
                if (!cross01) continue;
                auto dist = [&](double t) { return moving_dist(o, path(t)); };
                double tc = detail::bisect_zero(dist, t0, t1, e0, e1);
                ConvexFacet Ft = transform_facet(F, path(tc));
                PlaneFrame fr = facet_frame(Ft);
                if (poly2_inside_margin(fr.project(o), facet_project(Ft, fr)) > tol)
                    cand = std::min(cand, tc);
            }

            // (c) transversal crossing at the step end, refined backwards
            ConvexFacet F1 = transform_facet(F, m1);
            if (detail::transversal_crossing(F1, O, tol)) {
                double lo = t0, hi = t1;
                for (int it = 0; it < 40; ++it) {
                    double tm = 0.5 * (lo + hi);
                    ConvexFacet Fm = transform_facet(F, path(tm));
                    if (detail::transversal_crossing(Fm, O, tol))
                        hi = tm;
                    else
                        lo = tm;
                }
                cand = std::min(cand, hi);
            }

            if (cand <= 1.0 && (!best || cand < best->t)) best = SweptHit{cand, pr.mi, pr.oi};
        }
        if (best) return best;  // later steps cannot give earlier times
    }
    return best;
}

}  // namespace winglock
