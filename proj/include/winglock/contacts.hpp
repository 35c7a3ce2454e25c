#pragma once

#include <vector>

#include "winglock/build.hpp"
#include "winglock/simplex.hpp"

namespace winglock {

// Discretized one-sided contact: a point on the static facet's plane with the
// normal oriented toward the moving tile's free side.
struct ContactPoint {
    Vec3 position;
    Vec3 normal;
    int moving_tile = -1;
    int static_tile = -1;
    double region_area = 0.0;
};

// Near-parallel facet pairs within delta_contact, discretized at the clipped
// overlap polygon's vertices and centroid.
inline std::vector<ContactPoint> find_contacts(const Assembly& a, int tile_id,
                                               double delta_contact,
                                               double angle_tol = 1e-3) {
    const Tile* mover = a.find(tile_id);
    if (!mover) throw Error(Errc::InputError, "unknown tile id");
    std::vector<ContactPoint> out;
    Aabb mb = mover->bounds();
    for (const Tile& other : a.tiles) {
        if (other.id == tile_id) continue;
        if (!mb.overlaps(other.bounds(), delta_contact * 4.0)) continue;
        for (const ConvexFacet& fs : other.facets) {
            PlaneFrame fr = facet_frame(fs);
            Poly2 foot = facet_project(fs, fr);
            for (const ConvexFacet& fm : mover->facets) {
                double cr = norm(cross(fm.plane.normal, fs.plane.normal));
                if (cr > angle_tol) continue;  // not parallel enough
                Poly2 proj;
                proj.reserve(fm.size());
                for (const Vec3& v : fm.vertices) proj.push_back(fr.project(v));
                Poly2 overlap = poly2_clip(foot, proj);
                if (overlap.size() < 3) continue;
                double area = std::abs(poly2_area_signed(overlap));
                if (area < kTol * kTol) continue;
                double cx = 0, cy = 0;
                for (const auto& p : overlap) { cx += p[0]; cy += p[1]; }
                cx /= static_cast<double>(overlap.size());
                cy /= static_cast<double>(overlap.size());
                double h = fm.plane.signed_distance(fr.lift(cx, cy));
                if (std::abs(h) > delta_contact) continue;
                // orient toward the side the mover occupies
                double side = fs.plane.signed_distance(facet_centroid(fm));
                Vec3 n = fs.plane.normal * (side >= 0.0 ? 1.0 : -1.0);
                auto emit = [&](double px, double py) {
                    ContactPoint c;
                    c.position = fr.lift(px, py);
                    c.normal = n;
                    c.moving_tile = tile_id;
                    c.static_tile = other.id;
                    c.region_area = area;
                    out.push_back(c);
                };
                for (const auto& p : overlap) emit(p[0], p[1]);
                emit(cx, cy);
            }
        }
    }
    return out;
}

struct FirstOrderReport {
    int tile = -1;
    int contact_count = 0;
    bool cone_trivial = false;
    bool has_witness = false;
    Twist witness;  // unit infinity-norm twist satisfying all contacts
};

// First-order twist cone: rows a_i . x >= 0 over x = (omega, vel) at `ref`,
// a_i = ((p_i - ref) x n_i, n_i). The cone is trivial iff the box-bounded
// maxima of all +-x_j vanish; decided by 12 LPs (substitution y = x + 1).
inline FirstOrderReport cone_trivial(const std::vector<ContactPoint>& contacts, const Vec3& ref,
                                     int tile_id = -1, double opt_tol = 1e-6) {
    FirstOrderReport rep;
    rep.tile = tile_id;
    rep.contact_count = static_cast<int>(contacts.size());

    std::vector<std::array<double, 6>> rows;
    rows.reserve(contacts.size());
    for (const ContactPoint& c : contacts) {
        Vec3 arm = c.position - ref;
        Vec3 moment = cross(arm, c.normal);
        rows.push_back({moment.x, moment.y, moment.z, c.normal.x, c.normal.y, c.normal.z});
    }

    // A y <= b over y = x + 1 in [0,2]^6: rows give -a.y <= -a.1, bounds y_j <= 2
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (const auto& r : rows) {
        std::vector<double> row(6);
        double s = 0.0;
        for (int j = 0; j < 6; ++j) {
            row[static_cast<std::size_t>(j)] = -r[static_cast<std::size_t>(j)];
            s += r[static_cast<std::size_t>(j)];
        }
        A.push_back(std::move(row));
        b.push_back(-s);
    }
    for (int j = 0; j < 6; ++j) {
        std::vector<double> row(6, 0.0);
        row[static_cast<std::size_t>(j)] = 1.0;
        A.push_back(std::move(row));
        b.push_back(2.0);
    }

    double best = 0.0;
    std::array<double, 6> best_x{};
    for (int j = 0; j < 6 * 2; ++j) {
        int var = j / 2;
        double sign = (j % 2 == 0) ? 1.0 : -1.0;
        std::vector<double> c(6, 0.0);
        c[static_cast<std::size_t>(var)] = sign;
        LpSolution sol = lp_maximize(A, b, c);
        if (sol.status != DenseSimplex::Status::Optimal)
            throw Error(Errc::SolverFailure, "cone LP did not reach an optimum");
        double opt = sol.value - sign;  // back to x coordinates
        if (opt > best) {
            best = opt;
            for (int k = 0; k < 6; ++k)
                best_x[static_cast<std::size_t>(k)] = sol.x[static_cast<std::size_t>(k)] - 1.0;
        }
    }

    rep.cone_trivial = best <= opt_tol;
    if (!rep.cone_trivial) {
        double mx = 0.0;
        for (double v : best_x) mx = std::max(mx, std::abs(v));
        if (mx > 0.0)
            for (double& v : best_x) v /= mx;
        rep.has_witness = true;
        rep.witness.omega = {best_x[0], best_x[1], best_x[2]};
        rep.witness.vel = {best_x[3], best_x[4], best_x[5]};
        rep.witness.ref_point = ref;
    }
    return rep;
}

}  // namespace winglock
