#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "winglock/classify.hpp"
#include "winglock/wings.hpp"

namespace winglock {

// Pairs of tile ids whose facets cross (or overlap coplanarly with interior
// area) at build time. Sorted and unique; empty means the assembly is valid.
inline std::vector<std::pair<int, int>> overlap_pairs(const Assembly& a, double tol = kTol) {
    struct Item {
        int tile;
        const ConvexFacet* f;
        Aabb box;
    };
    std::vector<Item> items;
    for (const Tile& t : a.tiles)
        for (const ConvexFacet& f : t.facets) items.push_back({t.id, &f, facet_bounds(f)});
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) {
            if (items[i].tile == items[j].tile) continue;
            if (!items[i].box.overlaps(items[j].box, tol)) continue;
            FacetRelation r = facet_facet_classify(*items[i].f, *items[j].f, tol);
            if (r == FacetRelation::Crossing || r == FacetRelation::CoplanarOverlap) {
                int lo = std::min(items[i].tile, items[j].tile);
                int hi = std::max(items[i].tile, items[j].tile);
                out.emplace_back(lo, hi);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Horizontal cross-section of one decahedron's faces at height z: slice the
// fan triangles, chain the cut segments into the convex section loop.
inline std::vector<Vec3> decahedron_section(const DecahedronSpec& d, double z) {
    std::vector<Vec3> pts;
    Vec3 dc = d.centroid();
    auto slice_face = [&](const std::array<Vec3, 5>& verts) {
        Vec3 c{};
        for (const Vec3& v : verts) c += v;
        c = c / 5.0;
        for (int i = 0; i < 5; ++i) {
            const Vec3 tri[3] = {verts[static_cast<std::size_t>(i)],
                                 verts[static_cast<std::size_t>((i + 1) % 5)], c};
            for (int e = 0; e < 3; ++e) {
                const Vec3& p = tri[e];
                const Vec3& q = tri[(e + 1) % 3];
                double dp = p.z - z, dq = q.z - z;
                if ((dp > 0) != (dq > 0)) {
                    double t = dp / (dp - dq);
                    pts.push_back(p + (q - p) * t);
                }
            }
        }
    };
    for (int s = 0; s < 5; ++s) {
        slice_face(d.lower_face(s));
        slice_face(d.upper_face(s));
    }
    if (pts.empty()) throw Error(Errc::EmptySection, "no section at this height");
    // order by angle about the section centroid, drop duplicates
    Vec3 c{};
    for (const Vec3& p : pts) c += p;
    c = c / static_cast<double>(pts.size());
    c.z = z;
    (void)dc;
    std::sort(pts.begin(), pts.end(), [&](const Vec3& p, const Vec3& q) {
        return std::atan2(p.y - c.y, p.x - c.x) < std::atan2(q.y - c.y, q.x - c.x);
    });
    std::vector<Vec3> loop;
    for (const Vec3& p : pts)
        if (loop.empty() || norm(p - loop.back()) > 1e-9) loop.push_back(p);
    if (loop.size() >= 2 && norm(loop.front() - loop.back()) < 1e-9) loop.pop_back();
    if (loop.size() < 3) throw Error(Errc::EmptySection, "degenerate section");
    return loop;
}

inline double section_area(const DecahedronSpec& d, double z) {
    auto loop = decahedron_section(d, z);
    double s = 0.0;
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Vec3& p = loop[i];
        const Vec3& q = loop[(i + 1) % loop.size()];
        s += p.x * q.y - q.x * p.y;
    }
    return 0.5 * std::abs(s);
}

namespace detail {

// Golden-section maximum of f on (lo, hi) to the given x tolerance.
template <typename F>
double golden_max(F f, double lo, double hi, double xtol) {
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

// Drop vertices where the boundary barely turns; chords of a convex loop stay
// inside it, so the simplified polygon cannot stick out of the section.
inline std::vector<Vec3> merge_collinear(const std::vector<Vec3>& loop, double max_turn) {
    std::vector<Vec3> out = loop;
    bool changed = true;
    while (changed && out.size() > 3) {
        changed = false;
        for (std::size_t i = 0; i < out.size(); ++i) {
            const Vec3& prev = out[(i + out.size() - 1) % out.size()];
            const Vec3& cur = out[i];
            const Vec3& nxt = out[(i + 1) % out.size()];
            Vec3 u = normalized(cur - prev), v = normalized(nxt - cur);
            double turn = std::acos(std::clamp(dot(u, v), -1.0, 1.0));
            if (turn < max_turn) {
                out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return out;
}

}  // namespace detail

struct DecagonInsert {
    double z_star = 0.0;
    Tile tile;
};

// Largest horizontal cross-section, shrunk inward by the clearance, as one
// fan-triangulated tile. Chains only (sections are horizontal).
inline DecagonInsert build_decagon_insert(const DecahedronSpec& d, double delta,
                                          int tile_id = -1) {
    double z0 = d.rings[0].z, z1 = d.rings[3].z;
    double zs = detail::golden_max([&](double z) { return section_area(d, z); }, z0 + 1e-6,
                                   z1 - 1e-6, 1e-6);
    auto loop = decahedron_section(d, zs);
    loop = detail::merge_collinear(loop, 0.15);

    // inset each edge by delta
    Poly2 p2;
    for (const Vec3& p : loop) p2.push_back({p.x, p.y});
    double cx = 0, cy = 0;
    for (const auto& p : p2) { cx += p[0]; cy += p[1]; }
    cx /= static_cast<double>(p2.size());
    cy /= static_cast<double>(p2.size());
    Poly2 inset = p2;
    for (std::size_t i = 0; i < p2.size() && inset.size() >= 3; ++i) {
        const auto& a = p2[i];
        const auto& b = p2[(i + 1) % p2.size()];
        double ex = b[0] - a[0], ey = b[1] - a[1];
        double ln = std::sqrt(ex * ex + ey * ey);
        std::array<double, 2> nrm{-ey / ln, ex / ln};
        if (nrm[0] * (cx - a[0]) + nrm[1] * (cy - a[1]) < 0) nrm = {-nrm[0], -nrm[1]};
        std::array<double, 2> base{a[0] + nrm[0] * delta, a[1] + nrm[1] * delta};
        inset = poly2_clip_halfplane(inset, base, {-nrm[0], -nrm[1]});
    }
    if (inset.size() < 3) throw Error(Errc::EmptySection, "insert vanished under the clearance");

    Tile t;
    t.id = tile_id;
    t.deca = d.index;
    t.role = TileRole::Decagon;
    t.orbit = 0;
    for (const auto& p : inset) t.outline.push_back({p[0], p[1], zs});
    t.outward_ref = {0, 0, 0};  // not a belt face
    Vec3 c = t.outline_centroid();
    for (std::size_t i = 0; i < t.outline.size(); ++i) {
        std::vector<Vec3> tri{t.outline[i], t.outline[(i + 1) % t.outline.size()], c};
        t.facets.push_back(make_facet(std::move(tri), Vec3{0, 0, 1}, FacetTag::Body));
    }
    t.planarity_defect = 0.0;
    return {zs, std::move(t)};
}

namespace detail {

inline Assembly assemble(BuildParams params, const std::vector<DecahedronSpec>& decas,
                         bool wrap, bool validate) {
    Assembly a;
    a.params = params;
    int id = 0;
    for (const DecahedronSpec& d : decas) {
        Vec3 dc = d.centroid();
        for (int s = 0; s < 5; ++s)
            a.tiles.push_back(make_face_tile(id++, d.index, TileRole::LowerBelt, s,
                                             d.lower_face(s), dc));
        for (int s = 0; s < 5; ++s)
            a.tiles.push_back(make_face_tile(id++, d.index, TileRole::UpperBelt, s,
                                             d.upper_face(s), dc));
    }
    if (params.wing > 0.0) {
        BlockingRelation rel = default_blocking_relation(a.tiles, params.count, wrap,
                                                         params.relation_flips);
        attach_wings(a.tiles, rel, params.wing, params.clearance, params.margin);
    }
    if (params.decagon) {
        for (const DecahedronSpec& d : decas)
            a.tiles.push_back(build_decagon_insert(d, params.clearance, id++).tile);
    }
    if (validate) {
        auto bad = overlap_pairs(a);
        if (!bad.empty())
            throw BuildOverlapError("assembly has crossing tiles", std::move(bad));
    }
    return a;
}

}  // namespace detail

inline Assembly build_chain(int count, BuildParams params = {}, bool validate = true) {
    if (count < 1) throw Error(Errc::InputError, "chain needs count >= 1");
    params.kind = BuildKind::Chain;
    params.count = count;
    params.n = 0;
    std::vector<DecahedronSpec> decas;
    decas.reserve(static_cast<std::size_t>(count));
    for (int k = 1; k <= count; ++k) decas.push_back(build_decahedron(k, 3.0 * (k - 1)));
    return detail::assemble(params, decas, /*wrap=*/false, validate);
}

// count defaults to 2n (the full necklace, which wraps and closes on itself).
inline Assembly build_necklace(int n, int count = -1, BuildParams params = {},
                               bool validate = true) {
    if (n < 3) throw Error(Errc::InputError, "necklace needs n >= 3");
    if (count < 0) count = 2 * n;
    if (count < 1 || count > 2 * n)
        throw Error(Errc::InputError, "necklace count must be in [1, 2n]");
    if (params.decagon)
        throw Error(Errc::InputError, "decagon inserts are defined for chains only");
    params.kind = BuildKind::Necklace;
    params.count = count;
    params.n = n;
    std::vector<DecahedronSpec> decas;
    decas.reserve(static_cast<std::size_t>(count));
    for (int k = 1; k <= count; ++k) decas.push_back(necklace_decahedron(k, n));
    return detail::assemble(params, decas, /*wrap=*/count == 2 * n, validate);
}

}  // namespace winglock
