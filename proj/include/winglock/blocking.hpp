#pragma once

#include <optional>
#include <vector>

#include "winglock/tile.hpp"

namespace winglock {

// Orbit families of the directed cover relation ("a > b: face b is blocked by
// face a"). Each family can be flipped wholesale via the scene parameters.
enum class RelationFamily : unsigned {
    LowerLower = 1u << 0,  // L_s covers L_{s+1}   (edge P1_{s+1} - P2_{s+1})
    UpperUpper = 1u << 1,  // U_s covers U_{s+1}   (edge P4_{s+1} - P3_{s+1})
    UpperLower = 1u << 2,  // U_s covers L_s       (edge P3_s - P2_{s+1})
    LowerUpper = 1u << 3,  // L_s covers U_{s-1}   (edge P2_s - P3_s)
    Rim = 1u << 4,         // U_s of deca k covers the lower faces of deca k+1
};

inline const char* to_string(RelationFamily f) {
    switch (f) {
        case RelationFamily::LowerLower: return "LL";
        case RelationFamily::UpperUpper: return "UU";
        case RelationFamily::UpperLower: return "UL";
        case RelationFamily::LowerUpper: return "LU";
        case RelationFamily::Rim: return "RIM";
    }
    return "?";
}

inline std::optional<RelationFamily> relation_family_from(const std::string& s) {
    if (s == "LL") return RelationFamily::LowerLower;
    if (s == "UU") return RelationFamily::UpperUpper;
    if (s == "UL") return RelationFamily::UpperLower;
    if (s == "LU") return RelationFamily::LowerUpper;
    if (s == "RIM") return RelationFamily::Rim;
    return std::nullopt;
}

struct BlockingEdge {
    int cover_tile = -1;
    int covered_tile = -1;
    int cover_edge = -1;    // outline edge index on the covering tile
    int covered_edge = -1;  // outline edge index on the covered tile
    RelationFamily family = RelationFamily::LowerLower;
};

// Directed orientation on the face-adjacency graph, at most one direction per
// shared edge.
struct BlockingRelation {
    std::vector<BlockingEdge> edges;
};

namespace detail {

inline int outline_edge_index(const Tile& t, const Vec3& a, const Vec3& b, double tol = 1e-9) {
    std::size_t n = t.outline.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3& p = t.outline[i];
        const Vec3& q = t.outline[(i + 1) % n];
        if ((norm(p - a) < tol && norm(q - b) < tol) || (norm(p - b) < tol && norm(q - a) < tol))
            return static_cast<int>(i);
    }
    return -1;
}

// Shared outline edge between two face tiles (two coincident vertices).
inline bool shared_edge(const Tile& p, const Tile& q, Vec3& a, Vec3& b, double tol = 1e-9) {
    int found = 0;
    for (const Vec3& vp : p.outline) {
        for (const Vec3& vq : q.outline) {
            if (norm(vp - vq) < tol) {
                if (found == 0)
                    a = vp;
                else if (norm(vp - a) > tol)
                    b = vp;
                else
                    continue;
                ++found;
                break;
            }
        }
        if (found == 2) return true;
    }
    return false;
}

inline void add_relation_edge(BlockingRelation& rel, const std::vector<Tile>& tiles, int cover,
                              int covered, RelationFamily family, unsigned flips) {
    if (flips & static_cast<unsigned>(family)) std::swap(cover, covered);
    const Tile& p = tiles[static_cast<std::size_t>(cover)];
    const Tile& q = tiles[static_cast<std::size_t>(covered)];
    Vec3 a, b;
    if (!shared_edge(p, q, a, b)) throw Error(Errc::InputError, "relation pair shares no edge");
    BlockingEdge e;
    e.cover_tile = p.id;
    e.covered_tile = q.id;
    e.cover_edge = outline_edge_index(p, a, b);
    e.covered_edge = outline_edge_index(q, a, b);
    e.family = family;
    rel.edges.push_back(e);
}

}  // namespace detail

// The Z5-equivariant default orientation, including rim edges between
// consecutive decahedra (and the closing rim when the skeleton wraps).
// `tiles` must hold the belt faces of `count` decahedra in build order:
// tile index = (k-1)*10 + (role==U ? 5 : 0) + s.
inline BlockingRelation default_blocking_relation(const std::vector<Tile>& tiles, int count,
                                                  bool wrap = false, unsigned flips = 0) {
    auto lower = [&](int k, int s) { return (k - 1) * 10 + ((s % 5) + 5) % 5; };
    auto upper = [&](int k, int s) { return (k - 1) * 10 + 5 + ((s % 5) + 5) % 5; };
    BlockingRelation rel;
    for (int k = 1; k <= count; ++k) {
        for (int s = 0; s < 5; ++s) {
            detail::add_relation_edge(rel, tiles, lower(k, s), lower(k, s + 1),
                                      RelationFamily::LowerLower, flips);
            detail::add_relation_edge(rel, tiles, upper(k, s), upper(k, s + 1),
                                      RelationFamily::UpperUpper, flips);
            detail::add_relation_edge(rel, tiles, upper(k, s), lower(k, s),
                                      RelationFamily::UpperLower, flips);
            detail::add_relation_edge(rel, tiles, lower(k, s), upper(k, s - 1),
                                      RelationFamily::LowerUpper, flips);
        }
        int next = (k < count) ? k + 1 : (wrap ? 1 : 0);
        if (next == 0) continue;
        // rim: match by shared geometry (index alignment shifts with parity)
        for (int s = 0; s < 5; ++s) {
            const Tile& us = tiles[static_cast<std::size_t>(upper(k, s))];
            for (int t2 = 0; t2 < 5; ++t2) {
                const Tile& lt = tiles[static_cast<std::size_t>(lower(next, t2))];
                Vec3 a, b;
                if (detail::shared_edge(us, lt, a, b))
                    detail::add_relation_edge(rel, tiles, upper(k, s), lower(next, t2),
                                              RelationFamily::Rim, flips);
            }
        }
    }
    return rel;
}

}  // namespace winglock
