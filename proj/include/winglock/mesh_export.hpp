#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "winglock/scene_io.hpp"

namespace winglock {

// Wavefront OBJ: one named object per tile, triangulated facets, 1-based
// global vertex indexing, LF line endings.
inline std::string export_obj(const Assembly& a) {
    std::string out;
    long base = 0;
    for (const Tile& t : a.tiles) {
        out += "o tile_" + std::to_string(t.id) + "\n";
        for (const ConvexFacet& f : t.facets) {
            for (const Vec3& v : f.vertices)
                out += "v " + fmt_double(v.x) + " " + fmt_double(v.y) + " " + fmt_double(v.z) +
                       "\n";
            long k = static_cast<long>(f.vertices.size());
            for (long i = 1; i + 1 < k; ++i)
                out += "f " + std::to_string(base + 1) + " " + std::to_string(base + 1 + i) +
                       " " + std::to_string(base + 2 + i) + "\n";
            base += k;
        }
    }
    return out;
}

inline std::size_t triangle_count(const Assembly& a) {
    std::size_t n = 0;
    for (const Tile& t : a.tiles)
        for (const ConvexFacet& f : t.facets) n += f.vertices.size() - 2;
    return n;
}

// Binary little-endian STL; facet normals recomputed from the winding.
inline std::vector<std::uint8_t> export_stl(const Assembly& a) {
    std::vector<std::uint8_t> out;
    out.resize(80, 0);
    const char* tag = "winglock";
    std::memcpy(out.data(), tag, std::strlen(tag));

    auto push_u32 = [&](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xff));
    };
    auto push_f32 = [&](float v) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, 4);
        push_u32(bits);
    };

    push_u32(static_cast<std::uint32_t>(triangle_count(a)));
    for (const Tile& t : a.tiles) {
        for (const ConvexFacet& f : t.facets) {
            for (std::size_t i = 1; i + 1 < f.vertices.size(); ++i) {
                const Vec3& p0 = f.vertices[0];
                const Vec3& p1 = f.vertices[i];
                const Vec3& p2 = f.vertices[i + 1];
                Vec3 n = normalized(cross(p1 - p0, p2 - p0));
                push_f32(static_cast<float>(n.x));
                push_f32(static_cast<float>(n.y));
                push_f32(static_cast<float>(n.z));
                for (const Vec3* p : {&p0, &p1, &p2}) {
                    push_f32(static_cast<float>(p->x));
                    push_f32(static_cast<float>(p->y));
                    push_f32(static_cast<float>(p->z));
                }
                out.push_back(0);
                out.push_back(0);
            }
        }
    }
    return out;
}

}  // namespace winglock
