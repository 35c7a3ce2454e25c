#pragma once

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "winglock/build.hpp"

namespace winglock {

// Canonical number formatting: shortest text that round-trips a double.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline const int kSceneSchemaVersion = 1;

namespace detail {

inline std::string flips_to_string(unsigned flips) {
    if (flips == 0) return "-";
    std::string s;
    for (RelationFamily f : {RelationFamily::LowerLower, RelationFamily::UpperUpper,
                             RelationFamily::UpperLower, RelationFamily::LowerUpper,
                             RelationFamily::Rim}) {
        if (flips & static_cast<unsigned>(f)) {
            if (!s.empty()) s += ",";
            s += to_string(f);
        }
    }
    return s;
}

}  // namespace detail

// Human-diffable text scene; the canonical form round-trips bit-exactly.
inline std::string serialize_scene(const Assembly& a) {
    std::ostringstream os;
    os << "winglock scene " << kSceneSchemaVersion << "\n";
    os << "kind " << to_string(a.params.kind) << "\n";
    os << "count " << a.params.count << "\n";
    os << "n " << a.params.n << "\n";
    os << "wing " << fmt_double(a.params.wing) << "\n";
    os << "clearance " << fmt_double(a.params.clearance) << "\n";
    os << "margin " << fmt_double(a.params.margin) << "\n";
    os << "decagon " << (a.params.decagon ? 1 : 0) << "\n";
    os << "flips " << detail::flips_to_string(a.params.relation_flips) << "\n";
    os << "fixed " << a.fixed_tiles.size();
    for (int id : a.fixed_tiles) os << " " << id;
    os << "\n";
    os << "tiles " << a.tiles.size() << "\n";
    for (const Tile& t : a.tiles) {
        os << "tile " << t.id << " deca " << t.deca << " role " << to_string(t.role) << " orbit "
           << t.orbit << " defect " << fmt_double(t.planarity_defect) << "\n";
        os << "outref " << fmt_double(t.outward_ref.x) << " " << fmt_double(t.outward_ref.y)
           << " " << fmt_double(t.outward_ref.z) << "\n";
        os << "outline " << t.outline.size();
        for (const Vec3& v : t.outline)
            os << " " << fmt_double(v.x) << " " << fmt_double(v.y) << " " << fmt_double(v.z);
        os << "\n";
        for (const ConvexFacet& f : t.facets) {
            os << "facet " << (f.tag == FacetTag::Wing ? "wing" : "body") << " " << f.wing_edge
               << " " << f.vertices.size();
            for (const Vec3& v : f.vertices)
                os << " " << fmt_double(v.x) << " " << fmt_double(v.y) << " " << fmt_double(v.z);
            os << "\n";
        }
    }
    os << "end\n";
    return os.str();
}

// FNV-1a 64 of the canonical scene text.
inline std::string scene_digest(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace detail {

struct SceneLexer {
    std::istringstream in;
    std::string line;
    int lineno = 0;

    explicit SceneLexer(const std::string& text) : in(text) {}

    bool next_line(std::vector<std::string>& tokens) {
        tokens.clear();
        while (std::getline(in, line)) {
            ++lineno;
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) tokens.push_back(tok);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg, int col = 1) const {
        throw ParseError(lineno, col, msg);
    }
};

inline double parse_num(SceneLexer& lx, const std::string& tok, int col) {
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size()) lx.fail("malformed number '" + tok + "'", col);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        lx.fail("malformed number '" + tok + "'", col);
    }
}

inline int parse_int(SceneLexer& lx, const std::string& tok, int col) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(tok, &pos);
        if (pos != tok.size()) lx.fail("malformed integer '" + tok + "'", col);
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        lx.fail("malformed integer '" + tok + "'", col);
    }
}

}  // namespace detail

inline Assembly parse_scene(const std::string& text) {
    detail::SceneLexer lx(text);
    std::vector<std::string> t;

    if (!lx.next_line(t) || t.size() != 3 || t[0] != "winglock" || t[1] != "scene")
        lx.fail("expected header 'winglock scene <version>'");
    if (detail::parse_int(lx, t[2], 3) != kSceneSchemaVersion)
        throw Error(Errc::SchemaVersionMismatch, "scene version " + t[2] + " unsupported");

    Assembly a;
    long declared_tiles = -1;
    bool saw_end = false;
    while (lx.next_line(t)) {
        const std::string& key = t[0];
        if (key == "kind") {
            if (t.size() != 2) lx.fail("kind expects one value");
            if (t[1] == "chain") a.params.kind = BuildKind::Chain;
            else if (t[1] == "necklace") a.params.kind = BuildKind::Necklace;
            else if (t[1] == "custom") a.params.kind = BuildKind::Custom;
            else lx.fail("unknown kind '" + t[1] + "'", 2);
        } else if (key == "count") {
            a.params.count = detail::parse_int(lx, t.at(1), 2);
        } else if (key == "n") {
            a.params.n = detail::parse_int(lx, t.at(1), 2);
        } else if (key == "wing") {
            a.params.wing = detail::parse_num(lx, t.at(1), 2);
        } else if (key == "clearance") {
            a.params.clearance = detail::parse_num(lx, t.at(1), 2);
        } else if (key == "margin") {
            a.params.margin = detail::parse_num(lx, t.at(1), 2);
        } else if (key == "decagon") {
            a.params.decagon = detail::parse_int(lx, t.at(1), 2) != 0;
        } else if (key == "flips") {
            a.params.relation_flips = 0;
            if (t.size() != 2) lx.fail("flips expects one value");
            if (t[1] != "-") {
                std::istringstream fs(t[1]);
                std::string name;
                while (std::getline(fs, name, ',')) {
                    auto f = relation_family_from(name);
                    if (!f) lx.fail("unknown relation family '" + name + "'", 2);
                    a.params.relation_flips |= static_cast<unsigned>(*f);
                }
            }
        } else if (key == "fixed") {
            int cnt = detail::parse_int(lx, t.at(1), 2);
            if (static_cast<int>(t.size()) != cnt + 2) lx.fail("fixed count mismatch");
            for (int i = 0; i < cnt; ++i)
                a.fixed_tiles.push_back(detail::parse_int(lx, t[static_cast<std::size_t>(i + 2)], i + 3));
        } else if (key == "tiles") {
            declared_tiles = detail::parse_int(lx, t.at(1), 2);
        } else if (key == "tile") {
            if (t.size() != 10 || t[2] != "deca" || t[4] != "role" || t[6] != "orbit" ||
                t[8] != "defect")
                lx.fail("malformed tile header");
            Tile tile;
            tile.id = detail::parse_int(lx, t[1], 2);
            tile.deca = detail::parse_int(lx, t[3], 4);
            if (t[5] == "L") tile.role = TileRole::LowerBelt;
            else if (t[5] == "U") tile.role = TileRole::UpperBelt;
            else if (t[5] == "D") tile.role = TileRole::Decagon;
            else lx.fail("unknown role '" + t[5] + "'", 6);
            tile.orbit = detail::parse_int(lx, t[7], 8);
            tile.planarity_defect = detail::parse_num(lx, t[9], 10);

            if (!lx.next_line(t) || t[0] != "outref" || t.size() != 4)
                lx.fail("tile " + std::to_string(tile.id) + ": expected outref");
            tile.outward_ref = {detail::parse_num(lx, t[1], 2), detail::parse_num(lx, t[2], 3),
                                detail::parse_num(lx, t[3], 4)};

            if (!lx.next_line(t) || t[0] != "outline" || t.size() < 2)
                lx.fail("tile " + std::to_string(tile.id) + ": expected outline");
            int nv = detail::parse_int(lx, t[1], 2);
            if (nv < 3)
                lx.fail("tile " + std::to_string(tile.id) + ": outline needs >= 3 vertices");
            if (static_cast<int>(t.size()) != 2 + 3 * nv)
                lx.fail("tile " + std::to_string(tile.id) + ": outline coordinate count mismatch");
            for (int i = 0; i < nv; ++i)
                tile.outline.push_back({detail::parse_num(lx, t[static_cast<std::size_t>(2 + 3 * i)], 0),
                                        detail::parse_num(lx, t[static_cast<std::size_t>(3 + 3 * i)], 0),
                                        detail::parse_num(lx, t[static_cast<std::size_t>(4 + 3 * i)], 0)});

            // facets until the next "tile"/"end": peek by buffering
            while (true) {
                std::streampos pos = lx.in.tellg();
                int saved_line = lx.lineno;
                if (!lx.next_line(t)) lx.fail("unexpected end of scene inside tile");
                if (t[0] != "facet") {
                    // rewind
                    lx.in.clear();
                    lx.in.seekg(pos);
                    lx.lineno = saved_line;
                    break;
                }
                if (t.size() < 4) lx.fail("malformed facet line");
                FacetTag tag;
                if (t[1] == "body") tag = FacetTag::Body;
                else if (t[1] == "wing") tag = FacetTag::Wing;
                else lx.fail("unknown facet tag '" + t[1] + "'", 2);
                int wing_edge = detail::parse_int(lx, t[2], 3);
                int fam = detail::parse_int(lx, t[3], 4);
                if (fam < 3)
                    lx.fail("tile " + std::to_string(tile.id) + ": facet needs >= 3 vertices");
                if (static_cast<int>(t.size()) != 4 + 3 * fam)
                    lx.fail("tile " + std::to_string(tile.id) + ": facet coordinate count mismatch");
                std::vector<Vec3> verts;
                for (int i = 0; i < fam; ++i)
                    verts.push_back({detail::parse_num(lx, t[static_cast<std::size_t>(4 + 3 * i)], 0),
                                     detail::parse_num(lx, t[static_cast<std::size_t>(5 + 3 * i)], 0),
                                     detail::parse_num(lx, t[static_cast<std::size_t>(6 + 3 * i)], 0)});
                // orientation comes from the stored winding
                Vec3 c{};
                for (const Vec3& v : verts) c += v;
                c = c / static_cast<double>(verts.size());
                Vec3 n{};
                for (std::size_t i = 0; i < verts.size(); ++i)
                    n += cross(verts[i] - c, verts[(i + 1) % verts.size()] - c);
                tile.facets.push_back(make_facet(std::move(verts), n, tag, wing_edge));
            }
            a.tiles.push_back(std::move(tile));
        } else if (key == "end") {
            saw_end = true;
            break;
        } else {
            lx.fail("unknown field '" + key + "'");
        }
    }
    if (!saw_end) lx.fail("missing 'end'");
    if (declared_tiles < 0) lx.fail("missing 'tiles' count");
    if (a.tiles.empty()) lx.fail("no tiles");
    if (declared_tiles != static_cast<long>(a.tiles.size())) lx.fail("tile count mismatch");
    return a;
}

}  // namespace winglock
