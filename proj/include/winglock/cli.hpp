#pragma once

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "winglock/mesh_export.hpp"
#include "winglock/report_io.hpp"

namespace winglock {
namespace cli {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::InputError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::InputError, "cannot write '" + path + "'");
    out << data;
}

inline unsigned parse_relation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InputError, "cannot open relation file '" + path + "'");
    unsigned flips = 0;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string op, fam;
        if (!(ls >> op)) continue;
        if (op[0] == '#') continue;
        if (op != "flip" || !(ls >> fam))
            throw Error(Errc::InputError, "relation file line " + std::to_string(lineno) +
                                              ": expected 'flip <LL|UU|UL|LU|RIM>'");
        auto f = relation_family_from(fam);
        if (!f)
            throw Error(Errc::InputError, "relation file line " + std::to_string(lineno) +
                                              ": unknown family '" + fam + "'");
        flips |= static_cast<unsigned>(*f);
    }
    return flips;
}

inline int run(int argc, const char* const* argv) {
    CLI::App app{"winged-decahedron assemblies: build, verify, export"};
    app.require_subcommand(1);

    // build
    auto* build = app.add_subcommand("build", "construct a chain or necklace scene");
    std::string build_kind;
    build->add_option("kind", build_kind, "chain|necklace")->required();
    int count = -1, nneck = 0;
    double wing = 0.4, clearance = 0.02, margin = 0.05;
    bool decagon = false;
    std::string relation_file, out_scene;
    build->add_option("--count", count, "number of decahedra");
    build->add_option("--n", nneck, "necklace parameter n");
    build->add_option("--wing", wing, "wing width w (0 disables wings)");
    build->add_option("--clearance", clearance, "wing clearance delta");
    build->add_option("--margin", margin, "wing edge margin m");
    build->add_flag("--decagon", decagon, "add decagon inserts (chains)");
    build->add_option("--relation", relation_file, "relation override file (flip lines)");
    build->add_option("-o,--output", out_scene, "scene file to write")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "interlocking verification of a scene");
    std::string verify_scene, fix_list, report_path;
    bool fix_ends = false;
    VerifyParams vp;
    verify->add_option("scene", verify_scene, "scene file")->required();
    verify->add_flag("--fix-ends", fix_ends, "fix the first and last decahedron");
    verify->add_option("--fix", fix_list, "comma-separated tile ids to fix");
    verify->add_option("--eps", vp.eps_max, "max sampled displacement");
    verify->add_option("--steps", vp.steps, "sweep steps");
    verify->add_option("--onface", vp.n_onface, "in-plane sample count");
    verify->add_option("--delta-contact", vp.delta_contact, "contact gap (default 2*clearance)");
    verify->add_option("--report", report_path, "report JSON to write")->required();

    // export
    auto* exp = app.add_subcommand("export", "write a mesh for external viewers");
    std::string export_scene, format, export_out;
    exp->add_option("scene", export_scene, "scene file")->required();
    exp->add_option("--format", format, "obj|stl")->required();
    exp->add_option("-o,--output", export_out, "mesh file to write")->required();

    // inspect
    auto* ins = app.add_subcommand("inspect", "print scene statistics and validation");
    std::string inspect_scene;
    ins->add_option("scene", inspect_scene, "scene file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            app.exit(e);
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 4;
    }

    try {
        if (build->parsed()) {
            BuildParams params;
            params.wing = wing;
            params.clearance = clearance;
            params.margin = margin;
            params.decagon = decagon;
            if (!relation_file.empty()) params.relation_flips = parse_relation_file(relation_file);
            Assembly a;
            if (build_kind == "chain") {
                if (count < 1) throw Error(Errc::InputError, "chain needs --count >= 1");
                a = build_chain(count, params, /*validate=*/false);
            } else if (build_kind == "necklace") {
                if (nneck < 3) throw Error(Errc::InputError, "necklace needs --n >= 3");
                a = build_necklace(nneck, count, params, /*validate=*/false);
            } else {
                throw Error(Errc::InputError, "unknown build kind '" + build_kind + "'");
            }
            std::string text = serialize_scene(a);
            write_file(out_scene, text);
            auto bad = overlap_pairs(a);
            std::cout << "built " << to_string(a.params.kind) << ": " << a.tiles.size()
                      << " tiles, digest " << scene_digest(text) << "\n";
            if (!bad.empty()) {
                std::cout << "overlap: " << bad.size() << " tile pairs cross or overlap\n";
                for (const auto& pr : bad) {
                    const Tile* p = a.find(pr.first);
                    const Tile* q = a.find(pr.second);
                    std::cout << "overlap " << pr.first << " " << pr.second << "  # "
                              << (p ? p->label() : "?") << " vs " << (q ? q->label() : "?")
                              << "\n";
                }
                return 3;
            }
            std::cout << "validation: no crossings\n";
            return 0;
        }

        if (verify->parsed()) {
            std::string text = read_file(verify_scene);
            Assembly a = parse_scene(text);
            if (fix_ends) {
                int kmin = a.tiles.front().deca, kmax = a.tiles.front().deca;
                for (const Tile& t : a.tiles) {
                    kmin = std::min(kmin, t.deca);
                    kmax = std::max(kmax, t.deca);
                }
                for (const Tile& t : a.tiles)
                    if (t.deca == kmin || t.deca == kmax) a.fixed_tiles.push_back(t.id);
            }
            if (!fix_list.empty()) {
                std::istringstream fs(fix_list);
                std::string id;
                while (std::getline(fs, id, ','))
                    a.fixed_tiles.push_back(std::stoi(id));
            }
            std::sort(a.fixed_tiles.begin(), a.fixed_tiles.end());
            a.fixed_tiles.erase(std::unique(a.fixed_tiles.begin(), a.fixed_tiles.end()),
                                a.fixed_tiles.end());

            auto t0 = std::chrono::steady_clock::now();
            TheoremReport rep = verify_assembly(a, vp);
            auto t1 = std::chrono::steady_clock::now();
            double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

            ordered_json doc = report_document(a, rep, scene_digest(text), ms);
            write_file(report_path, doc.dump(1) + "\n");

            int free_count = 0;
            for (const TileVerdict& v : rep.tiles)
                if (!v.block.blocked) ++free_count;
            std::cout << "verified " << rep.tiles.size() << " tiles: "
                      << (rep.tiles.size() - static_cast<std::size_t>(free_count)) << " blocked, "
                      << free_count << " free\n";
            for (const TileVerdict& v : rep.tiles) {
                if (v.block.blocked) continue;
                const Tile* t = a.find(v.tile);
                std::cout << "free tile " << v.tile << " (" << (t ? t->label() : "?")
                          << ") witness " << v.block.witness.value_or("?") << "\n";
            }
            std::cout << (rep.interlocked ? "verdict: interlocked" : "verdict: movable tiles found")
                      << "\n";
            return rep.interlocked ? 0 : 2;
        }

        if (exp->parsed()) {
            Assembly a = parse_scene(read_file(export_scene));
            if (format == "obj") {
                write_file(export_out, export_obj(a));
            } else if (format == "stl") {
                auto bytes = export_stl(a);
                std::ofstream out(export_out, std::ios::binary);
                if (!out) throw Error(Errc::InputError, "cannot write '" + export_out + "'");
                out.write(reinterpret_cast<const char*>(bytes.data()),
                          static_cast<std::streamsize>(bytes.size()));
            } else {
                throw Error(Errc::InputError, "unknown format '" + format + "'");
            }
            std::cout << "exported " << format << " to " << export_out << "\n";
            return 0;
        }

        if (ins->parsed()) {
            std::string text = read_file(inspect_scene);
            Assembly a = parse_scene(text);
            std::size_t facets = 0, wings = 0;
            for (const Tile& t : a.tiles) {
                facets += t.facets.size();
                for (const ConvexFacet& f : t.facets)
                    if (f.tag == FacetTag::Wing) ++wings;
            }
            std::cout << "kind " << to_string(a.params.kind) << ", tiles " << a.tiles.size()
                      << ", facets " << facets << " (" << wings << " wings), digest "
                      << scene_digest(text) << "\n";
            double dmin = 1e300, dmax = 0.0;
            for (const Tile& t : a.tiles) {
                if (t.role == TileRole::Decagon) continue;
                dmin = std::min(dmin, t.planarity_defect);
                dmax = std::max(dmax, t.planarity_defect);
            }
            std::cout << "planarity defect: min " << dmin << ", max " << dmax << "\n";
            std::size_t contacts = 0;
            for (const Tile& t : a.tiles)
                contacts += find_contacts(a, t.id, 2.0 * a.params.clearance).size();
            std::cout << "contact points (delta_contact=2*clearance): " << contacts << "\n";
            auto bad = overlap_pairs(a);
            if (bad.empty()) {
                std::cout << "validation: no crossings\n";
            } else {
                std::cout << "validation: " << bad.size() << " overlapping tile pairs\n";
                for (const auto& pr : bad)
                    std::cout << "overlap " << pr.first << " " << pr.second << "\n";
            }
            return 0;
        }
    } catch (const BuildOverlapError& e) {
        std::cerr << e.what() << "\n";
        for (const auto& pr : e.pairs())
            std::cerr << "overlap " << pr.first << " " << pr.second << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 4;
}

}  // namespace cli
}  // namespace winglock
