#pragma once

#include <json.hpp>

#include "winglock/scene_io.hpp"
#include "winglock/suite.hpp"

namespace winglock {

using ordered_json = nlohmann::ordered_json;

// Report document: scene digest, per-tile verdicts, overall verdict,
// parameter echo and wall clock.
inline ordered_json report_document(const Assembly& a, const TheoremReport& rep,
                                    const std::string& digest, double wall_clock_ms) {
    ordered_json doc;
    doc["schema"] = 1;
    doc["scene_digest"] = digest;
    doc["kind"] = to_string(a.params.kind);
    doc["build_params"] = {{"count", a.params.count},
                           {"n", a.params.n},
                           {"wing", a.params.wing},
                           {"clearance", a.params.clearance},
                           {"margin", a.params.margin},
                           {"decagon", a.params.decagon},
                           {"flips", detail::flips_to_string(a.params.relation_flips)}};
    doc["verify_params"] = {{"eps_max", rep.params.eps_max},
                            {"steps", rep.params.steps},
                            {"n_onface", rep.params.n_onface},
                            {"delta_contact", rep.params.delta_contact},
                            {"tol", rep.params.tol}};
    doc["fixed_tiles"] = a.fixed_tiles;
    doc["interlocked"] = rep.interlocked;
    doc["wall_clock_ms"] = wall_clock_ms;

    ordered_json tiles = ordered_json::array();
    for (const TileVerdict& v : rep.tiles) {
        const Tile* t = a.find(v.tile);
        ordered_json jt;
        jt["id"] = v.tile;
        jt["label"] = t ? t->label() : "?";
        jt["verdict"] = v.block.blocked ? "blocked" : "free";
        if (v.block.witness)
            jt["witness"] = *v.block.witness;
        else
            jt["witness"] = nullptr;
        jt["free_play"] = v.block.free_play;
        jt["cone"] = {{"contacts", v.cone.contact_count}, {"trivial", v.cone.cone_trivial}};
        if (v.cone.has_witness)
            jt["cone"]["witness"] = {v.cone.witness.omega.x, v.cone.witness.omega.y,
                                     v.cone.witness.omega.z, v.cone.witness.vel.x,
                                     v.cone.witness.vel.y, v.cone.witness.vel.z};
        ordered_json samples = ordered_json::array();
        for (const SampleOutcome& oc : v.block.outcomes) {
            ordered_json js;
            js["label"] = oc.sample.label;
            if (oc.blocked_at)
                js["blocked_at"] = *oc.blocked_at;
            else
                js["blocked_at"] = nullptr;
            samples.push_back(std::move(js));
        }
        jt["samples"] = std::move(samples);
        tiles.push_back(std::move(jt));
    }
    doc["tiles"] = std::move(tiles);
    return doc;
}

}  // namespace winglock
