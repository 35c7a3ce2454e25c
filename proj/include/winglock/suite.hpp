#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "winglock/contacts.hpp"
#include "winglock/sweep.hpp"

namespace winglock {

enum class SampleKind { OutwardTranslation, InwardTranslation, OnFace, EdgeRotation, NormalRotation };

struct MotionSample {
    SampleKind kind;
    std::string label;
    Twist generator;      // unit-normalized: |vel|=1 translations, |omega|=1 rotations
    double angle = 0.0;   // OnFace angle
    int edge = -1;        // EdgeRotation edge id
    int sense = 0;        // rotation sense
};

struct VerifyParams {
    double eps_max = 0.2;
    int steps = 20;
    int n_onface = 72;
    double delta_contact = -1.0;  // < 0: use 2 * build clearance
    double tol = kTol;
};

// The sampled motion set of Lemmas 2-5: both normal translations, an in-plane
// angle sweep, rotations about the five pentagon edges in both senses, and
// both rotations about the face normal. The in-plane frame is anchored to the
// tile's own first edge so reports are comparable across a belt orbit.
inline std::vector<MotionSample> motion_samples(const Tile& tile, int n_onface) {
    if (n_onface < 8) throw Error(Errc::InputError, "n_onface must be >= 8");
    std::vector<MotionSample> out;
    const Vec3 ref = tile.outward_ref;
    const Vec3 c = tile.outline_centroid();

    auto translation = [&](SampleKind k, const std::string& label, const Vec3& dir) {
        MotionSample s;
        s.kind = k;
        s.label = label;
        s.generator = Twist{{0, 0, 0}, normalized(dir), c};
        return s;
    };
    out.push_back(translation(SampleKind::OutwardTranslation, "outward", ref));
    out.push_back(translation(SampleKind::InwardTranslation, "inward", -ref));

    Vec3 anchor = (tile.outline[0] + tile.outline[1]) * 0.5 - c;
    Vec3 u1 = normalized(anchor - ref * dot(anchor, ref));
    Vec3 u2 = cross(ref, u1);
    for (int i = 0; i < n_onface; ++i) {
        double a = 2.0 * kPi * i / n_onface;
        MotionSample s = translation(SampleKind::OnFace, "onface_" + std::to_string(i),
                                     u1 * std::cos(a) + u2 * std::sin(a));
        s.angle = a;
        out.push_back(s);
    }

    for (int e = 0; e < static_cast<int>(tile.outline.size()); ++e) {
        Vec3 a = tile.outline[static_cast<std::size_t>(e)];
        Vec3 b = tile.outline[(static_cast<std::size_t>(e) + 1) % tile.outline.size()];
        Vec3 axis = normalized(b - a);
        for (int sense : {+1, -1}) {
            MotionSample s;
            s.kind = SampleKind::EdgeRotation;
            s.label = "edge_" + std::to_string(e) + (sense > 0 ? "_pos" : "_neg");
            s.generator = Twist{axis * static_cast<double>(sense), {0, 0, 0}, a};
            s.edge = e;
            s.sense = sense;
            out.push_back(s);
        }
    }
    for (int sense : {+1, -1}) {
        MotionSample s;
        s.kind = SampleKind::NormalRotation;
        s.label = std::string("normal_") + (sense > 0 ? "pos" : "neg");
        s.generator = Twist{ref * static_cast<double>(sense), {0, 0, 0}, c};
        s.sense = sense;
        out.push_back(s);
    }
    return out;
}

namespace detail {

inline double max_lever(const Tile& tile, const Vec3& point, const Vec3& axis_unit) {
    double r = 0.0;
    for (const ConvexFacet& f : tile.facets)
        for (const Vec3& v : f.vertices) r = std::max(r, norm(cross(axis_unit, v - point)));
    return r;
}

// Path of a unit-normalized sample scaled so the largest vertex displacement
// reaches eps_max at t = 1.
inline MotionPath sample_path(const Tile& tile, const MotionSample& s, double eps_max) {
    if (s.kind == SampleKind::OutwardTranslation || s.kind == SampleKind::InwardTranslation ||
        s.kind == SampleKind::OnFace) {
        Vec3 dir = s.generator.vel;
        return [dir, eps_max](double t) { return RigidMotion::translate(dir * (eps_max * t)); };
    }
    Vec3 axis = normalized(s.generator.omega);
    Vec3 point = s.generator.ref_point;
    double lever = std::max(max_lever(tile, point, axis), 1e-9);
    double theta_max = eps_max / lever;
    double sense = dot(s.generator.omega, axis) >= 0 ? 1.0 : -1.0;
    (void)sense;
    return [point, axis, theta_max](double t) {
        return RigidMotion::about_axis(point, axis, theta_max * t);
    };
}

}  // namespace detail

struct SampleOutcome {
    MotionSample sample;
    std::optional<double> blocked_at;  // path parameter in (0, 1]; empty = free
};

struct BlockReport {
    int tile = -1;
    std::vector<SampleOutcome> outcomes;
    bool blocked = false;                // verdict
    std::optional<std::string> witness;  // a free sample's label
    double free_play = 0.0;              // max over blocked samples of blocked_at * eps_max
};

inline std::vector<ConvexFacet> obstacles_for(const Assembly& a, int tile_id) {
    std::vector<ConvexFacet> out;
    for (const Tile& t : a.tiles) {
        if (t.id == tile_id) continue;
        for (const ConvexFacet& f : t.facets) out.push_back(f);
    }
    return out;
}

// Per-face finite-displacement check with every other tile held fixed.
inline BlockReport lemma_suite(const Assembly& a, int tile_id, const VerifyParams& p = {}) {
    const Tile* tile = a.find(tile_id);
    if (!tile) throw Error(Errc::InputError, "unknown tile id");
    for (int f : a.fixed_tiles)
        if (f == tile_id) throw Error(Errc::InputError, "tile is in the fixed set");
    if (p.eps_max <= a.params.clearance && a.params.wing > 0.0)
        throw Error(Errc::InputError, "eps_max must exceed the build clearance");

    std::vector<ConvexFacet> obstacles = obstacles_for(a, tile_id);
    BlockReport rep;
    rep.tile = tile_id;
    rep.blocked = true;
    for (const MotionSample& s : motion_samples(*tile, p.n_onface)) {
        MotionPath path = detail::sample_path(*tile, s, p.eps_max);
        auto hit = swept_first_hit(tile->facets, path, obstacles, p.steps, p.tol);
        SampleOutcome oc;
        oc.sample = s;
        if (hit) {
            oc.blocked_at = hit->t;
            rep.free_play = std::max(rep.free_play, hit->t * p.eps_max);
        } else {
            rep.blocked = false;
            if (!rep.witness) rep.witness = s.label;
        }
        rep.outcomes.push_back(std::move(oc));
    }
    return rep;
}

// Travel before first contact along one generator, or +infinity when free.
inline double free_play(const Assembly& a, int tile_id, const Twist& generator, double eps_max,
                        int steps, double tol = kTol) {
    const Tile* tile = a.find(tile_id);
    if (!tile) throw Error(Errc::InputError, "unknown tile id");
    std::vector<ConvexFacet> obstacles = obstacles_for(a, tile_id);
    if (obstacles.empty()) return std::numeric_limits<double>::infinity();

    MotionPath path;
    if (norm(generator.omega) < 1e-12) {
        Vec3 dir = normalized(generator.vel);
        path = [dir, eps_max](double t) { return RigidMotion::translate(dir * (eps_max * t)); };
    } else {
        // constant-twist screw: rotate about the instantaneous axis with pitch
        double w2 = norm2(generator.omega);
        Vec3 axis = normalized(generator.omega);
        Vec3 axis_point = generator.ref_point + cross(generator.omega, generator.vel) / w2;
        double pitch = dot(generator.omega, generator.vel) / w2;  // advance per radian
        double vmax = 1e-9;
        for (const ConvexFacet& f : tile->facets)
            for (const Vec3& v : f.vertices)
                vmax = std::max(vmax, norm(generator.velocity_at(v)));
        double theta_max = eps_max * norm(generator.omega) / vmax;
        path = [axis_point, axis, pitch, theta_max](double t) {
            double th = theta_max * t;
            RigidMotion rot = RigidMotion::about_axis(axis_point, axis, th);
            rot.translation += axis * (pitch * th);
            return rot;
        };
    }
    auto hit = swept_first_hit(tile->facets, path, obstacles, steps, tol);
    if (!hit) return std::numeric_limits<double>::infinity();
    return hit->t * eps_max;
}

struct TileVerdict {
    int tile = -1;
    BlockReport block;
    FirstOrderReport cone;
};

struct TheoremReport {
    VerifyParams params;
    std::vector<TileVerdict> tiles;  // non-fixed tiles, ascending id
    bool interlocked = false;
};

inline int thread_budget() {
    unsigned hw = std::thread::hardware_concurrency();
    int n = hw == 0 ? 1 : static_cast<int>(hw);
    if (const char* env = std::getenv("INTERLOCK_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

// Evaluates every non-fixed tile independently with all others held fixed.
// Tile-level parallelism; reports merge deterministically by tile id.
inline TheoremReport verify_assembly(const Assembly& a, VerifyParams p = {}) {
    if (p.delta_contact < 0.0) p.delta_contact = 2.0 * a.params.clearance;
    TheoremReport rep;
    rep.params = p;

    std::vector<int> ids;
    for (const Tile& t : a.tiles) {
        bool fixed = std::find(a.fixed_tiles.begin(), a.fixed_tiles.end(), t.id) !=
                     a.fixed_tiles.end();
        if (!fixed) ids.push_back(t.id);
    }
    std::sort(ids.begin(), ids.end());
    rep.tiles.resize(ids.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error = nullptr;
    std::mutex err_mu;
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= ids.size()) return;
            try {
                int id = ids[i];
                TileVerdict v;
                v.tile = id;
                v.block = lemma_suite(a, id, p);
                auto contacts = find_contacts(a, id, p.delta_contact);
                v.cone = cone_trivial(contacts, a.find(id)->outline_centroid(), id);
                rep.tiles[i] = std::move(v);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    int nthreads = std::min<int>(thread_budget(), std::max<std::size_t>(ids.size(), 1));
    std::vector<std::thread> pool;
    for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    rep.interlocked = true;  // vacuous when every tile is fixed
    for (const TileVerdict& v : rep.tiles)
        if (!v.block.blocked) rep.interlocked = false;
    return rep;
}

}  // namespace winglock
