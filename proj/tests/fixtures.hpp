#pragma once

#include "gluing/scene.hpp"

#include <random>
#include <string>

namespace fixtures {

inline gluing::SceneConfig gallery(int n)
{
    return gluing::load_config(std::string(GALLERY_DIR) + "/example" + std::to_string(n) + ".json");
}

/// Frame extracted from surface `which` (1 or 2) of gallery example `n`.
inline gluing::FramedCurve extracted(int n, int which)
{
    const gluing::SceneConfig cfg = gallery(n);
    const gluing::SurfaceSpec& s = cfg.surfaces.at(static_cast<std::size_t>(which - 1));
    return gluing::frame_from_surface(s.map, s.orientation, cfg.interval, cfg.singular, s.normal_singular);
}

inline gluing::GlueScene glue(int n, int samples = 201)
{
    return gluing::make_glue(extracted(n, 1), extracted(n, 2), samples);
}

inline gluing::Vec3 vec(double x, double y, double z) { return {x, y, z}; }

inline std::mt19937& rng()
{
    static std::mt19937 gen(20261016);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

} // namespace fixtures
