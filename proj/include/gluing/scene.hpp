#pragma once

// Scene files: one surface, or two surfaces glued along their v = 0 curve,
// plus the outputs to produce.

#include "gluing/glue.hpp"

#include "json.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gluing {

struct FrameSpec
{
    std::string e, nu, l;
};

struct SurfaceSpec
{
    std::string name;
    ParametricMap map;
    int orientation = 1;
    std::vector<SingularParam> normal_singular;
    std::optional<FrameSpec> frame;
};

/// The angle as printed in the source: a constant, or sin and cos as
/// functions of u.
struct StatedAngle
{
    std::string value;
    std::string sin, cos;
};

struct OutputSpec
{
    std::string kind;   // report, invariants_csv, mesh, oracle_csv
    std::string path;
    std::string surface;
    double a_lo = -1.0;
    double a_hi = 1.0;
    std::optional<Interval> t_range;
    int nt = 41;
    int na = 21;
    int oracle_samples = 21;
};

struct SceneConfig
{
    std::string name;
    Interval interval;
    int samples = 201;
    double tolerance = kZeroTolerance;
    std::vector<SingularParam> singular;
    std::vector<SurfaceSpec> surfaces;
    std::optional<StatedAngle> stated_angle;
    std::vector<OutputSpec> outputs;
};

/// ConfigError with the offending field; ParseError from expressions.
SceneConfig parse_config(const nlohmann::json& j);
SceneConfig load_config(const std::filesystem::path& path);

struct SceneSurface
{
    std::string name;
    int frame = 1;
    RulingKind kind = RulingKind::Nu;
    std::optional<DevelopableSurface> surface;
    std::string failure;
};

class Scene
{
  public:
    explicit Scene(SceneConfig config);

    const SceneConfig& config() const noexcept { return config_; }
    bool is_glue() const noexcept { return glue_.has_value(); }
    const std::optional<GlueScene>& glue() const noexcept { return glue_; }
    /// Frames in surface order, 1-based.
    const FramedCurve& frame(int i) const { return frames_.at(static_cast<std::size_t>(i - 1)); }
    int frame_count() const noexcept { return static_cast<int>(frames_.size()); }
    /// "explicit" or "extracted" per frame.
    const std::vector<std::string>& frame_sources() const noexcept { return sources_; }
    const std::vector<std::string>& notes() const noexcept { return notes_; }
    const std::vector<SceneSurface>& surfaces() const noexcept { return surfaces_; }
    const SceneSurface& surface(const std::string& name) const;

  private:
    SceneConfig config_;
    std::vector<FramedCurve> frames_;
    std::vector<std::string> sources_;
    std::vector<std::string> notes_;
    std::optional<GlueScene> glue_;
    std::vector<SceneSurface> surfaces_;
};

struct Analysis
{
    nlohmann::json report;
    GlueLabel labels;
    bool unresolved = false;
};

Analysis analyze(const Scene& scene);

void write_invariants_csv(const Scene& scene, int frame, std::ostream& os);
/// Wavefront OBJ of a developable (S_nu1, S_b2, S_nu, ...) or an input
/// surface (f1, f2) over the (t, a) grid.
void write_mesh_obj(const Scene& scene, const OutputSpec& out, std::ostream& os);

struct RunOptions
{
    std::optional<int> samples;
    std::optional<double> tolerance;
    std::optional<std::filesystem::path> out_dir;
};

/// 0 on success, 2 when a label is unresolved, 1 on errors (written to `err`).
int run(const std::filesystem::path& config_path, const RunOptions& options, std::ostream& err);

} // namespace gluing
