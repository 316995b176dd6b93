#include "gluing/scene.hpp"

#include "gluing/errors.hpp"
#include "gluing/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace gluing {

using nlohmann::json;

namespace {

constexpr double kFrameDeviationNote = 1e-8;

std::string fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string short_fmt(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

[[noreturn]] void config_error(const std::string& where, const std::string& what)
{
    throw ConfigError(where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key)) config_error(where, std::string("missing field '") + key + "'");
    return j.at(key);
}

double number(const json& j, const std::string& where)
{
    if (!j.is_number()) config_error(where, "expected a number");
    return j.get<double>();
}

int integer(const json& j, const std::string& where)
{
    if (!j.is_number_integer()) config_error(where, "expected an integer");
    return j.get<int>();
}

std::string text(const json& j, const std::string& where)
{
    if (!j.is_string()) config_error(where, "expected a string");
    return j.get<std::string>();
}

template <class F>
auto located(const std::string& where, F&& parse)
{
    try {
        return parse();
    } catch (const ParseError& e) {
        throw ParseError(e.offset(), e.expected(), where + ": " + e.detail());
    }
}

std::pair<double, double> range(const json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 2) config_error(where, "expected [lo, hi]");
    const double lo = number(j[0], where + "[0]");
    const double hi = number(j[1], where + "[1]");
    if (!(lo < hi)) config_error(where, "empty range");
    return {lo, hi};
}

std::vector<SingularParam> singular_list(const json& j, const std::string& where)
{
    if (!j.is_array()) config_error(where, "expected a list");
    std::vector<SingularParam> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string w = where + "[" + std::to_string(i) + "]";
        SingularParam p;
        p.t0 = number(field(j[i], "t0", w), w + ".t0");
        p.multiplicity = integer(field(j[i], "multiplicity", w), w + ".multiplicity");
        if (p.multiplicity < 1) config_error(w + ".multiplicity", "must be at least 1");
        out.push_back(p);
    }
    return out;
}

ParametricMap curve_of(const ParametricMap& surface)
{
    // components with v = 0 substituted
    auto substitute = [](const Expr& e, auto& self) -> Expr {
        if (e->kind == NodeKind::Variable && e->var == Var::V) return literal(0.0);
        if (!e->lhs) return e;
        ExprNode n = *e;
        n.lhs = self(e->lhs, self);
        if (e->rhs) n.rhs = self(e->rhs, self);
        return std::make_shared<const ExprNode>(std::move(n));
    };
    ParametricMap m;
    for (std::size_t i = 0; i < 3; ++i) m.components[i] = substitute(surface.components[i], substitute);
    m.arity = Arity::Curve;
    return m;
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json residual_json(double max, double tol)
{
    return {{"max", max}, {"tol", tol}, {"pass", max <= tol}};
}

json diagnostics_json(const PointDiagnostics& d)
{
    return {{"rho", d.rho},
            {"rho_prime", d.rho_prime},
            {"eta_lambda", d.eta_lambda},
            {"eta_lambda_formula", std::isnan(d.eta_lambda_formula) ? json(nullptr) : json(d.eta_lambda_formula)},
            {"eta_eta_lambda", d.eta_eta_lambda},
            {"rank", d.rank}};
}

const char* point_phrase(PointLabel p)
{
    switch (p) {
    case PointLabel::CuspidalEdge: return "cuspidal edgy";
    case PointLabel::Swallowtail: return "swallowtailed";
    case PointLabel::Degenerate: return "degenerate";
    case PointLabel::Unresolved: return "unresolved";
    }
    return "?";
}

std::ofstream open_output(const std::filesystem::path& path)
{
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    return os;
}

} // namespace

SceneConfig parse_config(const json& j)
{
    if (!j.is_object()) config_error("config", "expected an object");
    SceneConfig c;
    c.name = j.contains("name") ? text(j["name"], "name") : "scene";
    const auto [lo, hi] = range(field(j, "interval", "config"), "interval");
    c.interval = {lo, hi};
    if (j.contains("samples")) c.samples = integer(j["samples"], "samples");
    if (c.samples < 3) config_error("samples", "must be at least 3");
    if (j.contains("tolerance")) c.tolerance = number(j["tolerance"], "tolerance");
    if (!(c.tolerance > 0.0)) config_error("tolerance", "must be positive");
    if (j.contains("singular_params")) c.singular = singular_list(j["singular_params"], "singular_params");

    const json& surfaces = field(j, "surfaces", "config");
    if (!surfaces.is_array() || surfaces.empty() || surfaces.size() > 2)
        config_error("surfaces", "expected one surface or two glued surfaces");
    for (std::size_t i = 0; i < surfaces.size(); ++i) {
        const std::string w = "surfaces[" + std::to_string(i) + "]";
        const json& s = surfaces[i];
        SurfaceSpec spec;
        spec.name = s.contains("name") ? text(s["name"], w + ".name") : "f" + std::to_string(i + 1);
        const json& expr = field(s, "expr", w);
        if (expr.is_string()) {
            spec.map = located(w + ".expr", [&] { return parse_map(expr.get<std::string>(), Arity::Surface); });
        } else if (expr.is_array() && expr.size() == 3) {
            std::array<std::string, 3> parts;
            for (std::size_t k = 0; k < 3; ++k) parts[k] = text(expr[k], w + ".expr[" + std::to_string(k) + "]");
            spec.map = located(w + ".expr", [&] { return make_map(parts, Arity::Surface); });
        } else {
            config_error(w + ".expr", "expected \"[x, y, z]\" or three strings");
        }
        if (s.contains("orientation")) spec.orientation = integer(s["orientation"], w + ".orientation");
        if (spec.orientation != 1 && spec.orientation != -1) config_error(w + ".orientation", "must be 1 or -1");
        if (s.contains("normal_singular_params"))
            spec.normal_singular = singular_list(s["normal_singular_params"], w + ".normal_singular_params");
        if (s.contains("frame")) {
            const json& f = s["frame"];
            FrameSpec fs;
            fs.e = text(field(f, "e", w + ".frame"), w + ".frame.e");
            fs.nu = text(field(f, "nu", w + ".frame"), w + ".frame.nu");
            fs.l = text(field(f, "l", w + ".frame"), w + ".frame.l");
            spec.frame = fs;
        }
        c.surfaces.push_back(std::move(spec));
    }

    if (j.contains("stated_angle")) {
        const json& a = j["stated_angle"];
        StatedAngle sa;
        if (a.is_string()) {
            sa.value = a.get<std::string>();
        } else {
            sa.sin = text(field(a, "sin", "stated_angle"), "stated_angle.sin");
            sa.cos = text(field(a, "cos", "stated_angle"), "stated_angle.cos");
        }
        c.stated_angle = sa;
    }

    if (j.contains("outputs")) {
        const json& outs = j["outputs"];
        if (!outs.is_array()) config_error("outputs", "expected a list");
        for (std::size_t i = 0; i < outs.size(); ++i) {
            const std::string w = "outputs[" + std::to_string(i) + "]";
            const json& o = outs[i];
            OutputSpec spec;
            spec.kind = text(field(o, "kind", w), w + ".kind");
            if (spec.kind != "report" && spec.kind != "invariants_csv" && spec.kind != "mesh" && spec.kind != "oracle_csv")
                config_error(w + ".kind", "unknown output kind '" + spec.kind + "'");
            spec.path = text(field(o, "path", w), w + ".path");
            if (o.contains("surface")) spec.surface = text(o["surface"], w + ".surface");
            if (o.contains("a_range")) std::tie(spec.a_lo, spec.a_hi) = range(o["a_range"], w + ".a_range");
            if (o.contains("t_range")) {
                const auto [tlo, thi] = range(o["t_range"], w + ".t_range");
                spec.t_range = Interval{tlo, thi};
            }
            if (o.contains("resolution")) {
                const json& r = o["resolution"];
                if (!r.is_array() || r.size() != 2) config_error(w + ".resolution", "expected [nt, na]");
                spec.nt = integer(r[0], w + ".resolution[0]");
                spec.na = integer(r[1], w + ".resolution[1]");
                if (spec.nt < 2 || spec.na < 2) config_error(w + ".resolution", "must be at least 2x2");
            }
            if (o.contains("samples")) spec.oracle_samples = integer(o["samples"], w + ".samples");
            if (spec.kind == "mesh" && spec.surface.empty()) config_error(w + ".surface", "mesh needs a surface");
            c.outputs.push_back(std::move(spec));
        }
    }
    return c;
}

SceneConfig load_config(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot read " + path.string());
    json j;
    try {
        j = json::parse(is);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_config(j);
}

Scene::Scene(SceneConfig config) : config_(std::move(config))
{
    const Interval I = config_.interval;
    std::vector<FramedCurve> extracted;
    for (const SurfaceSpec& s : config_.surfaces)
        extracted.push_back(frame_from_surface(s.map, s.orientation, I, config_.singular, s.normal_singular));

    const bool all_explicit =
        std::all_of(config_.surfaces.begin(), config_.surfaces.end(), [](const SurfaceSpec& s) { return s.frame.has_value(); });
    bool use_explicit = all_explicit;
    std::vector<FramedCurve> given;
    if (all_explicit) {
        for (const SurfaceSpec& s : config_.surfaces) {
            const FrameSpec& f = *s.frame;
            try {
                const ParametricMap e = located(s.name + ".frame.e", [&] { return parse_map(f.e, Arity::Curve); });
                const ParametricMap nu = located(s.name + ".frame.nu", [&] { return parse_map(f.nu, Arity::Curve); });
                const Expr l = located(s.name + ".frame.l", [&] { return parse_expr(f.l); });
                given.push_back(frame_explicit(curve_of(s.map), e, nu, l, I, config_.singular));
            } catch (const FrameInvalid& err) {
                notes_.push_back(s.name + ": stated frame rejected, " + err.what() + "; extracted frames used");
                use_explicit = false;
            }
        }
    }
    if (use_explicit) {
        for (std::size_t i = 0; i < given.size(); ++i) {
            double dev = 0.0, at = 0.0;
            for (double t : I.samples(kFramePreSamples)) {
                const FrameJets a = given[i].at(t);
                const FrameJets b = extracted[i].at(t);
                const double d = std::max(max_abs(a.e.value() - b.e.value()), max_abs(a.nu.value() - b.nu.value()));
                if (d > dev) dev = d, at = t;
            }
            if (dev > kFrameDeviationNote)
                notes_.push_back(config_.surfaces[i].name + ": stated frame differs from the extracted one by " +
                                 short_fmt(dev) + " at t=" + short_fmt(at) + "; stated frame used");
        }
        frames_ = std::move(given);
        sources_.assign(frames_.size(), "explicit");
    } else {
        frames_ = std::move(extracted);
        sources_.assign(frames_.size(), "extracted");
    }

    if (frames_.size() == 2) {
        glue_.emplace(make_glue(frames_[0], frames_[1], config_.samples));
        for (const GlueSurface& gs : glue_->surfaces())
            surfaces_.push_back({gs.name, gs.frame, gs.kind, gs.surface, gs.failure});
    } else {
        for (RulingKind kind : {RulingKind::Nu, RulingKind::B}) {
            SceneSurface ss;
            ss.name = std::string("S_") + to_string(kind);
            ss.kind = kind;
            try {
                ss.surface = DevelopableSurface::build(frames_[0], kind, config_.samples);
            } catch (const AssumptionViolated& e) {
                ss.failure = e.what();
            }
            surfaces_.push_back(std::move(ss));
        }
    }
}

const SceneSurface& Scene::surface(const std::string& name) const
{
    for (const auto& s : surfaces_)
        if (s.name == name) return s;
    throw ConfigError("unknown surface '" + name + "'");
}

Analysis analyze(const Scene& scene)
{
    const SceneConfig& cfg = scene.config();
    const double tol = cfg.tolerance;
    const std::vector<double> ts = cfg.interval.samples(cfg.samples);
    Analysis an;
    std::vector<std::string> notes = scene.notes();

    if (scene.is_glue()) {
        an.labels = classify_glue(*scene.glue(), tol);
    } else {
        for (const SceneSurface& s : scene.surfaces()) {
            if (s.surface) {
                label_surface(s.name, *s.surface, cfg.samples, tol, an.labels);
            } else {
                SurfaceGlueLabel sl;
                sl.name = s.name;
                sl.failure = s.failure;
                an.labels.surfaces.push_back(sl);
            }
        }
    }

    json surfaces = json::object();
    json glue_labels = json::array();
    for (const SurfaceGlueLabel& sl : an.labels.surfaces) {
        json s;
        if (!sl.built) {
            s = {{"status", "hypothesis_failed"}, {"failure", sl.failure}};
        } else {
            s = {{"status", "built"},
                 {"shape", to_string(sl.cls.shape)},
                 {"beta_max", sl.cls.beta_max},
                 {"beta_tol", sl.cls.beta_tol},
                 {"rho_max", sl.cls.rho_max},
                 {"rho_tol", sl.cls.rho_tol}};
            if (sl.cls.apex) s["apex"] = vec_json(*sl.cls.apex);
            if (sl.cylindrical) glue_labels.push_back(sl.name + "-cylindrical");
            if (sl.conical) glue_labels.push_back(sl.name + "-conical");
        }
        surfaces[sl.name] = s;
    }
    json points = json::array();
    for (const PointGlueLabel& p : an.labels.points) {
        if (p.label.label == PointLabel::Unresolved) an.unresolved = true;
        points.push_back({{"surface", p.surface},
                          {"t", p.label.t},
                          {"a", p.label.a},
                          {"label", to_string(p.label.label)},
                          {"source", p.source},
                          {"reason", p.label.reason},
                          {"diagnostics", diagnostics_json(p.label.diagnostics)}});
        if (p.label.label == PointLabel::CuspidalEdge || p.label.label == PointLabel::Swallowtail)
            glue_labels.push_back(p.surface + "-" + point_phrase(p.label.label) +
                                  " at (" + short_fmt(p.label.t) + ", " + short_fmt(p.label.a) + ")");
    }

    // residual maxima
    json residuals = json::object();
    for (int i = 1; i <= scene.frame_count(); ++i) {
        FrameResiduals worst;
        for (double t : ts) {
            const FrameResiduals r = frame_residuals(scene.frame(i), t);
            worst.orthonormality = std::max(worst.orthonormality, r.orthonormality);
            worst.tangent = std::max(worst.tangent, r.tangent);
            worst.frenet = std::max(worst.frenet, r.frenet);
            if (!std::isnan(r.geodesic)) worst.geodesic = std::max(worst.geodesic, r.geodesic);
        }
        residuals["frame" + std::to_string(i)] = {{"orthonormality", residual_json(worst.orthonormality, 1e-10)},
                                                  {"gamma_prime_l_e", residual_json(worst.tangent, 1e-9)},
                                                  {"connection_matrix", residual_json(worst.frenet, 1e-9)},
                                                  {"geodesic_identities", residual_json(worst.geodesic, 1e-9)}};
    }
    for (const SceneSurface& s : scene.surfaces()) {
        if (!s.surface) continue;
        SurfaceResiduals worst;
        for (double t : ts) {
            const SurfaceResiduals r = surface_residuals(*s.surface, t);
            worst.unit = std::max(worst.unit, r.unit);
            worst.derivative = std::max(worst.derivative, r.derivative);
            worst.orthogonal = std::max(worst.orthogonal, r.orthogonal);
        }
        residuals[s.name] = {{"ruling_unit", residual_json(worst.unit, 1e-10)},
                             {"ruling_derivative", residual_json(worst.derivative, 1e-9)},
                             {"ruling_orthogonal", residual_json(worst.orthogonal, 1e-10)}};
    }

    json report = {{"scene", cfg.name},
                   {"interval", json::array({cfg.interval.lo, cfg.interval.hi})},
                   {"samples", cfg.samples},
                   {"tolerance", tol},
                   {"frames", json::array()},
                   {"surfaces", surfaces},
                   {"points", points},
                   {"labels", glue_labels},
                   {"residuals", residuals},
                   {"metadata", {{"generator", "gluing"}, {"format", 1}}}};
    for (int i = 1; i <= scene.frame_count(); ++i)
        report["frames"].push_back({{"surface", cfg.surfaces[static_cast<std::size_t>(i - 1)].name},
                                    {"source", scene.frame_sources()[static_cast<std::size_t>(i - 1)]},
                                    {"orientation", cfg.surfaces[static_cast<std::size_t>(i - 1)].orientation}});

    if (scene.is_glue()) {
        const GlueScene& g = *scene.glue();
        double rot = 0.0, turned = 0.0, th_lo = std::numeric_limits<double>::infinity(), th_hi = -th_lo;
        for (double t : ts) {
            rot = std::max(rot, rotation_identities(g, t).max());
            turned = std::max(turned, rotated_ruling_residual(g, t));
            const double th = g.theta(t, 0).value();
            th_lo = std::min(th_lo, th);
            th_hi = std::max(th_hi, th);
        }
        report["residuals"]["rotation_identities"] = residual_json(rot, 1e-9);
        report["residuals"]["expanded_nu2"] = residual_json(an.labels.expanded_residual_max, 1e-8);
        report["residuals"]["turned_ruling"] = residual_json(turned, 1e-9);
        report["theta"] = {{"min", th_lo}, {"max", th_hi}, {"mid", g.theta(ts[ts.size() / 2], 0).value()}};

        try {
            const SpecialAngleReport sa = special_angle_equivalences(g, tol);
            report["special_angle"] = {{"applicable", true}, {"theta", sa.theta},   {"k", sa.k},
                                       {"lhs", sa.lhs},      {"rhs", sa.rhs},       {"lhs_class", sa.lhs_class},
                                       {"rhs_class", sa.rhs_class}, {"holds", sa.holds}};
        } catch (const NotApplicable& e) {
            report["special_angle"] = {{"applicable", false}, {"reason", e.what()}};
        }

        json terms = json::array();
        for (const SingularParam& p : cfg.singular) {
            if (!cfg.interval.contains(p.t0)) continue;
            const FrameOneTerms ft = nu2_terms(g, p.t0);
            terms.push_back({{"t0", p.t0},
                             {"kappa21", ft.kappa21},
                             {"l_prime_kappa21", ft.cusp_term},
                             {"kappa21_l_second", ft.swallowtail_term}});
        }
        report["frame_one_terms"] = terms;

        if (cfg.stated_angle) {
            const StatedAngle& sa = *cfg.stated_angle;
            if (!sa.value.empty()) {
                const double stated = evaluate(parse_expr(sa.value), 0.0, 0.0);
                const double mid = g.theta(ts[ts.size() / 2], 0).value();
                const bool same = th_hi - th_lo <= tol * (1.0 + std::fabs(mid)) &&
                                  std::fabs(std::remainder(stated - mid, 2.0 * std::numbers::pi)) <= 1e-9;
                if (!same)
                    notes.push_back("stated angle " + sa.value + " = " + short_fmt(stated) +
                                    " differs from the computed signed angle " + short_fmt(mid));
            } else {
                const Expr se = parse_expr(sa.sin);
                const Expr ce = parse_expr(sa.cos);
                double ds = 0.0, dc = 0.0, at_s = 0.0, at_c = 0.0;
                for (double t : ts) {
                    const double th = g.theta(t, 0).value();
                    const double es = std::fabs(std::sin(th) - evaluate(se, t, 0.0));
                    const double ec = std::fabs(std::cos(th) - evaluate(ce, t, 0.0));
                    if (es > ds) ds = es, at_s = t;
                    if (ec > dc) dc = ec, at_c = t;
                }
                if (ds > 1e-9)
                    notes.push_back("stated sin(theta) = " + sa.sin + " differs from the computed value by " +
                                    short_fmt(ds) + " at t=" + short_fmt(at_s));
                if (dc > 1e-9)
                    notes.push_back("stated cos(theta) = " + sa.cos + " differs from the computed value by " +
                                    short_fmt(dc) + " at t=" + short_fmt(at_c));
            }
        }
    }
    report["notes"] = notes;
    an.report = std::move(report);
    return an;
}

void write_invariants_csv(const Scene& scene, int frame, std::ostream& os)
{
    const SceneConfig& cfg = scene.config();
    const FramedCurve& fc = scene.frame(frame);
    const std::array<DevelopableSurface, 2> surfaces = {DevelopableSurface::build(fc, RulingKind::Nu, 0),
                                                         DevelopableSurface::build(fc, RulingKind::B, 0)};
    os << "t,l,kappa1,kappa2,kappa3,beta_nu,rho_nu,beta_b,rho_b,s_nu,s_b,theta\n";
    for (double t : cfg.interval.samples(cfg.samples)) {
        const FrameInvariants k = invariants(fc, t, 0);
        std::array<std::string, 6> dev;   // beta_nu, rho_nu, beta_b, rho_b, s_nu, s_b
        for (std::size_t i = 0; i < 2; ++i) {
            try {
                const DevelopableLocal L = surfaces[i].local(t, 2);
                dev[2 * i] = fmt(L.beta.value());
                dev[2 * i + 1] = fmt(L.rho.value());
                if (std::fabs(L.beta.value()) > cfg.tolerance * L.beta_scale())
                    dev[4 + i] = fmt(-L.lambda0.value() / L.lambda1.value());
            } catch (const AssumptionViolated&) {
            }
        }
        os << fmt(t) << ',' << fmt(k.l.value()) << ',' << fmt(k.kappa1.value()) << ',' << fmt(k.kappa2.value()) << ','
           << fmt(k.kappa3.value());
        for (const auto& cell : dev) os << ',' << cell;
        os << ',';
        if (scene.is_glue()) os << fmt(scene.glue()->theta(t, 0).value());
        os << '\n';
    }
}

void write_mesh_obj(const Scene& scene, const OutputSpec& out, std::ostream& os)
{
    const SceneConfig& cfg = scene.config();
    const Interval tr = out.t_range.value_or(cfg.interval);
    if (out.nt < 2 || out.na < 2) throw ConfigError("mesh resolution must be at least 2x2");
    const std::vector<double> ts = tr.samples(out.nt);
    const std::vector<double> as = Interval{out.a_lo, out.a_hi}.samples(out.na);
    std::vector<Vec3> points, normals;

    const SurfaceSpec* input = nullptr;
    for (std::size_t i = 0; i < cfg.surfaces.size(); ++i)
        if (out.surface == "f" + std::to_string(i + 1) || out.surface == cfg.surfaces[i].name) input = &cfg.surfaces[i];

    if (input) {
        const ParametricMap fu = differentiate(input->map, Var::U);
        const ParametricMap fv = differentiate(input->map, Var::V);
        for (double t : ts) {
            for (double a : as) {
                points.push_back(evaluate(input->map, t, a));
                const Vec3 n = cross(evaluate(fu, t, a), evaluate(fv, t, a));
                const double len = norm(n);
                normals.push_back(len > 0.0 ? static_cast<double>(input->orientation) * n / len : Vec3{});
            }
        }
    } else {
        const SceneSurface& ss = scene.surface(out.surface);
        if (!ss.surface) throw ConfigError("surface " + ss.name + " is undefined: " + ss.failure);
        const DevelopableSurface& s = *ss.surface;
        for (double t : ts) {
            const FrameJets fj = s.curve().at(t);
            const Vec3 base = fj.gamma.value();
            const Vec3 ruling = s.ruling(t);
            const Vec3 n = s.kind() == RulingKind::Nu ? fj.nu.value() : fj.b.value();
            for (double a : as) {
                points.push_back(base + a * ruling);
                normals.push_back(n);
            }
        }
    }

    os << "# " << cfg.name << ' ' << out.surface << '\n';
    for (const Vec3& p : points) os << "v " << fmt(p.x) << ' ' << fmt(p.y) << ' ' << fmt(p.z) << '\n';
    for (const Vec3& n : normals) os << "vn " << fmt(n.x) << ' ' << fmt(n.y) << ' ' << fmt(n.z) << '\n';
    const std::size_t na = as.size();
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        for (std::size_t j = 0; j + 1 < na; ++j) {
            const std::size_t v00 = i * na + j + 1, v10 = (i + 1) * na + j + 1, v11 = (i + 1) * na + j + 2,
                              v01 = i * na + j + 2;
            os << "f " << v00 << "//" << v00 << ' ' << v10 << "//" << v10 << ' ' << v11 << "//" << v11 << '\n';
            os << "f " << v00 << "//" << v00 << ' ' << v11 << "//" << v11 << ' ' << v01 << "//" << v01 << '\n';
        }
    }
}

namespace {

std::vector<oracle::Comparison> oracle_rows(const Scene& scene, int samples)
{
    const SceneConfig& cfg = scene.config();
    const std::vector<double> ts = cfg.interval.samples(samples);
    std::vector<oracle::Comparison> rows;
    for (int i = 1; i <= scene.frame_count(); ++i) {
        const std::string fixture = cfg.name + "/" + cfg.surfaces[static_cast<std::size_t>(i - 1)].name;
        auto part = oracle::derivative_checks(fixture, scene.frame(i), ts);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    for (const SceneSurface& ss : scene.surfaces()) {
        if (!ss.surface) continue;
        const std::string fixture = cfg.name + "/" + ss.name;
        for (double t : ts) {
            const DevelopableLocal L = ss.surface->local(t, 2);
            if (std::fabs(L.beta.value()) <= 1e-6 * L.beta_scale()) continue;
            const double s = -L.lambda0.value() / L.lambda1.value();
            rows.push_back(oracle::compare(fixture, "striction", t, s, oracle::striction_search(*ss.surface, t)));
            rows.push_back(oracle::compare(fixture, "lambda_zero", t, s,
                                           oracle::lambda_zero(*ss.surface, t, s - 1.0, s + 1.0)));
        }
    }
    return rows;
}

} // namespace

int run(const std::filesystem::path& config_path, const RunOptions& options, std::ostream& err)
{
    try {
        SceneConfig cfg = load_config(config_path);
        if (options.samples) {
            if (*options.samples < 3) throw ConfigError("--samples must be at least 3");
            cfg.samples = *options.samples;
        }
        if (options.tolerance) {
            if (!(*options.tolerance > 0.0)) throw ConfigError("--tol must be positive");
            cfg.tolerance = *options.tolerance;
        }
        const std::filesystem::path out_dir = options.out_dir.value_or(std::filesystem::current_path());
        const Scene scene(cfg);
        const Analysis an = analyze(scene);
        std::optional<OracleMismatch> mismatch;
        for (const OutputSpec& out : cfg.outputs) {
            std::ofstream os = open_output(out_dir / out.path);
            if (out.kind == "report") {
                os << an.report.dump(2) << '\n';
            } else if (out.kind == "invariants_csv") {
                int frame = 1;
                if (!out.surface.empty()) {
                    frame = 0;
                    for (std::size_t i = 0; i < cfg.surfaces.size(); ++i)
                        if (out.surface == "f" + std::to_string(i + 1) || out.surface == cfg.surfaces[i].name)
                            frame = static_cast<int>(i) + 1;
                    if (frame == 0) throw ConfigError("invariants_csv: unknown surface '" + out.surface + "'");
                }
                write_invariants_csv(scene, frame, os);
            } else if (out.kind == "mesh") {
                write_mesh_obj(scene, out, os);
            } else {
                const auto rows = oracle_rows(scene, out.oracle_samples);
                oracle::write_csv(os, rows);
                for (const auto& r : rows) {
                    try {
                        oracle::require(r);
                    } catch (const OracleMismatch& e) {
                        if (!mismatch) mismatch = e;
                    }
                }
            }
            if (!os) throw IoError("failed writing " + (out_dir / out.path).string());
        }
        if (mismatch) throw *mismatch;
        for (const auto& note : an.report["notes"]) err << "note: " << note.get<std::string>() << '\n';
        if (an.unresolved) {
            err << "unresolved singular-point labels present\n";
            return 2;
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.kind() << ": " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
    }
    return 1;
}

} // namespace gluing
