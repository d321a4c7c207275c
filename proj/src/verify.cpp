#include "surflap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/version.hpp>
#include <json.hpp>

#include "surflap/errors.hpp"
#include "verify_internal.hpp"

namespace surflap {

namespace {

const std::vector<std::string> kAll = {"sphere", "ellipsoid", "revolution", "nsphere"};
const std::vector<std::string> kRev = {"sphere", "ellipsoid", "revolution"};

IdentityInfo entry(std::string id, std::string summary, std::vector<std::string> kinds, double tol) {
    IdentityInfo i;
    i.id = std::move(id);
    i.summary = std::move(summary);
    i.kinds = std::move(kinds);
    i.tol = tol;
    return i;
}

std::vector<IdentityInfo> build_catalog() {
    std::vector<IdentityInfo> c;
    auto add = [&c](IdentityInfo i, auto&&... mods) {
        (mods(i), ...);
        c.push_back(std::move(i));
    };
    auto fd = [](IdentityInfo& i) { i.fd_route = true; };
    auto divfree = [](IdentityInfo& i) { i.divfree_both = true; };
    auto no_field = [](IdentityInfo& i) {
        i.uses_field = false;
        i.uses_extension = false;
    };

    add(entry("GAUSS", "ambient derivative of a tangent field = intrinsic part + h(X, v) N", kAll, 1e-8), fd);
    add(entry("WEINGARTEN", "derivative of the unit normal along the surface = -sX", kAll, 1e-8), fd);
    add(entry("LEMMA_KEY", "frame trace of the rough Laplacian, ambient and induced, against the chart", kAll, 1e-8),
        fd);
    add(entry("THM1", "projected ambient rough Laplacian of an extended tangent field", kAll, 1e-8), fd);
    add(entry("COR1", "ambient rough Laplacian before projection, with its normal component", kAll, 1e-8), fd);
    add(entry("LIE_PAIRING", "pairing of the Lie derivative of a 1-form with a vector field", kAll, 1e-8), fd);
    add(entry("LIE_RELATE", "frame components of the Lie derivative of a 1-form via the bracket", kAll, 1e-8));
    add(entry("LIE_SHAPE", "tangent part of L_N v^flat = [N, v]^T - 2sv", kAll, 1e-8));
    add(entry("LIE3", "normal component of L_N v^flat = c^3_13 v^1", kRev, 1e-8), divfree);
    add(entry("LIEY", "Lie derivative along c^3_13 / f^2 E1 in frame components", kRev, 1e-8));
    add(entry("DOUBLE_LIE", "tangent part of L_N L_N v^flat, both forms", kRev, 1e-8), divfree);
    add(entry("THM2", "projected Hodge Laplacian on a surface of revolution via Lie derivatives", kRev, 1e-7),
        divfree, fd);
    add(entry("COR2", "the same with Lie derivatives along grad rho", kRev, 1e-7), divfree, fd);
    add(entry("MAIN1", "coefficient of the Lie derivative term", kRev, 0.0), no_field,
        [](IdentityInfo& i) { i.relative = false; });
    add(entry("MAIN2_I2", "scalar identity for the second principal direction", kRev, 0.0), no_field,
        [](IdentityInfo& i) { i.relative = false; });
    add(entry("MAIN2_I1", "scalar identity for the meridian direction, with its expanded form", kRev, 0.0),
        no_field, [](IdentityInfo& i) { i.relative = false; });
    add(entry("SPHERE_THM1", "projected rough Laplacian on the unit sphere for homogeneous extensions",
              {"sphere", "nsphere"}, 1e-9),
        fd, [](IdentityInfo& i) {
            i.homogeneous_only = true;
            i.unit_sphere = true;
        });
    add(entry("SPHERE_THM2", "projected Hodge Laplacian on the unit sphere; extra terms vanish", {"sphere"}, 1e-10),
        divfree, fd, [](IdentityInfo& i) { i.unit_sphere = true; });
    add(entry("ELLIPSOID_FORMS", "closed forms of |grad rho|^2, K and the principal curvatures", {"ellipsoid"},
              1e-9),
        no_field);
    add(entry("ELLIPSOID_E2", "scalar coefficient identity on the ellipsoid", {"ellipsoid"}, 1e-12), no_field,
        [](IdentityInfo& i) { i.relative = false; });
    add(entry("ELLIPSOID_E1", "1-form coefficient identity on the ellipsoid", {"ellipsoid"}, 1e-8), divfree);
    add(entry("BW", "rough Laplacian, -2 div Def and Hodge routes agree on divergence-free 1-forms", kRev, 1e-8),
        [](IdentityInfo& i) {
            i.surface_divfree = true;
            i.uses_extension = false;
        });
    return c;
}

double parse_double(const std::string& s, const std::string& what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw ConfigError("invalid " + what + " '" + s + "'");
    return v;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

nlohmann::json parse_json_file(const std::filesystem::path& path) {
    try {
        return nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string json_string(const nlohmann::json& doc, const char* key, const std::filesystem::path& path) {
    if (!doc.contains(key) || !doc[key].is_string())
        throw ConfigError(path.string() + ": missing string field '" + key + "'");
    return doc[key].get<std::string>();
}

double radical_inverse(std::uint64_t i, unsigned base) {
    double r = 0.0, f = 1.0 / base;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f /= base;
    }
    return r;
}

std::string fmt(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

bool starts_with(const std::string& s, const char* p) { return s.rfind(p, 0) == 0; }

}  // namespace

Engine parse_engine(const std::string& s) {
    if (s == "jets") return Engine::Jets;
    if (s == "fd") return Engine::Fd;
    if (s == "both") return Engine::Both;
    throw ConfigError("unknown engine '" + s + "' (expected jets, fd or both)");
}

std::string to_string(Engine e) {
    switch (e) {
        case Engine::Jets: return "jets";
        case Engine::Fd: return "fd";
        case Engine::Both: return "both";
    }
    return "jets";
}

bool IdentityInfo::admits(const std::string& kind) const {
    return std::find(kinds.begin(), kinds.end(), kind) != kinds.end();
}

const std::vector<IdentityInfo>& identity_catalog() {
    static const std::vector<IdentityInfo> catalog = build_catalog();
    return catalog;
}

const IdentityInfo& identity_info(const std::string& id) {
    for (const auto& i : identity_catalog())
        if (i.id == id) return i;
    throw ConfigError("unknown identity '" + id + "'");
}

FieldSpec resolve_field(const std::string& spec) {
    FieldSpec f;
    f.name = spec;
    if (starts_with(spec, "azimuthal:")) {
        f.tangent = azimuthal_field(spec.substr(10));
    } else if (spec == "mixed") {
        f.tangent = tangent_field("cos(t)", "sin(t)", "mixed");
    } else if (starts_with(spec, "stream:")) {
        f.tangent = stream_field(spec.substr(7), spec);
    } else if (spec == "killing") {
        f.sphere_kind = SphereFieldKind::Killing;
    } else if (spec == "conformal") {
        f.sphere_kind = SphereFieldKind::Conformal;
    } else {
        const std::filesystem::path path(spec);
        if (!std::filesystem::exists(path)) throw ConfigError("unknown field '" + spec + "' (not a builtin or file)");
        const auto doc = parse_json_file(path);
        f.name = doc.value("name", path.stem().string());
        if (doc.contains("psi"))
            f.tangent = stream_field(json_string(doc, "psi", path), f.name);
        else
            f.tangent = tangent_field(json_string(doc, "v1", path), json_string(doc, "v2", path), f.name);
    }
    if (f.tangent) f.tangent->name = f.name;
    return f;
}

ExtensionStrategy resolve_extension(const std::string& spec) {
    if (starts_with(spec, "homogeneous:")) return homogeneous(parse_double(spec.substr(12), "homogeneous degree"));
    if (starts_with(spec, "normal-corrected:"))
        return normal_corrected(parse_double(spec.substr(17), "homogeneous degree"));
    if (starts_with(spec, "custom:")) {
        const std::filesystem::path path(spec.substr(7));
        const auto doc = parse_json_file(path);
        return custom_extension(json_string(doc, "v1", path), json_string(doc, "v2", path),
                                json_string(doc, "v3", path));
    }
    throw ConfigError("unknown extension '" + spec + "' (expected homogeneous:<k>, normal-corrected:<k>, custom:<file> or divfree)");
}

std::vector<SamplePoint> sample_points(const Surface& s, int count, std::uint64_t seed) {
    if (count < 1) throw ConfigError("points must be at least 1");
    double lo = 0.05 * std::numbers::pi, hi = 0.95 * std::numbers::pi;
    if (s.is_revolution()) {
        lo = cutoff_min(s.revolution().curve);
        hi = cutoff_max(s.revolution().curve);
    }
    std::mt19937_64 rng(seed);
    const double shift_t = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double shift_th = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    std::vector<SamplePoint> pts;
    for (int i = 1; i <= count; ++i) {
        const double u = std::fmod(radical_inverse(i, 2) + shift_t, 1.0);
        const double w = std::fmod(radical_inverse(i, 3) + shift_th, 1.0);
        pts.push_back({lo + (hi - lo) * u, -std::numbers::pi + 2.0 * std::numbers::pi * w});
    }
    return pts;
}

double residual_norm(const std::vector<double>& lhs, const std::vector<double>& rhs) {
    if (lhs.size() != rhs.size()) throw DomainError("sides have different sizes");
    double s = 0.0;
    for (std::size_t i = 0; i < lhs.size(); ++i) s += (lhs[i] - rhs[i]) * (lhs[i] - rhs[i]);
    return std::sqrt(s);
}

bool ResidualReport::pass() const {
    const auto ok = [](const CheckResult& r) { return r.pass; };
    return std::all_of(results.begin(), results.end(), ok) && std::all_of(oracle.begin(), oracle.end(), ok);
}

void ResidualReport::append(ResidualReport other) {
    results.insert(results.end(), std::make_move_iterator(other.results.begin()),
                   std::make_move_iterator(other.results.end()));
    oracle.insert(oracle.end(), std::make_move_iterator(other.oracle.begin()),
                  std::make_move_iterator(other.oracle.end()));
    skipped += other.skipped;
}

std::vector<SummaryRow> ResidualReport::summarize() const {
    std::vector<SummaryRow> rows;
    std::map<std::string, std::size_t> index;
    for (const auto& r : results) {
        const std::string key = r.id + '\n' + r.surface + '\n' + r.engine;
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, rows.size()).first;
            rows.push_back({r.id, r.surface, r.engine, r.residual, r.tol, 0, true});
        }
        SummaryRow& row = rows[it->second];
        if (row.count == 0 || r.residual > row.worst) {
            row.worst = r.residual;
            row.tol = r.tol;
        }
        ++row.count;
        row.pass = row.pass && r.pass;
    }
    return rows;
}

namespace {

nlohmann::ordered_json row_json(const CheckResult& r) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::object();
    for (const auto& [name, v] : r.terms) terms[name] = v;
    return {{"id", r.id},
            {"surface", r.surface},
            {"field", r.field},
            {"extension", r.extension},
            {"engine", r.engine},
            {"point", {{"t", r.point.t}, {"theta", r.point.theta}}},
            {"terms", terms},
            {"lhs", r.lhs},
            {"rhs", r.rhs},
            {"residual", r.residual},
            {"tol", r.tol},
            {"pass", r.pass}};
}

}  // namespace

std::string ResidualReport::to_json() const {
    nlohmann::ordered_json doc;
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.pass ? 1 : 0;
    doc["meta"] = {{"seed", seed},
                   {"engine", to_string(engine)},
                   {"points", points},
                   {"versions",
                    {{"surflap", "0.1.0"},
                     {"boost", BOOST_LIB_VERSION},
                     {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)}}},
                   {"counts",
                    {{"checks", results.size()},
                     {"passed", passed},
                     {"failed", results.size() - passed},
                     {"skipped", skipped}}},
                   {"pass", pass()}};
    nlohmann::ordered_json oracle_rows = nlohmann::ordered_json::array();
    for (const auto& r : oracle) oracle_rows.push_back(row_json(r));
    doc["meta"]["oracle"] = oracle_rows;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : results) rows.push_back(row_json(r));
    doc["results"] = rows;
    return doc.dump(1) + "\n";
}

std::string ResidualReport::summary_csv() const {
    std::string out = "id,surface,engine,points,worst_residual,tol,pass\n";
    for (const auto& r : summarize())
        out += r.id + "," + r.surface + "," + r.engine + "," + std::to_string(r.count) + "," +
               fmt(r.worst, "%.6e") + "," + fmt(r.tol, "%.6e") + "," + (r.pass ? "true" : "false") + "\n";
    return out;
}

std::string ResidualReport::plot_csv() const {
    std::string out = "identity,t,residual\n";
    for (const auto& r : results) out += r.id + "," + fmt(r.point.t, "%.17g") + "," + fmt(r.residual, "%.17g") + "\n";
    return out;
}

namespace {

constexpr double kDivergenceLimit = 1e-6;
constexpr double kFdTol = 1e-5;

CheckResult make_row(const IdentityInfo& info, const std::string& surface, const std::string& field,
                     const std::string& extension, const SamplePoint& pt, detail::Eval e, double base,
                     bool relative, const char* engine) {
    CheckResult r;
    r.id = info.id;
    r.surface = surface;
    r.field = field;
    r.extension = extension;
    r.engine = engine;
    r.point = pt;
    r.terms = std::move(e.terms);
    r.lhs = std::move(e.lhs);
    r.rhs = std::move(e.rhs);
    r.residual = residual_norm(r.lhs, r.rhs);
    double scale = 1.0;
    if (relative) {
        double n = 0.0;
        for (double c : r.lhs) n += c * c;
        scale += std::sqrt(n);
    }
    r.tol = base * scale;
    r.pass = r.residual <= r.tol;
    return r;
}

void check_divergence(const IdentityInfo& info, const std::vector<double>& div, const std::string& field) {
    const bool surf = info.divfree_both || info.surface_divfree;
    if (surf && std::abs(div[0]) > kDivergenceLimit)
        throw ContextViolation(info.id + " needs a field divergence free on the surface; " + field +
                               " has divergence " + fmt(div[0], "%.3e"));
    if (info.divfree_both && std::abs(div[1]) > kDivergenceLimit)
        throw ContextViolation(info.id + " needs an extension divergence free in space; " + field +
                               " has divergence " + fmt(div[1], "%.3e") + " on the surface");
}

}  // namespace

ResidualReport run_check(const std::string& id, const Surface& surface, const FieldSpec& field,
                         const std::string& extension, const std::vector<SamplePoint>& points,
                         const CheckOptions& options) {
    const IdentityInfo& info = identity_info(id);
    const std::string kind = surface.kind();
    if (!info.admits(kind)) throw ContextViolation(id + " does not apply to " + kind + " surfaces");
    if (info.unit_sphere && !(surface.is_unit_sphere() || (!surface.is_revolution() && surface.nsphere().r == 1.0)))
        throw ContextViolation(id + " needs the unit sphere");

    ResidualReport rep;
    rep.seed = options.seed;
    rep.engine = options.engine;
    rep.points = static_cast<int>(points.size());
    const std::string field_label = info.uses_field ? field.name : "-";
    const std::string ext_label = info.uses_extension ? extension : "-";
    const bool jets = options.engine != Engine::Fd || !info.fd_route;
    const bool fd = info.fd_route && options.engine != Engine::Jets;
    const bool oracle_once = info.fd_route && options.engine == Engine::Jets;

    double base = options.tol.value_or(info.tol);
    if (!options.tol && (id == "MAIN2_I1" || id == "MAIN2_I2"))
        base = 100.0 * std::max(surface.revolution().curve.certified_tolerance(),
                                std::numeric_limits<double>::epsilon());

    auto emit = [&](const SamplePoint& pt, std::size_t i, auto&& eval, auto&& eval_fd, const std::vector<double>* div) {
        if (jets) {
            detail::Eval e = eval();
            if (div) e.terms.push_back({"divergence", *div});
            rep.results.push_back(make_row(info, surface.name(), field_label, ext_label, pt, std::move(e), base,
                                           info.relative, "jets"));
        }
        if (fd || (oracle_once && i == 0)) {
            auto e = eval_fd();
            if (!e) return;
            CheckResult r = make_row(info, surface.name(), field_label, ext_label, pt, std::move(*e),
                                     options.tol.value_or(kFdTol), true, "fd");
            (fd ? rep.results : rep.oracle).push_back(std::move(r));
        }
    };

    if (surface.is_revolution()) {
        const SurfaceOfRevolution& s = surface.revolution();
        std::optional<AmbientField> af;
        double k = 0.0;
        if (info.uses_field) {
            if (!field.tangent) throw ContextViolation("field " + field.name + " is not defined on surfaces of revolution");
            if (extension == "divfree") {
                try {
                    af = make_divfree_pair(s, *field.tangent).ambient;
                } catch (const NoDivFreeExtension& e) {
                    throw ContextViolation(e.what());
                }
                if (info.homogeneous_only && af->ext.kind != ExtensionStrategy::Kind::Homogeneous)
                    throw ContextViolation(id + " needs a homogeneous extension");
                k = af->ext.k;
            } else if (!info.uses_extension) {
                af = extend(s, *field.tangent, homogeneous(0.0));  // intrinsic identities ignore the extension
            } else {
                const ExtensionStrategy ext = resolve_extension(extension);
                if (info.homogeneous_only && ext.kind != ExtensionStrategy::Kind::Homogeneous)
                    throw ContextViolation(id + " needs a homogeneous extension");
                k = ext.k;
                af = extend(s, *field.tangent, ext);
            }
        }
        const bool need_div = info.divfree_both || info.surface_divfree;
        std::optional<CartesianOracle> oracle;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const SamplePoint& pt = points[i];
            const CurveJet cj = s.curve.jet(pt.t);
            detail::RevInput in{&s, af ? &*af : nullptr, &cj, k, pt.t, pt.theta};
            std::vector<double> div;
            if (need_div) {
                div = detail::divergences(in);
                check_divergence(info, div, field.name + "/" + extension);
            }
            emit(
                pt, i, [&] { return detail::evaluate(id, in); },
                [&]() -> std::optional<detail::Eval> {
                    if (!oracle) oracle = CartesianOracle::revolution(s, *af);
                    return detail::evaluate_fd(id, in, *oracle);
                },
                need_div ? &div : nullptr);
        }
    } else {
        const NSphere& s = surface.nsphere();
        if (!field.sphere_kind) throw ContextViolation("field " + field.name + " is not defined on n-spheres");
        if (!starts_with(extension, "homogeneous:"))
            throw ContextViolation("fields on n-spheres take homogeneous extensions");
        const SphereField sf{*field.sphere_kind, resolve_extension(extension).k};
        const bool need_div = info.divfree_both || info.surface_divfree;
        const CartesianOracle oracle = CartesianOracle::nsphere(s, sf);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const SamplePoint& pt = points[i];
            detail::SphInput in{&s, sf, pt.t, pt.theta};
            std::vector<double> div;
            if (need_div) {
                div = detail::divergences(in);
                check_divergence(info, div, field.name + "/" + extension);
            }
            emit(
                pt, i, [&] { return detail::evaluate(id, in); },
                [&] { return detail::evaluate_fd(id, in, oracle); }, need_div ? &div : nullptr);
        }
    }
    return rep;
}

namespace {

// Split on commas outside parentheses.
std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    for (auto& x : out) {
        const auto b = x.find_first_not_of(" \t"), e = x.find_last_not_of(" \t");
        x = b == std::string::npos ? "" : x.substr(b, e - b + 1);
    }
    out.erase(std::remove(out.begin(), out.end(), ""), out.end());
    return out;
}

bool builtin_surface(const std::string& s) {
    return s == "sphere" || s == "oval" || starts_with(s, "ellipsoid:") || starts_with(s, "nsphere:");
}

bool builtin_field(const std::string& s) {
    return s == "mixed" || s == "killing" || s == "conformal" || starts_with(s, "azimuthal:") ||
           starts_with(s, "stream:");
}

std::string resolve_path(const std::string& s, const std::filesystem::path& base) {
    const std::filesystem::path p(s);
    if (base.empty() || p.is_absolute()) return s;
    return (base / p).string();
}

}  // namespace

SuiteConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
    SuiteConfig c;
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(n) + ": expected key = value");
        auto trim = [](std::string x) {
            const auto b = x.find_first_not_of(" \t\r"), e = x.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : x.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        const std::string where = "line " + std::to_string(n) + ": ";
        try {
            if (key == "surface" || key == "surfaces") {
                for (auto& s : split_list(value)) c.surfaces.push_back(builtin_surface(s) ? s : resolve_path(s, base_dir));
            } else if (key == "field" || key == "fields") {
                for (auto& s : split_list(value)) c.fields.push_back(builtin_field(s) ? s : resolve_path(s, base_dir));
            } else if (key == "extension" || key == "extensions") {
                for (auto& s : split_list(value))
                    c.extensions.push_back(starts_with(s, "custom:") ? "custom:" + resolve_path(s.substr(7), base_dir)
                                                                     : s);
            } else if (key == "identity" || key == "identities") {
                for (auto& s : split_list(value)) c.identities.push_back(s);
            } else if (key == "points") {
                c.points = static_cast<int>(parse_double(value, "points"));
            } else if (key == "seed") {
                c.seed = static_cast<std::uint64_t>(parse_double(value, "seed"));
            } else if (key == "engine") {
                c.engine = parse_engine(value);
            } else if (key == "tol") {
                c.tol = parse_double(value, "tolerance");
            } else if (key == "out") {
                c.out = resolve_path(value, base_dir);
            } else if (key == "format") {
                if (value != "json" && value != "csv" && value != "plot")
                    throw ConfigError("unknown format '" + value + "' (expected json, csv or plot)");
                c.format = value;
            } else {
                throw ConfigError("unknown key '" + key + "'");
            }
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
    return c;
}

SuiteConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_file(path), path.parent_path());
}

SuiteConfig default_config() {
    SuiteConfig c;
    c.surfaces = {"sphere", "ellipsoid:2", "oval"};
    c.fields = {"azimuthal:1", "azimuthal:sin(t)", "mixed"};
    c.extensions = {"homogeneous:0", "homogeneous:1", "homogeneous:2"};
    c.identities = {"all"};
    return c;
}

ResidualReport run_suite(const SuiteConfig& config) {
    if (config.points < 1) throw ConfigError("points must be at least 1");
    std::vector<std::string> ids;
    for (const auto& id : config.identities) {
        if (id == "all") {
            for (const auto& i : identity_catalog()) ids.push_back(i.id);
        } else {
            ids.push_back(identity_info(id).id);
        }
    }
    ResidualReport rep;
    rep.seed = config.seed;
    rep.engine = config.engine;
    rep.points = config.points;
    std::vector<FieldSpec> fields;
    for (const auto& f : config.fields) fields.push_back(resolve_field(f));
    for (const auto& e : config.extensions)
        if (e != "divfree") resolve_extension(e);  // fail early on bad specs
    const CheckOptions options{config.engine, config.tol, config.seed};
    for (const auto& spec : config.surfaces) {
        const Surface surface = surface_from_spec(spec);
        const auto pts = sample_points(surface, config.points, config.seed);
        for (const auto& id : ids) {
            const IdentityInfo& info = identity_info(id);
            const std::vector<FieldSpec> fs = info.uses_field ? fields : std::vector<FieldSpec>{FieldSpec{"-", {}, {}}};
            const std::vector<std::string> es = info.uses_extension ? config.extensions : std::vector<std::string>{"-"};
            for (const auto& f : fs)
                for (const auto& e : es) {
                    try {
                        rep.append(run_check(id, surface, f, e, pts, options));
                    } catch (const ContextViolation&) {
                        if (config.strict) throw;
                        ++rep.skipped;
                    }
                }
        }
    }
    return rep;
}

}  // namespace surflap
