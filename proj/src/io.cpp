#include "lgrad/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace lgrad {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json norm_to_json(const AnisotropyNorm& n) {
    using Form = AnisotropyNorm::Form;
    json j;
    j["form"] = n.form_name();
    switch (n.form()) {
        case Form::Polygonal: {
            json verts = json::array();
            for (const auto& v : n.vertices()) verts.push_back({v.x, v.y});
            j["vertices"] = verts;
            break;
        }
        case Form::Euclidean:
            break;
        case Form::PNorm:
            j["p"] = std::isinf(n.pnorm_exponent()) ? json("inf") : json(n.pnorm_exponent());
            break;
        case Form::Ellipse: {
            double a11, a12, a22;
            n.ellipse_matrix(a11, a12, a22);
            j["matrix"] = {{a11, a12}, {a12, a22}};
            break;
        }
        case Form::Sum: {
            json terms = json::array();
            for (const auto& [w, t] : n.sum_terms())
                terms.push_back({{"weight", w}, {"norm", norm_to_json(t)}});
            j["terms"] = terms;
            break;
        }
        case Form::TruncatedDisk: {
            j["radius"] = n.disk_radius();
            json slabs = json::array();
            for (const auto& [c, hw] : n.disk_slabs())
                slabs.push_back({{"angle", c}, {"half_width", hw}});
            j["slabs"] = slabs;
            break;
        }
    }
    return j;
}

AnisotropyNorm norm_from_json(const json& j) {
    const std::string form = j.at("form").get<std::string>();
    if (form == "euclidean") return AnisotropyNorm::euclidean();
    if (form == "pnorm") {
        const auto& p = j.at("p");
        if (p.is_string()) return AnisotropyNorm::pnorm(std::numeric_limits<double>::infinity());
        return AnisotropyNorm::pnorm(p.get<double>());
    }
    if (form == "polygonal") {
        std::vector<Vec2> verts;
        for (const auto& v : j.at("vertices")) verts.push_back({v.at(0), v.at(1)});
        return AnisotropyNorm::polygonal(std::move(verts));
    }
    if (form == "ellipse") {
        const auto& m = j.at("matrix");
        return AnisotropyNorm::ellipse(m.at(0).at(0), m.at(0).at(1), m.at(1).at(1));
    }
    if (form == "sum") {
        std::vector<std::pair<double, AnisotropyNorm>> terms;
        for (const auto& t : j.at("terms"))
            terms.emplace_back(t.at("weight").get<double>(), norm_from_json(t.at("norm")));
        return AnisotropyNorm::weighted_sum(std::move(terms));
    }
    if (form == "truncated_disk") {
        std::vector<std::pair<double, double>> slabs;
        for (const auto& s : j.at("slabs"))
            slabs.emplace_back(s.at("angle").get<double>(), s.at("half_width").get<double>());
        return AnisotropyNorm::truncated_disk(j.value("radius", 1.0), std::move(slabs));
    }
    throw std::invalid_argument("norm_from_json: unknown form '" + form + "'");
}

std::unique_ptr<ConvexDomain> domain_from_json(const json& j) {
    std::optional<double> beta;
    if (j.contains("beta")) beta = j.at("beta").get<double>();
    if (j.contains("boundary")) {
        std::vector<Vec2> pts;
        for (const auto& v : j.at("boundary")) pts.push_back({v.at(0), v.at(1)});
        return std::make_unique<ConvexDomain>(std::move(pts), beta);
    }
    const std::string kind = j.value("kind", "disk");
    const int samples = j.value("samples", 256);
    std::unique_ptr<ConvexDomain> dom;
    if (kind == "disk") {
        dom = std::make_unique<ConvexDomain>(
            ConvexDomain::disk(j.value("radius", 1.0), samples));
    } else if (kind == "ellipse") {
        dom = std::make_unique<ConvexDomain>(
            ConvexDomain::ellipse(j.value("a", 2.0), j.value("b", 1.0), samples));
    } else if (kind == "superellipse") {
        dom = std::make_unique<ConvexDomain>(
            ConvexDomain::superellipse(j.value("p", 4.0), j.value("radius", 1.0), samples));
    } else if (kind == "polygon") {
        std::vector<Vec2> corners;
        for (const auto& v : j.at("vertices")) corners.push_back({v.at(0), v.at(1)});
        dom = std::make_unique<ConvexDomain>(
            ConvexDomain::polygon(corners, j.value("samples_per_edge", 32)));
    } else if (kind == "stadium") {
        dom = std::make_unique<ConvexDomain>(
            ConvexDomain::stadium(j.value("half_length", 1.0), j.value("radius", 1.0), samples));
    } else if (kind == "lens") {
        const auto& t = j.at("tip");
        dom = std::make_unique<ConvexDomain>(ConvexDomain::lens(
            Vec2{t.at(0), t.at(1)}, j.at("opening").get<double>(), samples));
    } else {
        throw std::invalid_argument("domain_from_json: unknown kind '" + kind + "'");
    }
    if (beta) {
        auto pts = dom->boundary();
        dom = std::make_unique<ConvexDomain>(std::move(pts), beta);
    }
    return dom;
}

namespace {

Modulus modulus_from_json(const json& j) {
    if (!j.is_object()) return Modulus::lipschitz(1.0);
    const std::string kind = j.value("kind", "lipschitz");
    if (kind == "lipschitz") return Modulus::lipschitz(j.value("L", 1.0));
    if (kind == "hoelder") return Modulus::hoelder(j.value("C", 1.0), j.value("alpha", 0.5));
    if (kind == "tabulated") {
        std::vector<std::pair<double, double>> table;
        for (const auto& row : j.at("table"))
            table.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        return Modulus::tabulated(std::move(table));
    }
    throw std::invalid_argument("modulus_from_json: unknown kind '" + kind + "'");
}

}  // namespace

BoundaryFunction boundary_from_json(const json& j, const ConvexDomain& domain) {
    const std::string kind = j.value("kind", "cos_theta");
    Modulus mod = modulus_from_json(j.value("modulus", json()));
    if (kind == "linear") {
        Vec2 dir{1, 0};
        if (j.contains("direction")) dir = {j.at("direction").at(0), j.at("direction").at(1)};
        dir = dir.normalized();
        return BoundaryFunction::from_function(
            domain, [dir](Vec2 p) { return dot(dir, p); }, Modulus::lipschitz(1.0));
    }
    if (kind == "cos_theta") {
        // cos(theta) on a centered domain equals x/|x|-scaled data; we use
        // the x-coordinate normalized by the support radius, which agrees
        // with cos(theta) on circles.
        double r = 0.0;
        for (const auto& v : domain.boundary()) r = std::max(r, v.norm());
        return BoundaryFunction::from_function(
            domain, [r](Vec2 p) { return p.x / r; }, Modulus::lipschitz(1.0 / r));
    }
    if (kind == "constant") {
        double c = j.value("value", 0.0);
        return BoundaryFunction::from_function(domain, [c](Vec2) { return c; },
                                               Modulus::lipschitz(0.0));
    }
    if (kind == "two_bump") {
        // cos(2 theta)-style data: four level-set preimages per level.
        double a = j.value("amplitude", 1.0);
        return BoundaryFunction::from_function(
            domain,
            [a](Vec2 p) {
                double th = p.angle();
                return a * std::cos(2.0 * th);
            },
            Modulus::lipschitz(4.0 * a));
    }
    if (kind == "samples") {
        std::vector<std::pair<double, double>> samples;
        for (const auto& row : j.at("values"))
            samples.emplace_back(row.at(0).get<double>(), row.at(1).get<double>());
        return BoundaryFunction(domain, std::move(samples), mod);
    }
    throw std::invalid_argument("boundary_from_json: unknown kind '" + kind + "'");
}

Experiment load_experiment(const json& config) {
    Experiment ex;
    ex.domain = domain_from_json(config.value("domain", json({{"kind", "disk"}})));
    if (config.contains("norm")) ex.norm = norm_from_json(config.at("norm"));
    if (config.contains("boundary_data"))
        ex.data = boundary_from_json(config.at("boundary_data"), *ex.domain);
    ex.solver = config.value("solver", json::object());
    ex.output = config.value("output", json::object());
    return ex;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json j;
    in >> j;
    return j;
}

void write_raster_csv(const std::string& path, const GridFunction& g) {
    std::ofstream out(path, std::ios::binary);
    out << "x,y,u\n";
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
            if (g.inside(i, j)) {
                Vec2 c = g.center(i, j);
                out << format_double(c.x) << ',' << format_double(c.y) << ','
                    << format_double(g.at(i, j)) << '\n';
            }
}

void write_raster_csv(const std::string& path, const LevelSetFamily& family, int resolution) {
    GridFunction g(family.domain(), resolution);
    std::ofstream out(path, std::ios::binary);
    out << "x,y,u\n";
    for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
            if (g.inside(i, j)) {
                Vec2 c = g.center(i, j);
                out << format_double(c.x) << ',' << format_double(c.y) << ','
                    << format_double(family.value(c)) << '\n';
            }
}

void write_levels_json(const std::string& path, const LevelSetFamily& family) {
    json j;
    j["min_value"] = family.min_value();
    j["max_value"] = family.max_value();
    json levels = json::array();
    for (const Level& lvl : family.levels()) {
        json chains = json::array();
        for (const LevelChain& ch : lvl.chains) {
            json pts = json::array();
            for (const auto& p : ch.pts) pts.push_back({p.x, p.y});
            chains.push_back(pts);
        }
        levels.push_back({{"t", lvl.t}, {"weight", lvl.weight}, {"chains", chains}});
    }
    j["levels"] = levels;
    std::ofstream out(path, std::ios::binary);
    out << j.dump(2) << '\n';
}

void write_energy_trace_csv(const std::string& path, const OracleResult& result) {
    std::ofstream out(path, std::ios::binary);
    out << "iteration,energy,gap\n";
    for (std::size_t i = 0; i < result.energy_trace.size(); ++i)
        out << i << ',' << format_double(result.energy_trace[i]) << ','
            << format_double(result.gap_trace[i]) << '\n';
}

}  // namespace lgrad
