#pragma once

#include <memory>
#include <optional>
#include <string>

#include <json.hpp>

#include "lgrad/domain.hpp"
#include "lgrad/grid.hpp"
#include "lgrad/grid_oracle.hpp"
#include "lgrad/level_set.hpp"
#include "lgrad/norm.hpp"

namespace lgrad {

using json = nlohmann::ordered_json;

json norm_to_json(const AnisotropyNorm& n);
AnisotropyNorm norm_from_json(const json& j);

// Generators: {"kind":"disk","radius":1,"samples":256}, "ellipse" (a, b),
// "superellipse" (p, radius), "polygon" (vertices, samples_per_edge),
// "stadium" (half_length, radius), "lens" (tip, opening); or a raw
// {"boundary": [[x,y],...]} list. Optional "beta".
std::unique_ptr<ConvexDomain> domain_from_json(const json& j);

// {"kind":"linear","direction":[x,y]} | {"kind":"cos_theta"} |
// {"kind":"constant","value":c} | {"kind":"two_bump","amplitude":a} |
// {"kind":"samples","values":[[s,f],...], "modulus":{...}}.
BoundaryFunction boundary_from_json(const json& j, const ConvexDomain& domain);

// One experiment = norm + domain + boundary data + solver/output sections.
struct Experiment {
    std::unique_ptr<ConvexDomain> domain;
    std::optional<AnisotropyNorm> norm;
    std::optional<BoundaryFunction> data;
    json solver;
    json output;
};

Experiment load_experiment(const json& config);
json read_json_file(const std::string& path);

// Deterministic artifact writers (%.12g floats, LF newlines).
void write_raster_csv(const std::string& path, const GridFunction& g);
void write_raster_csv(const std::string& path, const LevelSetFamily& family, int resolution);
void write_levels_json(const std::string& path, const LevelSetFamily& family);
void write_energy_trace_csv(const std::string& path, const OracleResult& result);

std::string format_double(double v);

}  // namespace lgrad
