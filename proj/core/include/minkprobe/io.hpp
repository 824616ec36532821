#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "minkprobe/distances.hpp"
#include "minkprobe/halfspace.hpp"
#include "minkprobe/measure.hpp"
#include "minkprobe/minkowski.hpp"
#include "minkprobe/polytope.hpp"

namespace minkprobe {

using nlohmann::json;

// {"dim":2|3, "vertices":[[..],..], "facets":[[..],..] (3D only)}
json polytope_to_json(const Polytope& body);
Polytope polytope_from_json(const json& j);

// {"normals":[[..],..], "offsets":[..]}; dim taken from the normal length.
json halfspaces_to_json(const HalfspaceRep& rep);
HalfspaceRep halfspaces_from_json(const json& j);

// {"dim":2|3, "atoms":[{"n":[..],"w":..},..]}
json measure_to_json(const DiscreteSphericalMeasure& mu);
// Also accepts a normals file, read as its empirical measure.
DiscreteSphericalMeasure measure_from_json(const json& j);

// {"dim":2|3, "normals":[[..],..]}
json normals_to_json(int dim, const std::vector<Vec>& normals);
std::vector<Vec> normals_from_json(const json& j, int& dim);

// {"body":{..},"residual":..,"iterations":..,"converged":..}
json report_to_json(const ReconstructionReport& report);

enum class DistanceKind { TotalVariation, BoundedLipschitz, Convex };

// {"d_tv":..} | {"d_bl":..} | {"d_c":{"lower":..,"upper":..,"witness":".."}}
json distance_report(const DiscreteSphericalMeasure& mu, const DiscreteSphericalMeasure& nu, DistanceKind which);

json read_json_file(const std::filesystem::path& path);
// Pretty-printed with a trailing newline; byte-identical for identical values.
void write_json_file(const std::filesystem::path& path, const json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

// Named body (square, cube, ngon:64, ...) or path to a polytope JSON file.
Polytope load_body(const std::string& spec);

}  // namespace minkprobe
