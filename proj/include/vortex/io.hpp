#ifndef VORTEX_IO_HPP
#define VORTEX_IO_HPP

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "vortex/identities.hpp"
#include "vortex/planar.hpp"
#include "vortex/radial.hpp"
#include "vortex/shooting.hpp"

namespace vortex::io {

using nlohmann::json;

inline constexpr const char* kSchemaRadial = "vortex.radial-solution.v1";
inline constexpr const char* kSchemaReport = "vortex.identity-report.v1";
inline constexpr const char* kSchemaPlanar = "vortex.planar-solution.v1";

json radial_to_json(const RadialSolution& sol);
RadialSolution radial_from_json(const json& j);

json report_to_json(const IdentityReport& rep);

/// Header JSON; the node fields go to a CSV payload file referenced by name.
json planar_header_json(const PlanarSolution& sol, const std::string& payload_name);
void write_planar_payload(const PlanarSolution& sol, const std::string& path);
PlanarSolution planar_from_files(const std::string& header_path);

void write_json(const json& j, const std::string& path);
json read_json(const std::string& path);

void write_atlas_csv(const std::vector<AtlasCell>& cells, const std::string& path);
std::vector<AtlasCell> read_atlas_csv(const std::string& path);

}  // namespace vortex::io

#endif
