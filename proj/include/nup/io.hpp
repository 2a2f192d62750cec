#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "nup/bounds.hpp"
#include "nup/metric.hpp"

namespace nup {

/// An instance file: the metric plus an optional full radius assignment.
struct InstanceFile {
    MetricInstance instance;
    std::optional<RadiusAssignment> radii;
};

/// Parses the instance JSON schema:
///   {"kind":"coords","dim":2,"norm":"l2","points":[[0,0],[1,2]],"radii":[0.5,0.5]}
///   {"kind":"matrix","dist":[[0,1],[1,0]],"radii":[0.4,0.4]}
/// "radii" is optional and must list one positive value per point.
InstanceFile parse_instance(const nlohmann::json& j,
                            double tolerance = kDefaultTolerance);

nlohmann::json instance_to_json(const MetricInstance& instance,
                                const std::optional<RadiusAssignment>& radii = std::nullopt);

/// Serializes a report with the stable schema
///   {"n":..,"diam":..,"rbar":..,
///    "ddim":{"subset_upper":..,"subset_lower":..,"ambient_upper":..,"mode":..},
///    "bounds":{"theorem1":..,"classical":..,"volumetric":..},
///    "chain":[{"link":..,"lhs":..,"rhs":..,"holds":..,"slack":..},..],
///    "verdict":"pass|fail|na", ...}
/// plus witness, mst and volumetric check details.
nlohmann::json report_to_json(const BoundReport& report);

InstanceFile load_instance(const std::string& path, double tolerance = kDefaultTolerance);
nlohmann::json load_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace nup
