#include "nup/io.hpp"

#include <fstream>
#include <sstream>

namespace nup {

using nlohmann::json;

InstanceFile parse_instance(const json& j, double tolerance) {
    if (!j.is_object() || !j.contains("kind")) {
        throw std::invalid_argument("instance JSON must be an object with a \"kind\" field");
    }
    const std::string kind = j.at("kind").get<std::string>();

    std::optional<MetricInstance> instance;
    if (kind == "coords") {
        const auto& points_json = j.at("points");
        if (!points_json.is_array() || points_json.empty()) {
            throw std::invalid_argument("\"points\" must be a nonempty array");
        }
        const Index n = static_cast<Index>(points_json.size());
        const Index d = j.contains("dim") ? j.at("dim").get<Index>()
                                          : static_cast<Index>(points_json.at(0).size());
        if (d < 1) throw std::invalid_argument("\"dim\" must be >= 1");

        Eigen::MatrixXd points(n, d);
        for (Index i = 0; i < n; ++i) {
            const auto& row = points_json.at(static_cast<std::size_t>(i));
            if (static_cast<Index>(row.size()) != d) {
                throw std::invalid_argument("point " + std::to_string(i) + " has " +
                                            std::to_string(row.size()) + " coordinates, expected " +
                                            std::to_string(d));
            }
            for (Index c = 0; c < d; ++c) {
                points(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
            }
        }
        const Norm norm =
            j.contains("norm") ? norm_from_string(j.at("norm").get<std::string>()) : Norm::L2;
        instance = MetricInstance::from_coords(std::move(points), norm);
    } else if (kind == "matrix") {
        const auto& dist_json = j.at("dist");
        if (!dist_json.is_array() || dist_json.empty()) {
            throw std::invalid_argument("\"dist\" must be a nonempty array of rows");
        }
        const Index n = static_cast<Index>(dist_json.size());
        Eigen::MatrixXd dist(n, n);
        for (Index i = 0; i < n; ++i) {
            const auto& row = dist_json.at(static_cast<std::size_t>(i));
            if (static_cast<Index>(row.size()) != n) {
                throw std::invalid_argument("distance matrix must be square");
            }
            for (Index c = 0; c < n; ++c) {
                dist(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
            }
        }
        instance = MetricInstance::from_matrix(std::move(dist), tolerance);
    } else {
        throw std::invalid_argument("unknown instance kind: " + kind);
    }

    InstanceFile file{std::move(*instance), std::nullopt};
    if (j.contains("radii") && !j.at("radii").is_null()) {
        const auto& radii_json = j.at("radii");
        if (static_cast<Index>(radii_json.size()) != file.instance.size()) {
            throw std::invalid_argument("\"radii\" must list one value per point");
        }
        RadiusAssignment radii;
        for (Index i = 0; i < file.instance.size(); ++i) {
            radii.set(i, radii_json.at(static_cast<std::size_t>(i)).get<double>());
        }
        file.radii = std::move(radii);
    }
    return file;
}

json instance_to_json(const MetricInstance& instance,
                      const std::optional<RadiusAssignment>& radii) {
    json j;
    if (instance.is_coords()) {
        j["kind"] = "coords";
        j["dim"] = instance.dim();
        j["norm"] = to_string(instance.norm());
        json points = json::array();
        for (Index i = 0; i < instance.size(); ++i) {
            json row = json::array();
            for (Index c = 0; c < instance.dim(); ++c) row.push_back(instance.coords()(i, c));
            points.push_back(std::move(row));
        }
        j["points"] = std::move(points);
    } else {
        j["kind"] = "matrix";
        const Eigen::MatrixXd dist = instance.distance_matrix();
        json rows = json::array();
        for (Index i = 0; i < instance.size(); ++i) {
            json row = json::array();
            for (Index c = 0; c < instance.size(); ++c) row.push_back(dist(i, c));
            rows.push_back(std::move(row));
        }
        j["dist"] = std::move(rows);
    }
    if (radii) {
        json values = json::array();
        for (Index i = 0; i < instance.size(); ++i) values.push_back(radii->at(i));
        j["radii"] = std::move(values);
    }
    return j;
}

json report_to_json(const BoundReport& report) {
    json j;
    j["instance"] = report.instance_desc;
    j["n"] = report.n;
    j["diam"] = report.diam;
    j["rbar"] = report.rbar;

    json ddim;
    ddim["subset_upper"] = report.ddim_subset_upper;
    ddim["subset_lower"] =
        report.ddim_subset_lower ? json(*report.ddim_subset_lower) : json(nullptr);
    ddim["ambient_upper"] = report.ddim_ambient_upper;
    ddim["mode"] = to_string(report.mode);
    j["ddim"] = std::move(ddim);

    json bounds;
    bounds["theorem1"] = report.theorem1;
    bounds["classical"] = report.classical ? json(*report.classical) : json(nullptr);
    bounds["volumetric"] = report.volumetric ? json(*report.volumetric) : json(nullptr);
    bounds["theorem1_at_ddim_lower"] =
        report.theorem1_at_lower ? json(*report.theorem1_at_lower) : json(nullptr);
    j["bounds"] = std::move(bounds);

    json chain = json::array();
    for (const ChainLink& link : report.chain) {
        chain.push_back({{"link", link.name},
                         {"lhs", link.lhs},
                         {"rhs", link.rhs},
                         {"holds", link.holds},
                         {"slack", link.slack}});
    }
    j["chain"] = std::move(chain);

    j["slack"] = report.slack;
    j["verdict"] = report.verdict;
    j["witness"] = report.witness;

    if (report.mst) {
        json mst;
        json edges = json::array();
        for (const TreeEdge& e : report.mst->tree.edges) {
            edges.push_back({e.u, e.v, e.length});
        }
        mst["edges"] = std::move(edges);
        mst["total_length"] = report.mst->tree.total_length;
        mst["root"] = report.mst->assignment.root;
        json assignment = json::object();
        for (const auto& [vertex, assigned] : report.mst->assignment.by_vertex) {
            assignment[std::to_string(vertex)] = assigned.edge_index;
        }
        mst["assignment"] = std::move(assignment);
        j["mst"] = std::move(mst);
    } else {
        j["mst"] = nullptr;
    }

    if (report.volumetric_checks) {
        const VolumetricChecks& v = *report.volumetric_checks;
        j["volumetric_checks"] = {{"dim", v.dim},
                                  {"sum_power", v.sum_power},
                                  {"limit", v.limit},
                                  {"sum_holds", v.sum_holds},
                                  {"jensen_lhs", v.jensen.lhs},
                                  {"jensen_rhs", v.jensen.rhs},
                                  {"jensen_holds", v.jensen.holds},
                                  {"bound", v.bound},
                                  {"cardinality_holds", v.cardinality_holds},
                                  {"disjoint_holds", v.disjoint_holds},
                                  {"holds", v.holds}};
    } else {
        j["volumetric_checks"] = nullptr;
    }

    if (!report.note.empty()) j["note"] = report.note;
    return j;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

InstanceFile load_instance(const std::string& path, double tolerance) {
    return parse_instance(load_json(path), tolerance);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

}  // namespace nup
