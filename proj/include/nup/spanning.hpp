#pragma once

#include <map>
#include <vector>

#include "nup/common.hpp"
#include "nup/metric.hpp"

namespace nup {

struct TreeEdge {
    Index u;
    Index v;
    double length;
};

struct SpanningTree {
    Subset vertices;
    std::vector<TreeEdge> edges;  // |vertices| - 1 edges, instance distances
    double total_length = 0.0;
};

/// Minimum spanning tree of the subset under the instance metric (Kruskal).
/// Ties are broken by comparing edges as (length, smaller id, larger id),
/// so the result is deterministic; the total length is unique regardless.
SpanningTree minimum_spanning_tree(const MetricInstance& instance, const Subset& subset);

/// MST total length by Prim's algorithm; an independent cross-check for
/// minimum_spanning_tree's total.
double mst_total_length_prim(const MetricInstance& instance, const Subset& subset);

/// Tree vertex with minimal radius, ties broken by smallest index.
Index root_min_radius(const SpanningTree& tree, const RadiusAssignment& radii);

struct EdgeAssignment {
    struct Assigned {
        int edge_index;  // into SpanningTree::edges
        double length;
    };

    Index root = -1;
    std::map<Index, Assigned> by_vertex;  // every vertex except the root
};

/// Orients the tree away from `root` and assigns each edge to its child
/// endpoint, the one farther from the root in tree hops. Every non-root
/// vertex receives exactly one edge.
EdgeAssignment assign_edges(const SpanningTree& tree, Index root);

struct RadiusEdgeCheck {
    struct Violation {
        Index vertex;
        double radius;
        double edge_length;
    };

    bool holds = true;
    std::vector<Violation> violations;
};

/// Verifies R(a) <= l(e(a)) for every assigned vertex. Guaranteed to hold
/// when the tree spans an R-separated subset.
RadiusEdgeCheck radius_edge_check(const EdgeAssignment& assignment, const RadiusAssignment& radii,
                                  double slack = kConflictSlack);

struct TalwarCheck {
    double lhs = 0.0;  // MST total length
    double rhs = 0.0;  // 4 * diam * N^(1 - 1/ddim)
    bool holds = true;
};

/// Checks the MST length bound l(E) <= 4 diam(A) N^(1 - 1/ddim). A larger
/// ddim estimate only weakens the check.
TalwarCheck talwar_check(const MetricInstance& instance, const Subset& subset, double ddim_value,
                         double tolerance = kDefaultTolerance);

}  // namespace nup
