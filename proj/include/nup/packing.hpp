#pragma once

#include <utility>
#include <vector>

#include "nup/common.hpp"
#include "nup/metric.hpp"

namespace nup {

/**
 * Graph on a subset whose independent sets are exactly the R-separated
 * subsets: an edge joins i and j iff rho(i, j) <= max(R(i), R(j)), with a
 * small slack toward "conflict" so boundary ties never admit an infeasible
 * set. Vertices carry original point ids; edges and adjacency use local
 * positions into `vertices`.
 */
struct ConflictGraph {
    Subset vertices;
    std::vector<std::pair<int, int>> edges;   // local index pairs, first < second
    std::vector<std::vector<int>> neighbors;  // local adjacency, ascending

    std::size_t size() const { return vertices.size(); }
};

/// Pair predicate shared by every separation decision in this module.
inline bool pair_conflicts(double rho, double ra, double rb) {
    return rho <= std::max(ra, rb) + kConflictSlack;
}

/// True iff every distinct pair of `subset` is strictly farther than r
/// apart. Vacuously true for at most one point. Throws if r <= 0.
bool is_uniform_separated(const MetricInstance& instance, const Subset& subset, double r);

/// True iff each point's nearest in-subset neighbor is strictly farther
/// than its own radius. Throws if some subset point has no radius.
bool is_R_separated(const MetricInstance& instance, const Subset& subset,
                    const RadiusAssignment& radii);

ConflictGraph conflict_graph(const MetricInstance& instance, const Subset& subset,
                             const RadiusAssignment& radii);

/// Maximum independent set of a conflict graph, exact. Deterministic: among
/// all maximum sets, returns the lexicographically smallest index sequence.
/// Throws CapExceededError above `cap` vertices.
Subset maximum_independent_set(const ConflictGraph& graph, int cap = kExactSubsetCap);

/// Maximum-cardinality R-separated subset, exact (branch and bound on the
/// conflict graph). Same determinism contract as maximum_independent_set.
Subset max_separated_subset_exact(const MetricInstance& instance, const Subset& subset,
                                  const RadiusAssignment& radii, int cap = kExactSubsetCap);

/// Feasible (not necessarily maximum) R-separated subset: points scanned in
/// ascending radius (ties by index), accepted iff compatible with every
/// point accepted so far.
Subset max_separated_subset_greedy(const MetricInstance& instance, const Subset& subset,
                                   const RadiusAssignment& radii);

struct Packing {
    Index count;
    Subset witness;
};

/// Packing number M(r): maximum cardinality of an r-separated subset, with
/// a witness of that size. Exact; subject to the solver cap.
Packing packing_number(const MetricInstance& instance, const Subset& subset, double r,
                       int cap = kExactSubsetCap);

}  // namespace nup
