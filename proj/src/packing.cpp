#include "nup/packing.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>

namespace nup {

namespace {

inline std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

/// Branch-and-bound maximum independent set over bitmask adjacency.
/// Branches on the max-degree vertex of the candidate set, bounds with a
/// greedy clique cover, and absorbs isolated vertices eagerly.
class MisSolver {
public:
    MisSolver(int n, std::vector<std::uint64_t> adjacency)
        : n_(n), adj_(std::move(adjacency)) {}

    int max_size(std::uint64_t candidates) {
        best_ = 0;
        target_ = std::numeric_limits<int>::max();
        search(candidates, 0);
        return best_;
    }

    /// True iff `candidates` contains an independent set of size >= k.
    bool exists(std::uint64_t candidates, int k) {
        if (k <= 0) return true;
        if (std::popcount(candidates) < k) return false;
        best_ = 0;
        target_ = k;
        search(candidates, 0);
        return best_ >= k;
    }

    /// Lexicographically smallest maximum independent set (local indices).
    std::vector<int> lex_smallest_maximum() {
        const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : bit(n_) - 1;
        int need = max_size(all);
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(need));
        std::uint64_t pool = all;
        for (int v = 0; v < n_ && need > 0; ++v) {
            if (!(pool & bit(v))) continue;
            const std::uint64_t taken = pool & ~bit(v) & ~adj_[static_cast<std::size_t>(v)];
            if (exists(taken, need - 1)) {
                out.push_back(v);
                pool = taken;
                --need;
            } else {
                pool &= ~bit(v);
            }
        }
        return out;
    }

private:
    int clique_cover_bound(std::uint64_t pool) const {
        std::uint64_t cliques[64];
        int count = 0;
        for (std::uint64_t rest = pool; rest != 0; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            bool placed = false;
            for (int c = 0; c < count; ++c) {
                // v extends a clique iff adjacent to all of its members
                if ((cliques[c] & ~adj_[static_cast<std::size_t>(v)]) == 0) {
                    cliques[c] |= bit(v);
                    placed = true;
                    break;
                }
            }
            if (!placed) cliques[count++] = bit(v);
        }
        return count;
    }

    void search(std::uint64_t pool, int current) {
        if (best_ >= target_) return;

        // vertices without conflicts in the pool always join the set
        std::uint64_t isolated = 0;
        for (std::uint64_t rest = pool; rest != 0; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            if ((adj_[static_cast<std::size_t>(v)] & pool) == 0) isolated |= bit(v);
        }
        current += std::popcount(isolated);
        pool &= ~isolated;

        if (pool == 0) {
            best_ = std::max(best_, current);
            return;
        }
        if (current + clique_cover_bound(pool) <= best_) return;

        int branch = -1;
        int branch_degree = -1;
        for (std::uint64_t rest = pool; rest != 0; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            const int deg = std::popcount(adj_[static_cast<std::size_t>(v)] & pool);
            if (deg > branch_degree) {
                branch_degree = deg;
                branch = v;
            }
        }

        search(pool & ~bit(branch) & ~adj_[static_cast<std::size_t>(branch)], current + 1);
        search(pool & ~bit(branch), current);
    }

    int n_;
    std::vector<std::uint64_t> adj_;
    int best_ = 0;
    int target_ = 0;
};

std::vector<std::uint64_t> adjacency_masks(const ConflictGraph& graph) {
    std::vector<std::uint64_t> adj(graph.size(), 0);
    for (const auto& [a, b] : graph.edges) {
        adj[static_cast<std::size_t>(a)] |= bit(b);
        adj[static_cast<std::size_t>(b)] |= bit(a);
    }
    return adj;
}

}  // namespace

bool is_uniform_separated(const MetricInstance& instance, const Subset& subset, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("separation radius must be positive");
    check_subset(instance, subset);
    for (std::size_t a = 0; a < subset.size(); ++a) {
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
            if (pair_conflicts(instance.distance(subset[a], subset[b]), r, r)) return false;
        }
    }
    return true;
}

bool is_R_separated(const MetricInstance& instance, const Subset& subset,
                    const RadiusAssignment& radii) {
    check_subset(instance, subset);
    for (std::size_t a = 0; a < subset.size(); ++a) {
        const double ra = radii.at(subset[a]);
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
            if (pair_conflicts(instance.distance(subset[a], subset[b]), ra, radii.at(subset[b]))) {
                return false;
            }
        }
    }
    return true;
}

ConflictGraph conflict_graph(const MetricInstance& instance, const Subset& subset,
                             const RadiusAssignment& radii) {
    check_subset(instance, subset);
    ConflictGraph graph;
    graph.vertices = subset;
    graph.neighbors.assign(subset.size(), {});
    for (std::size_t a = 0; a < subset.size(); ++a) {
        const double ra = radii.at(subset[a]);
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
            if (pair_conflicts(instance.distance(subset[a], subset[b]), ra, radii.at(subset[b]))) {
                graph.edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
                graph.neighbors[a].push_back(static_cast<int>(b));
                graph.neighbors[b].push_back(static_cast<int>(a));
            }
        }
    }
    return graph;
}

Subset maximum_independent_set(const ConflictGraph& graph, int cap) {
    if (graph.size() > static_cast<std::size_t>(std::min(cap, 64))) {
        throw CapExceededError("exact solver cap exceeded: " + std::to_string(graph.size()) +
                               " vertices > " + std::to_string(std::min(cap, 64)));
    }
    MisSolver solver(static_cast<int>(graph.size()), adjacency_masks(graph));
    Subset out;
    for (int v : solver.lex_smallest_maximum()) {
        out.push_back(graph.vertices[static_cast<std::size_t>(v)]);
    }
    return out;
}

Subset max_separated_subset_exact(const MetricInstance& instance, const Subset& subset,
                                  const RadiusAssignment& radii, int cap) {
    return maximum_independent_set(conflict_graph(instance, subset, radii), cap);
}

Subset max_separated_subset_greedy(const MetricInstance& instance, const Subset& subset,
                                   const RadiusAssignment& radii) {
    check_subset(instance, subset);
    std::vector<Index> order(subset);
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
        const double ra = radii.at(a);
        const double rb = radii.at(b);
        return ra < rb || (ra == rb && a < b);
    });

    Subset accepted;
    for (Index candidate : order) {
        bool ok = true;
        for (Index held : accepted) {
            if (pair_conflicts(instance.distance(candidate, held), radii.at(candidate),
                               radii.at(held))) {
                ok = false;
                break;
            }
        }
        if (ok) accepted.push_back(candidate);
    }
    std::sort(accepted.begin(), accepted.end());
    return accepted;
}

Packing packing_number(const MetricInstance& instance, const Subset& subset, double r, int cap) {
    if (!(r > 0.0)) throw std::invalid_argument("packing radius must be positive");
    Subset witness =
        max_separated_subset_exact(instance, subset, RadiusAssignment::uniform(subset, r), cap);
    return {static_cast<Index>(witness.size()), std::move(witness)};
}

}  // namespace nup
