#include "nup/spanning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

namespace nup {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

SpanningTree minimum_spanning_tree(const MetricInstance& instance, const Subset& subset) {
    check_subset(instance, subset);
    if (subset.empty()) throw std::invalid_argument("spanning tree of an empty subset");

    SpanningTree tree;
    tree.vertices = subset;
    const std::size_t n = subset.size();
    if (n == 1) return tree;

    struct Candidate {
        double length;
        std::size_t a;  // local, a < b
        std::size_t b;
    };
    std::vector<Candidate> candidates;
    candidates.reserve(n * (n - 1) / 2);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            candidates.push_back({instance.distance(subset[a], subset[b]), a, b});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [&](const Candidate& x, const Candidate& y) {
        if (x.length != y.length) return x.length < y.length;
        if (subset[x.a] != subset[y.a]) return subset[x.a] < subset[y.a];
        return subset[x.b] < subset[y.b];
    });

    DisjointSets components(n);
    for (const Candidate& c : candidates) {
        if (!components.unite(c.a, c.b)) continue;
        tree.edges.push_back({subset[c.a], subset[c.b], c.length});
        tree.total_length += c.length;
        if (tree.edges.size() == n - 1) break;
    }
    return tree;
}

double mst_total_length_prim(const MetricInstance& instance, const Subset& subset) {
    check_subset(instance, subset);
    if (subset.empty()) throw std::invalid_argument("spanning tree of an empty subset");
    const std::size_t n = subset.size();
    if (n == 1) return 0.0;

    std::vector<double> key(n, std::numeric_limits<double>::infinity());
    std::vector<bool> in_tree(n, false);
    key[0] = 0.0;
    double total = 0.0;
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t next = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_tree[v] && (next == n || key[v] < key[next])) next = v;
        }
        in_tree[next] = true;
        total += key[next];
        for (std::size_t v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            key[v] = std::min(key[v], instance.distance(subset[next], subset[v]));
        }
    }
    return total;
}

Index root_min_radius(const SpanningTree& tree, const RadiusAssignment& radii) {
    if (tree.vertices.empty()) throw std::invalid_argument("tree has no vertices");
    Index best = tree.vertices.front();
    double best_radius = radii.at(best);
    for (Index v : tree.vertices) {
        const double r = radii.at(v);
        if (r < best_radius) {
            best_radius = r;
            best = v;
        }
    }
    return best;
}

EdgeAssignment assign_edges(const SpanningTree& tree, Index root) {
    if (!std::binary_search(tree.vertices.begin(), tree.vertices.end(), root)) {
        throw std::invalid_argument("root " + std::to_string(root) + " is not a tree vertex");
    }

    std::map<Index, std::vector<int>> incident;  // vertex -> edge indices
    for (int e = 0; e < static_cast<int>(tree.edges.size()); ++e) {
        incident[tree.edges[static_cast<std::size_t>(e)].u].push_back(e);
        incident[tree.edges[static_cast<std::size_t>(e)].v].push_back(e);
    }

    EdgeAssignment assignment;
    assignment.root = root;

    std::map<Index, bool> visited;
    for (Index v : tree.vertices) visited[v] = false;
    std::queue<Index> frontier;
    frontier.push(root);
    visited[root] = true;
    while (!frontier.empty()) {
        const Index at = frontier.front();
        frontier.pop();
        for (int e : incident[at]) {
            const TreeEdge& edge = tree.edges[static_cast<std::size_t>(e)];
            const Index other = edge.u == at ? edge.v : edge.u;
            if (visited[other]) continue;
            visited[other] = true;
            assignment.by_vertex[other] = {e, edge.length};
            frontier.push(other);
        }
    }

    if (assignment.by_vertex.size() + 1 != tree.vertices.size()) {
        throw std::invalid_argument("tree is not connected over its vertex set");
    }
    return assignment;
}

RadiusEdgeCheck radius_edge_check(const EdgeAssignment& assignment, const RadiusAssignment& radii,
                                  double slack) {
    RadiusEdgeCheck check;
    for (const auto& [vertex, assigned] : assignment.by_vertex) {
        const double r = radii.at(vertex);
        if (r > assigned.length + slack) {
            check.holds = false;
            check.violations.push_back({vertex, r, assigned.length});
        }
    }
    return check;
}

TalwarCheck talwar_check(const MetricInstance& instance, const Subset& subset, double ddim_value,
                         double tolerance) {
    check_subset(instance, subset);
    if (subset.size() < 2) throw std::invalid_argument("talwar_check needs at least two points");
    if (!(ddim_value > 0.0)) {
        throw std::invalid_argument("talwar_check needs a positive dimension value");
    }

    const double n = static_cast<double>(subset.size());
    TalwarCheck check;
    check.lhs = minimum_spanning_tree(instance, subset).total_length;
    check.rhs = 4.0 * diameter(instance, subset) * std::pow(n, 1.0 - 1.0 / ddim_value);
    check.holds = check.lhs <= check.rhs + tolerance;
    return check;
}

}  // namespace nup
