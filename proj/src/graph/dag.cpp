#include <gsem/graph/dag.hpp>

#include <algorithm>
#include <functional>
#include <queue>
#include <string>

#include <gsem/error.hpp>

namespace gsem::graph {

namespace {

std::string edge_str(const Edge& e) {
    return std::to_string(e.first) + " -> " + std::to_string(e.second);
}

// Kahn's algorithm with a min-heap; returns fewer than p nodes on a cycle.
std::vector<Node> kahn(std::size_t p, const std::vector<Edge>& edges) {
    std::vector<std::vector<Node>> out(p);
    std::vector<std::size_t> indegree(p, 0);
    for (const auto& [a, b] : edges) {
        out[a].push_back(b);
        ++indegree[b];
    }
    std::priority_queue<Node, std::vector<Node>, std::greater<>> ready;
    for (Node v = 0; v < p; ++v)
        if (indegree[v] == 0) ready.push(v);
    std::vector<Node> order;
    order.reserve(p);
    while (!ready.empty()) {
        const Node v = ready.top();
        ready.pop();
        order.push_back(v);
        for (Node w : out[v])
            if (--indegree[w] == 0) ready.push(w);
    }
    return order;
}

}  // namespace

Dag::Dag(std::size_t p) : p_(p), adjacency_(p * p, 0) {}

Dag::Dag(std::size_t p, std::vector<Edge> edges) : p_(p), edges_(std::move(edges)), adjacency_(p * p, 0) {
    for (const auto& e : edges_) {
        if (e.first >= p_ || e.second >= p_)
            throw PreconditionError("edge " + edge_str(e) + " references a node outside [0, " + std::to_string(p_) + ")");
        if (e.first == e.second) throw PreconditionError("self-loop on node " + std::to_string(e.first));
        char& slot = adjacency_[e.first * p_ + e.second];
        if (slot) throw PreconditionError("duplicate edge " + edge_str(e));
        slot = 1;
    }
    std::sort(edges_.begin(), edges_.end());
    if (kahn(p_, edges_).size() != p_) throw PreconditionError("edge set contains a directed cycle");
}

bool Dag::has_edge(Node parent, Node child) const {
    if (parent >= p_ || child >= p_) return false;
    return adjacency_[parent * p_ + child] != 0;
}

std::vector<Node> Dag::parents(Node child) const {
    std::vector<Node> out;
    for (Node a = 0; a < p_; ++a)
        if (has_edge(a, child)) out.push_back(a);
    return out;
}

std::vector<Node> Dag::children(Node parent) const {
    std::vector<Node> out;
    for (Node b = 0; b < p_; ++b)
        if (has_edge(parent, b)) out.push_back(b);
    return out;
}

Ordering::Ordering(std::vector<Node> nodes) : nodes_(std::move(nodes)), positions_(nodes_.size(), nodes_.size()) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node v = nodes_[i];
        if (v >= nodes_.size() || positions_[v] != nodes_.size())
            throw PreconditionError("ordering is not a permutation of [0, " + std::to_string(nodes_.size()) + ")");
        positions_[v] = i;
    }
}

Ordering Ordering::identity(std::size_t p) {
    std::vector<Node> nodes(p);
    for (Node v = 0; v < p; ++v) nodes[v] = v;
    return Ordering(std::move(nodes));
}

Cpdag::Cpdag(std::size_t p) : p_(p) {}

Cpdag::Cpdag(std::size_t p, std::vector<Edge> directed, std::vector<Edge> undirected)
    : p_(p), directed_(std::move(directed)), undirected_(std::move(undirected)) {
    std::vector<char> seen(p_ * p_, 0);
    auto claim = [&](Node a, Node b) {
        if (a >= p_ || b >= p_)
            throw PreconditionError("edge references a node outside [0, " + std::to_string(p_) + ")");
        if (a == b) throw PreconditionError("self-loop on node " + std::to_string(a));
        const Node lo = std::min(a, b), hi = std::max(a, b);
        if (seen[lo * p_ + hi]) throw PreconditionError("pair " + std::to_string(lo) + "-" + std::to_string(hi) + " listed twice");
        seen[lo * p_ + hi] = 1;
    };
    for (const auto& [a, b] : directed_) claim(a, b);
    for (auto& e : undirected_) {
        claim(e.first, e.second);
        if (e.first > e.second) std::swap(e.first, e.second);
    }
    std::sort(directed_.begin(), directed_.end());
    std::sort(undirected_.begin(), undirected_.end());
}

EdgeKind Cpdag::kind(Node a, Node b) const {
    if (std::binary_search(directed_.begin(), directed_.end(), Edge{a, b})) return EdgeKind::forward;
    if (std::binary_search(directed_.begin(), directed_.end(), Edge{b, a})) return EdgeKind::backward;
    if (std::binary_search(undirected_.begin(), undirected_.end(), Edge{std::min(a, b), std::max(a, b)}))
        return EdgeKind::undirected;
    return EdgeKind::none;
}

Ordering topological_order(const Dag& g) {
    return Ordering(kahn(g.size(), g.edges()));
}

std::vector<Node> descendants(const Dag& g, Node j) {
    if (j >= g.size()) throw PreconditionError("node " + std::to_string(j) + " out of range");
    std::vector<char> reached(g.size(), 0);
    std::vector<Node> stack{j};
    while (!stack.empty()) {
        const Node v = stack.back();
        stack.pop_back();
        for (Node w : g.children(v))
            if (!reached[w]) {
                reached[w] = 1;
                stack.push_back(w);
            }
    }
    std::vector<Node> out;
    for (Node v = 0; v < g.size(); ++v)
        if (reached[v] && v != j) out.push_back(v);
    return out;
}

bool is_consistent(const Ordering& ordering, const Dag& g) {
    if (ordering.size() != g.size()) throw DimensionError("ordering and graph sizes differ");
    return std::all_of(g.edges().begin(), g.edges().end(),
                       [&](const Edge& e) { return ordering.position(e.first) < ordering.position(e.second); });
}

std::vector<VStructure> v_structures(const Dag& g) {
    std::vector<VStructure> out;
    for (Node c = 0; c < g.size(); ++c) {
        const auto pa = g.parents(c);
        for (std::size_t i = 0; i < pa.size(); ++i)
            for (std::size_t k = i + 1; k < pa.size(); ++k)
                if (!g.adjacent(pa[i], pa[k])) out.push_back({pa[i], c, pa[k]});
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Working PDAG for Meek propagation.
class Pdag {
public:
    explicit Pdag(std::size_t p) : p_(p), directed_(p * p, 0), undirected_(p * p, 0) {}

    bool adjacent(Node a, Node b) const { return directed(a, b) || directed(b, a) || undirected(a, b); }
    bool directed(Node a, Node b) const { return directed_[a * p_ + b] != 0; }
    bool undirected(Node a, Node b) const { return undirected_[a * p_ + b] != 0; }

    void set_undirected(Node a, Node b) { undirected_[a * p_ + b] = undirected_[b * p_ + a] = 1; }
    void orient(Node a, Node b) {
        undirected_[a * p_ + b] = undirected_[b * p_ + a] = 0;
        directed_[a * p_ + b] = 1;
    }

    std::size_t size() const { return p_; }

private:
    std::size_t p_;
    std::vector<char> directed_;
    std::vector<char> undirected_;
};

bool meek_r1(const Pdag& g, Node a, Node b) {
    for (Node c = 0; c < g.size(); ++c)
        if (c != b && g.directed(c, a) && !g.adjacent(c, b)) return true;
    return false;
}

bool meek_r2(const Pdag& g, Node a, Node b) {
    for (Node c = 0; c < g.size(); ++c)
        if (g.directed(a, c) && g.directed(c, b)) return true;
    return false;
}

bool meek_r3(const Pdag& g, Node a, Node b) {
    for (Node c = 0; c < g.size(); ++c) {
        if (!g.undirected(a, c) || !g.directed(c, b)) continue;
        for (Node d = c + 1; d < g.size(); ++d)
            if (g.undirected(a, d) && g.directed(d, b) && !g.adjacent(c, d)) return true;
    }
    return false;
}

bool meek_r4(const Pdag& g, Node a, Node b) {
    for (Node c = 0; c < g.size(); ++c) {
        if (c == b || !g.undirected(a, c) || g.adjacent(c, b)) continue;
        for (Node d = 0; d < g.size(); ++d)
            if (d != a && g.directed(c, d) && g.directed(d, b) && g.adjacent(a, d)) return true;
    }
    return false;
}

}  // namespace

Cpdag dag_to_cpdag(const Dag& g) {
    const std::size_t p = g.size();
    Pdag pdag(p);
    for (const auto& [a, b] : g.edges()) pdag.set_undirected(a, b);
    for (const auto& v : v_structures(g)) {
        pdag.orient(v.left, v.collider);
        pdag.orient(v.right, v.collider);
    }

    bool changed = true;
    while (changed) {
        changed = false;
        for (Node a = 0; a < p; ++a)
            for (Node b = 0; b < p; ++b) {
                if (a == b || !pdag.undirected(a, b)) continue;
                if (meek_r1(pdag, a, b) || meek_r2(pdag, a, b) || meek_r3(pdag, a, b) || meek_r4(pdag, a, b)) {
                    pdag.orient(a, b);
                    changed = true;
                }
            }
    }

    std::vector<Edge> directed, undirected;
    for (Node a = 0; a < p; ++a)
        for (Node b = 0; b < p; ++b) {
            if (pdag.directed(a, b)) directed.emplace_back(a, b);
            if (a < b && pdag.undirected(a, b)) undirected.emplace_back(a, b);
        }
    return Cpdag(p, std::move(directed), std::move(undirected));
}

std::size_t hamming_dag(const Dag& truth, const Dag& estimate, ReversalCost reversal) {
    if (truth.size() != estimate.size())
        throw DimensionError("graphs have " + std::to_string(truth.size()) + " and " +
                             std::to_string(estimate.size()) + " nodes");
    const std::size_t p = truth.size();
    std::size_t distance = 0;
    for (Node a = 0; a < p; ++a)
        for (Node b = a + 1; b < p; ++b) {
            const bool ab_t = truth.has_edge(a, b), ba_t = truth.has_edge(b, a);
            const bool ab_e = estimate.has_edge(a, b), ba_e = estimate.has_edge(b, a);
            if (reversal == ReversalCost::two)
                distance += static_cast<std::size_t>(ab_t != ab_e) + static_cast<std::size_t>(ba_t != ba_e);
            else
                distance += static_cast<std::size_t>(ab_t != ab_e || ba_t != ba_e);
        }
    return distance;
}

std::size_t hamming_cpdag(const Cpdag& truth, const Cpdag& estimate) {
    if (truth.size() != estimate.size())
        throw DimensionError("graphs have " + std::to_string(truth.size()) + " and " +
                             std::to_string(estimate.size()) + " nodes");
    std::size_t distance = 0;
    for (Node a = 0; a < truth.size(); ++a)
        for (Node b = a + 1; b < truth.size(); ++b)
            if (truth.kind(a, b) != estimate.kind(a, b)) ++distance;
    return distance;
}

}  // namespace gsem::graph
