#ifndef GSEM_GRAPH_DAG_HPP
#define GSEM_GRAPH_DAG_HPP

#include <cstddef>
#include <utility>
#include <vector>

namespace gsem::graph {

using Node = std::size_t;
/// (parent, child) for directed edges; (low, high) for undirected ones.
using Edge = std::pair<Node, Node>;

/// Directed acyclic graph on nodes [0, p).
///
/// Construction verifies node ranges, rejects self-loops and duplicate
/// edges, and proves acyclicity with a topological sort; every Dag value is
/// therefore acyclic.
class Dag {
public:
    explicit Dag(std::size_t p = 0);
    Dag(std::size_t p, std::vector<Edge> edges);

    std::size_t size() const noexcept { return p_; }
    /// Sorted by (parent, child).
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    bool has_edge(Node parent, Node child) const;
    bool adjacent(Node a, Node b) const { return has_edge(a, b) || has_edge(b, a); }
    std::vector<Node> parents(Node child) const;
    std::vector<Node> children(Node parent) const;

    friend bool operator==(const Dag& a, const Dag& b) { return a.p_ == b.p_ && a.edges_ == b.edges_; }

private:
    std::size_t p_;
    std::vector<Edge> edges_;
    std::vector<char> adjacency_;  // p x p, row = parent
};

/// A permutation of [0, p) listing nodes in order.
class Ordering {
public:
    Ordering() = default;
    /// Throws PreconditionError unless `nodes` is a permutation of [0, size).
    explicit Ordering(std::vector<Node> nodes);
    static Ordering identity(std::size_t p);

    std::size_t size() const noexcept { return nodes_.size(); }
    Node operator[](std::size_t position) const { return nodes_[position]; }
    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    /// Position of `node` within the ordering.
    std::size_t position(Node node) const { return positions_.at(node); }

    friend bool operator==(const Ordering& a, const Ordering& b) { return a.nodes_ == b.nodes_; }

private:
    std::vector<Node> nodes_;
    std::vector<std::size_t> positions_;
};

enum class EdgeKind { none, forward, backward, undirected };

/// Partially directed graph representing a Markov equivalence class.
class Cpdag {
public:
    explicit Cpdag(std::size_t p = 0);
    /// Undirected edges may be given in either orientation; they are stored as
    /// (low, high). Throws PreconditionError if a pair appears twice.
    Cpdag(std::size_t p, std::vector<Edge> directed, std::vector<Edge> undirected);

    std::size_t size() const noexcept { return p_; }
    const std::vector<Edge>& directed() const noexcept { return directed_; }
    const std::vector<Edge>& undirected() const noexcept { return undirected_; }

    /// Relationship of the pair seen from a: forward means a -> b.
    EdgeKind kind(Node a, Node b) const;

    friend bool operator==(const Cpdag& a, const Cpdag& b) {
        return a.p_ == b.p_ && a.directed_ == b.directed_ && a.undirected_ == b.undirected_;
    }

private:
    std::size_t p_;
    std::vector<Edge> directed_;
    std::vector<Edge> undirected_;
};

/// Parents before children; among available nodes the smallest index first.
Ordering topological_order(const Dag& g);

/// Nodes reachable from j by a directed path, excluding j, ascending.
std::vector<Node> descendants(const Dag& g, Node j);

/// True iff every edge (a, b) has a before b in the ordering.
bool is_consistent(const Ordering& ordering, const Dag& g);

/// CPDAG of the Markov equivalence class of g: skeleton, v-structures, then
/// Meek rules R1-R4 to a fixpoint.
Cpdag dag_to_cpdag(const Dag& g);

/// Unshielded colliders (a, c, b) with a < b, a -> c <- b, a and b non-adjacent.
struct VStructure {
    Node left;
    Node collider;
    Node right;
    friend auto operator<=>(const VStructure&, const VStructure&) = default;
};
std::vector<VStructure> v_structures(const Dag& g);

enum class ReversalCost { two, one };

/// Missing plus extra directed edges. With ReversalCost::one a reversed edge
/// counts once (the usual structural Hamming distance).
std::size_t hamming_dag(const Dag& truth, const Dag& estimate, ReversalCost reversal = ReversalCost::two);

/// Number of node pairs whose relationship (absent, either direction,
/// undirected) differs between the two graphs.
std::size_t hamming_cpdag(const Cpdag& truth, const Cpdag& estimate);

}  // namespace gsem::graph

#endif  // GSEM_GRAPH_DAG_HPP
