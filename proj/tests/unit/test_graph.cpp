#include <doctest.h>

#include <algorithm>
#include <map>

#include <gsem/error.hpp>
#include <gsem/graph/dag.hpp>
#include <gsem/graph/graph_io.hpp>
#include <gsem/sem/rng.hpp>

#include "../support/dag_enumeration.hpp"

using namespace gsem;
using namespace gsem::graph;

namespace {

const Dag kChain(3, {{0, 1}, {1, 2}});
const Dag kCollider(3, {{0, 2}, {1, 2}});
// mechanics(0), vectors(1), algebra(2), analysis(3), statistics(4)
const Dag kMarks(5, {{2, 3}, {2, 4}, {3, 4}, {2, 1}, {2, 0}, {0, 1}});

Dag random_dag(std::size_t p, double density, sem::Rng& rng) {
    std::vector<Node> perm(p);
    for (std::size_t i = 0; i < p; ++i) perm[i] = i;
    for (std::size_t i = p; i > 1; --i) std::swap(perm[i - 1], perm[rng.uniform_index(i)]);
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < p; ++a)
        for (std::size_t b = a + 1; b < p; ++b)
            if (rng.uniform01() < density) edges.emplace_back(perm[a], perm[b]);
    return Dag(p, edges);
}

}  // namespace

TEST_CASE("DAG construction rejects invalid edge sets") {
    CHECK_THROWS_AS(Dag(2, {{0, 0}}), PreconditionError);
    CHECK_THROWS_AS(Dag(2, {{0, 2}}), PreconditionError);
    CHECK_THROWS_AS(Dag(3, {{0, 1}, {1, 2}, {2, 0}}), PreconditionError);
    CHECK_THROWS_AS(Dag(2, {{0, 1}, {0, 1}}), PreconditionError);
    const Dag g(3, {{1, 2}, {0, 1}});
    CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(g.parents(2) == std::vector<Node>{1});
    CHECK(g.children(0) == std::vector<Node>{1});
}

TEST_CASE("topological order") {
    CHECK(topological_order(Dag(3)).nodes() == std::vector<Node>{0, 1, 2});
    CHECK(topological_order(kChain).nodes() == std::vector<Node>{0, 1, 2});
    CHECK(topological_order(kCollider).nodes() == std::vector<Node>{0, 1, 2});
    // both (0,1,2) and (1,0,2) are valid for the collider
    CHECK(is_consistent(Ordering({1, 0, 2}), kCollider));
    CHECK(topological_order(Dag(3, {{2, 0}, {1, 0}})).nodes() == std::vector<Node>{1, 2, 0});

    sem::Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        const Dag g = random_dag(1 + rng.uniform_index(8), 0.4, rng);
        CHECK(is_consistent(topological_order(g), g));
    }
}

TEST_CASE("descendants") {
    CHECK(descendants(kChain, 0) == std::vector<Node>{1, 2});
    CHECK(descendants(Dag(4), 2).empty());
    const Dag diamond(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
    CHECK(descendants(diamond, 1) == std::vector<Node>{3});
    CHECK(descendants(diamond, 0) == std::vector<Node>{1, 2, 3});

    sem::Rng rng(8);
    for (int t = 0; t < 100; ++t) {
        const Dag g = random_dag(7, 0.3, rng);
        for (Node j = 0; j < 7; ++j)
            for (Node k : descendants(g, j)) {
                const auto dj = descendants(g, j);
                for (Node l : descendants(g, k)) CHECK(std::binary_search(dj.begin(), dj.end(), l));
            }
    }
}

TEST_CASE("ordering consistency") {
    CHECK(is_consistent(Ordering({0, 1, 2}), kChain));
    CHECK_FALSE(is_consistent(Ordering({2, 1, 0}), kChain));
    CHECK(is_consistent(Ordering({1, 0, 2}), kCollider));
    CHECK_THROWS_AS(Ordering({0, 0, 1}), PreconditionError);
}

TEST_CASE("CPDAG examples") {
    const Cpdag chain = dag_to_cpdag(kChain);
    CHECK(chain.directed().empty());
    CHECK(chain.undirected() == std::vector<Edge>{{0, 1}, {1, 2}});

    const Cpdag collider = dag_to_cpdag(kCollider);
    CHECK(collider.directed() == std::vector<Edge>{{0, 2}, {1, 2}});
    CHECK(collider.undirected().empty());
    CHECK(collider.kind(0, 2) == EdgeKind::forward);
    CHECK(collider.kind(2, 0) == EdgeKind::backward);

    // every pair of edges into a common child is shielded
    for (Node c = 0; c < 5; ++c) {
        const auto pa = kMarks.parents(c);
        for (std::size_t i = 0; i < pa.size(); ++i)
            for (std::size_t j = i + 1; j < pa.size(); ++j) CHECK(kMarks.adjacent(pa[i], pa[j]));
    }
    CHECK(v_structures(kMarks).empty());
    const Cpdag marks = dag_to_cpdag(kMarks);
    CHECK(marks.directed().empty());
    CHECK(marks.undirected().size() == 6);

    // Meek R1 propagates below a collider: 0 -> 2 <- 1, 2 - 3 becomes 2 -> 3
    const Cpdag r1 = dag_to_cpdag(Dag(4, {{0, 2}, {1, 2}, {2, 3}}));
    CHECK(r1.kind(2, 3) == EdgeKind::forward);
    CHECK(r1.undirected().empty());
}

TEST_CASE("CPDAG over all DAGs on four nodes") {
    const auto dags = enumeration::all_dags(4);
    REQUIRE(dags.size() == 543);

    std::map<enumeration::Key, std::vector<std::size_t>> classes;
    std::vector<Cpdag> cpdags;
    for (std::size_t i = 0; i < dags.size(); ++i) {
        classes[enumeration::equivalence_key(dags[i])].push_back(i);
        cpdags.push_back(dag_to_cpdag(enumeration::to_dag(dags[i])));
    }
    CHECK(classes.size() == 185);

    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < dags.size(); ++i)
        for (std::size_t j = i + 1; j < dags.size(); ++j) {
            const bool same_class =
                enumeration::equivalence_key(dags[i]) == enumeration::equivalence_key(dags[j]);
            if (same_class != (cpdags[i] == cpdags[j])) ++mismatches;
        }
    CHECK(mismatches == 0);

    // An edge is directed in the CPDAG iff every member of the class orients it the same way.
    for (const auto& [key, members] : classes) {
        const Cpdag& c = cpdags[members.front()];
        for (const auto& [a, b] : key.first) {
            bool always_ab = true, always_ba = true;
            for (auto m : members) {
                always_ab = always_ab && dags[m][a][b];
                always_ba = always_ba && dags[m][b][a];
            }
            const EdgeKind expected =
                always_ab ? EdgeKind::forward : (always_ba ? EdgeKind::backward : EdgeKind::undirected);
            CHECK(c.kind(a, b) == expected);
        }
    }
}

TEST_CASE("Hamming distances") {
    CHECK(hamming_dag(kChain, kChain) == 0);
    CHECK(hamming_dag(Dag(2, {{0, 1}}), Dag(2, {{1, 0}})) == 2);
    CHECK(hamming_dag(Dag(2, {{0, 1}}), Dag(2, {{1, 0}}), ReversalCost::one) == 1);
    CHECK(hamming_dag(kMarks, Dag(5)) == 6);

    CHECK(hamming_cpdag(dag_to_cpdag(kChain), dag_to_cpdag(kChain)) == 0);
    CHECK(hamming_cpdag(Cpdag(2, {}, {{0, 1}}), Cpdag(2, {{0, 1}}, {})) == 1);
    CHECK(hamming_cpdag(Cpdag(3, {}, {{0, 1}, {1, 2}}), Cpdag(3)) == 2);
}

TEST_CASE("Hamming distances are metrics") {
    sem::Rng rng(21);
    for (int t = 0; t < 300; ++t) {
        const std::size_t p = 2 + rng.uniform_index(4);
        const Dag a = random_dag(p, 0.5, rng), b = random_dag(p, 0.5, rng), c = random_dag(p, 0.5, rng);
        CHECK((hamming_dag(a, b) == 0) == (a == b));
        CHECK(hamming_dag(a, b) == hamming_dag(b, a));
        CHECK(hamming_dag(a, c) <= hamming_dag(a, b) + hamming_dag(b, c));
        const Cpdag ca = dag_to_cpdag(a), cb = dag_to_cpdag(b), cc = dag_to_cpdag(c);
        CHECK((hamming_cpdag(ca, cb) == 0) == (ca == cb));
        CHECK(hamming_cpdag(ca, cb) == hamming_cpdag(cb, ca));
        CHECK(hamming_cpdag(ca, cc) <= hamming_cpdag(ca, cb) + hamming_cpdag(cb, cc));
        CHECK(hamming_cpdag(ca, cb) <= hamming_dag(a, b) + a.edge_count());
    }
}

TEST_CASE("graph text format") {
    CHECK(format_dag(kChain) == "3\n0 1\n1 2\n");
    CHECK(parse_dag(format_dag(kMarks)) == kMarks);
    const Cpdag c(4, {{0, 2}}, {{3, 1}});
    CHECK(format_cpdag(c) == "4\n0 2\n1 3 u\n");
    CHECK(parse_cpdag(format_cpdag(c)) == c);

    CHECK_THROWS_AS(parse_dag(""), ParseError);
    CHECK_THROWS_AS(parse_dag("x\n"), ParseError);
    try {
        parse_dag("3\n0 1\n1 q\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_dag("2\n0 1\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_dag("2\n0 1 u\n"), ParseError);
}
