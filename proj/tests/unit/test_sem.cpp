#include <doctest.h>

#include <cmath>
#include <set>

#include <gsem/error.hpp>
#include <gsem/numerics/statistics.hpp>
#include <gsem/sem/gaussian_sem.hpp>
#include <gsem/sem/generators.hpp>
#include <gsem/sem/identifiability.hpp>
#include <gsem/sem/rng.hpp>
#include <gsem/sem/sem_io.hpp>

#include "oracles.hpp"

using namespace gsem;
using namespace gsem::sem;
using numerics::Matrix;
using graph::Ordering;

namespace {

GaussianSem bivariate(double beta, double s1, double s2) {
    Matrix b(2, 2);
    b(1, 0) = beta;
    return GaussianSem(b, {s1, s2});
}

GaussianSem chain3(double b1, double b2, double s1, double s2, double s3) {
    Matrix b(3, 3);
    b(1, 0) = b1;
    b(2, 1) = b2;
    return GaussianSem(b, {s1, s2, s3});
}

Matrix eigen_covariance(const GaussianSem& m) {
    const auto p = static_cast<Eigen::Index>(m.size());
    const Eigen::MatrixXd b = oracle::to_eigen(m.weights());
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index j = 0; j < p; ++j) e(j, j) = m.sigma2()[j];
    const Eigen::MatrixXd a = (Eigen::MatrixXd::Identity(p, p) - b).inverse();
    return oracle::from_eigen(a * e * a.transpose());
}

}  // namespace

TEST_CASE("rng streams are reproducible") {
    Rng a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        (void)c;
    }
    CHECK(Rng(42).next_u64() != Rng(43).next_u64());
    CHECK(Rng::derive_seed(7, {1, 2}) == Rng::derive_seed(7, {1, 2}));
    CHECK(Rng::derive_seed(7, {1, 2}) != Rng::derive_seed(7, {2, 1}));

    Rng u(5);
    double sum = 0, sum2 = 0;
    std::vector<int> counts(7, 0);
    const int draws = 200000;
    for (int i = 0; i < draws; ++i) {
        const double x = u.uniform01();
        CHECK((x >= 0.0 && x < 1.0));
        ++counts[u.uniform_index(7)];
        const double z = u.standard_normal();
        sum += z;
        sum2 += z * z;
    }
    CHECK(std::fabs(sum / draws) < 0.01);
    CHECK(std::fabs(sum2 / draws - 1.0) < 0.02);
    for (int c7 : counts) CHECK(std::fabs(c7 / double(draws) - 1.0 / 7.0) < 0.005);
    CHECK_THROWS_AS(u.uniform_index(0), PreconditionError);
}

TEST_CASE("population covariance") {
    CHECK(population_covariance(GaussianSem(Matrix(2, 2), {1, 1})) == Matrix::identity(2));

    const Matrix expected{{2.25, 2.25, 4.50}, {2.25, 3.75, 6.0}, {4.50, 6.0, 12.0}};
    const auto chain = nonfaithful_chain();
    CHECK(max_abs_diff(population_covariance(chain), expected) < 1e-14);
    CHECK(max_abs_diff(population_covariance(chain), eigen_covariance(chain)) < 1e-12);

    const auto g1 = bivariate(0.7, 1.3, 0.4);
    CHECK(population_covariance(g1)(1, 1) == doctest::Approx(0.4 + 0.49 * 1.3).epsilon(1e-15));

    for (std::uint64_t seed = 1; seed <= 10; ++seed)
        for (auto protocol : {Protocol::homogeneous, Protocol::heterogeneous}) {
            const auto m = random_sem(8, protocol, seed);
            const Matrix c = population_covariance(m);
            CHECK(max_abs_diff(c, eigen_covariance(m)) < 1e-10 * max_abs(c));
        }
}

TEST_CASE("population precision") {
    CHECK(population_precision(GaussianSem(Matrix(1, 1), {4})) == Matrix{{0.25}});
    CHECK(max_abs_diff(population_precision(bivariate(1.0, 1.0, 1.0)), Matrix{{2, -1}, {-1, 1}}) < 1e-15);
    const Matrix theta = population_precision(nonfaithful_chain());
    CHECK(theta(0, 1) == 0.0);
    CHECK(theta(1, 0) == 0.0);
    CHECK(theta(0, 2) != 0.0);
    CHECK(theta(1, 2) != 0.0);
}

TEST_CASE("covariance and precision are inverses") {
    // The identity check is scaled by the size of the factors: dense models
    // at larger p have covariances spanning many orders of magnitude.
    for (std::size_t p : {3, 5, 10, 20, 40, 80})
        for (auto protocol : {Protocol::homogeneous, Protocol::heterogeneous}) {
            const auto m = random_sem(p, protocol, 1000 + p);
            const Matrix c = population_covariance(m);
            const Matrix t = population_precision(m);
            const double scale = max_abs(c) * max_abs(t) * static_cast<double>(p);
            const double err = max_abs_diff(c * t, Matrix::identity(p));
            CHECK(err <= 1e-9 * std::max(1.0, scale * 1e-7));
            if (p <= 10) CHECK(err < 1e-9);
        }
}

TEST_CASE("population conditional variance") {
    const Matrix sigma = population_covariance(nonfaithful_chain());
    const std::vector<Node> s0{0};
    CHECK(population_conditional_variance(sigma, 2, s0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(population_conditional_variance(sigma, 1, s0) == doctest::Approx(1.5).epsilon(1e-14));
    const std::vector<Node> s{0, 2};
    CHECK(population_conditional_variance(Matrix::identity(3), 1, s) == 1.0);
}

TEST_CASE("identifiability check") {
    SUBCASE("equal error variances with a nonzero weight") {
        for (double beta : {-2.0, -0.1, 0.05, 0.5, 3.0}) CHECK(check_identifiability(bivariate(beta, 1.7, 1.7), Ordering::identity(2)).satisfied);
    }
    SUBCASE("beta squared above one with any variances") {
        for (double s2 : {0.01, 0.3, 1.0, 5.0})
            CHECK(check_identifiability(bivariate(1.01, 1.0, s2), Ordering::identity(2)).satisfied);
    }
    SUBCASE("failing bivariate model") {
        const auto r = check_identifiability(bivariate(0.2, 1.0, 0.1), Ordering::identity(2));
        CHECK_FALSE(r.satisfied);
        REQUIRE(r.margins.size() == 1);
        CHECK(r.margins[0].rhs == doctest::Approx(0.14).epsilon(1e-14));
    }
    SUBCASE("boundary equality is not identifiable") {
        // beta^2 = 1 - r with r = sigma2^2 / sigma1^2 = 0.75 makes Var(X2) = sigma1^2
        const auto r = check_identifiability(bivariate(0.5, 1.0, 0.75), Ordering::identity(2));
        CHECK(r.margins[0].rhs == 1.0);
        CHECK_FALSE(r.satisfied);
    }
    SUBCASE("three-node chain margins") {
        const auto r = check_identifiability(nonfaithful_chain(), Ordering::identity(3));
        CHECK(r.satisfied);
        REQUIRE(r.margins.size() == 3);
        CHECK(r.margins[0].lhs == 2.25);
        CHECK(r.margins[0].rhs == doctest::Approx(3.75));
        CHECK(r.margins[1].rhs == doctest::Approx(12.0));
        CHECK(r.margins[2].lhs == 1.5);
        CHECK(r.margins[2].rhs == doctest::Approx(3.0));
        CHECK(r.worst_margin == doctest::Approx(1.5));
        CHECK(nonfaithful_chain().sigma2()[0] > nonfaithful_chain().sigma2()[1]);
    }
    SUBCASE("inconsistent ordering") {
        CHECK_THROWS_AS(check_identifiability(nonfaithful_chain(), Ordering({2, 1, 0})), PreconditionError);
    }
    SUBCASE("all_later scope also compares non-descendants") {
        // 0 -> 1 and an isolated node 2 with a tiny error variance placed last
        Matrix b(3, 3);
        b(1, 0) = 1.0;
        const GaussianSem m(b, {1.0, 1.0, 0.2});
        CHECK(check_identifiability(m, Ordering::identity(3), CheckScope::descendants).satisfied);
        CHECK_FALSE(check_identifiability(m, Ordering::identity(3), CheckScope::all_later).satisfied);
    }
    SUBCASE("empty graph has nothing to compare") {
        const auto r = check_identifiability(GaussianSem(Matrix(3, 3), {1, 2, 3}), Ordering::identity(3));
        CHECK(r.satisfied);
        CHECK(r.margins.empty());
        CHECK(std::isinf(r.worst_margin));
    }
}

TEST_CASE("law of total variance self-check") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed)
        for (auto protocol : {Protocol::homogeneous, Protocol::heterogeneous}) {
            const auto m = random_sem(7, protocol, seed);
            const auto r = check_identifiability(m, graph::topological_order(m.dag()));
            for (const auto& mg : r.margins)
                CHECK(std::fabs(mg.rhs - mg.decomposed_rhs) <= 1e-9 * std::max(1.0, std::fabs(mg.rhs)));
        }
}

TEST_CASE("right-hand sides equal the Schur complement of the covariance") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed)
        for (auto protocol : {Protocol::homogeneous, Protocol::heterogeneous}) {
            const auto m = random_sem(8, protocol, seed);
            const auto order = graph::topological_order(m.dag());
            const Matrix cov = population_covariance(m);
            for (const auto& mg : check_identifiability(m, order, CheckScope::all_later).margins) {
                std::vector<Node> before;
                for (std::size_t pos = 0; order[pos] != mg.j; ++pos) before.push_back(order[pos]);
                CHECK(mg.rhs == doctest::Approx(population_conditional_variance(cov, mg.k, before)).epsilon(1e-9));
            }
        }
}

TEST_CASE("dense models stay checkable at large p") {
    // covariance entries reach ~1e26 here; equal variances must still pass
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const auto m = random_sem(80, Protocol::homogeneous, seed);
        const auto r = check_identifiability(m, graph::topological_order(m.dag()));
        CHECK(r.satisfied);
        CHECK(r.worst_margin > 0.0);
    }
}

TEST_CASE("three-node chain grid against closed forms") {
    const double betas[] = {-1.5, -0.4, 0.3, 0.9, 1.2};
    const double variances[] = {0.3, 0.8, 1.0, 1.7, 2.5};
    std::size_t satisfied = 0, total = 0;
    for (double b1 : betas)
        for (double b2 : betas)
            for (double s1 : variances)
                for (double s2 : variances)
                    for (double s3 : variances) {
                        const auto m = chain3(b1, b2, s1, s2, s3);
                        const double var2 = s2 + b1 * b1 * s1;
                        const double var3 = s3 + b2 * b2 * s2 + b2 * b2 * b1 * b1 * s1;
                        const double var3_given1 = s3 + b2 * b2 * s2;
                        const bool expected = s1 < var2 && s1 < var3 && s2 < var3_given1;
                        const auto r = check_identifiability(m, Ordering::identity(3));
                        REQUIRE(r.margins.size() == 3);
                        CHECK(r.margins[0].rhs == doctest::Approx(var2).epsilon(1e-12));
                        CHECK(r.margins[1].rhs == doctest::Approx(var3).epsilon(1e-12));
                        CHECK(r.margins[2].rhs == doctest::Approx(var3_given1).epsilon(1e-12));
                        CHECK(r.satisfied == expected);
                        satisfied += r.satisfied;
                        ++total;
                    }
    CHECK(total == 3125);
    CHECK(satisfied > 0);
    CHECK(satisfied < total);
}

TEST_CASE("bivariate thresholds") {
    CHECK(bivariate_threshold_park(1.0) == 0.0);
    CHECK(bivariate_threshold_park(2.0) == 0.0);
    CHECK(bivariate_threshold_park(0.5) == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(bivariate_threshold_loh(1.0) == 0.0);
    CHECK(bivariate_threshold_loh(0.5) == doctest::Approx(0.75 + std::sqrt(0.9375)).epsilon(1e-15));
    CHECK(bivariate_threshold_loh(0.5) == doctest::Approx(1.7182).epsilon(1e-4));
    CHECK(bivariate_threshold_loh(std::sqrt(2.0)) == doctest::Approx(2.0 * (1.0 + std::sqrt(3.0))).epsilon(1e-14));
    CHECK_THROWS_AS(bivariate_threshold_park(0.0), PreconditionError);
    CHECK_THROWS_AS(bivariate_threshold_loh(-1.0), PreconditionError);

    // With r the variance ratio the check flips at beta^2 = 1 - r, which is
    // the threshold evaluated at the standard-deviation ratio sqrt(r).
    for (double r : {0.2, 0.5, 0.9}) {
        const double t = bivariate_threshold_park(std::sqrt(r));
        CHECK(t == doctest::Approx(1.0 - r).epsilon(1e-14));
        CHECK(check_identifiability(bivariate(std::sqrt(t * 1.01), 1.0, r), Ordering::identity(2)).satisfied);
        CHECK_FALSE(check_identifiability(bivariate(std::sqrt(t * 0.99), 1.0, r), Ordering::identity(2)).satisfied);
    }
}

TEST_CASE("random SEM protocols") {
    std::size_t hom_pairs = 0, hom_edges = 0, het_pairs = 0, het_edges = 0;
    for (std::uint64_t seed = 1; hom_pairs < 10000; ++seed) {
        const auto m = random_sem(10, Protocol::homogeneous, seed);
        for (double s : m.sigma2()) CHECK(s == 1.0);
        for (const auto& [k, j] : m.dag().edges()) {
            const double b = std::fabs(m.weight(j, k));
            CHECK((b >= 0.25 && b <= 2.0));
        }
        hom_pairs += 45;
        hom_edges += m.dag().edge_count();
    }
    for (std::uint64_t seed = 1; het_pairs < 10000; ++seed) {
        const auto m = random_sem(10, Protocol::heterogeneous, seed);
        for (double s : m.sigma2()) CHECK((s >= 1.0 && s <= 3.0));
        for (const auto& [k, j] : m.dag().edges()) {
            const double b = std::fabs(m.weight(j, k));
            CHECK((b >= 1.0 && b <= 2.0));
        }
        CHECK(check_identifiability(m, graph::topological_order(m.dag())).satisfied);
        het_pairs += 45;
        het_edges += m.dag().edge_count();
    }
    CHECK(double(hom_edges) / hom_pairs == doctest::Approx(0.875).epsilon(0.02));
    CHECK(double(het_edges) / het_pairs == doctest::Approx(0.5).epsilon(0.04));

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto m = random_sem(20, Protocol::homogeneous, seed);
        CHECK(check_identifiability(m, graph::topological_order(m.dag())).satisfied);
    }
    CHECK(random_sem(6, Protocol::heterogeneous, 9) == random_sem(6, Protocol::heterogeneous, 9));
    CHECK_THROWS_AS(random_sem(1, Protocol::homogeneous, 1), PreconditionError);
}

TEST_CASE("sampling") {
    SUBCASE("seed determinism") {
        const auto m = random_sem(5, Protocol::heterogeneous, 3);
        CHECK(sample(m, 50, 11) == sample(m, 50, 11));
        CHECK_FALSE(sample(m, 50, 11) == sample(m, 50, 12));
        CHECK_THROWS_AS(sample(m, 0, 1), PreconditionError);
    }
    SUBCASE("near-zero noise stays at the intercepts") {
        const GaussianSem m(Matrix(3, 3), {1e-12, 1e-12, 1e-12}, {1.0, -2.0, 3.5});
        const auto d = sample(m, 1, 4);
        for (std::size_t j = 0; j < 3; ++j) CHECK(std::fabs(d.data()(0, j) - m.intercepts()[j]) < 1e-5);
    }
    SUBCASE("large sample covariance is close to the population") {
        const auto d = sample(nonfaithful_chain(), 100000, 77);
        CHECK(max_abs_diff(numerics::sample_covariance(d), population_covariance(nonfaithful_chain())) < 0.15);
    }
    SUBCASE("relabelling permutes columns") {
        const auto m = random_sem(6, Protocol::heterogeneous, 31);
        const std::vector<Node> perm{3, 0, 5, 1, 4, 2};
        const auto noise = standard_normal_noise(40, 6, 8);
        Matrix permuted_noise(40, 6);
        for (std::size_t i = 0; i < 40; ++i)
            for (std::size_t j = 0; j < 6; ++j) permuted_noise(i, perm[j]) = noise(i, j);
        const auto original = sample_with_noise(m, noise);
        const auto relabelled = sample_with_noise(relabel(m, perm), permuted_noise);
        for (std::size_t i = 0; i < 40; ++i)
            for (std::size_t j = 0; j < 6; ++j) CHECK(relabelled.data()(i, perm[j]) == original.data()(i, j));
    }
}

TEST_CASE("SEM documents") {
    const auto m = random_sem(5, Protocol::heterogeneous, 12);
    CHECK(parse_sem(format_sem(m)) == m);
    const auto chain = nonfaithful_chain();
    CHECK(parse_sem(format_sem(chain)) == chain);

    CHECK_THROWS_AS(parse_sem("{"), ParseError);
    CHECK_THROWS_AS(parse_sem(R"({"p": 2, "edges": [], "sigma2": [1]})"), ParseError);
    CHECK_THROWS_AS(parse_sem(R"({"p": 2, "edges": [{"j": 1, "k": 0, "beta": 0}], "sigma2": [1, 1]})"), ParseError);
    CHECK_THROWS_AS(parse_sem(R"({"p": 2, "edges": [{"j": 1, "k": 0, "beta": 1}, {"j": 0, "k": 1, "beta": 1}], "sigma2": [1, 1]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_sem(R"({"p": 2, "edges": [{"j": 5, "k": 0, "beta": 1}], "sigma2": [1, 1]})"), ParseError);
    try {
        parse_sem(R"({"p": 2, "edges": [], "sigma2": [1, "x"]})");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("sigma2[1]") != std::string::npos);
    }
}
