#include <gsem/sem/generators.hpp>

#include <cmath>
#include <string>

#include <gsem/error.hpp>
#include <gsem/numerics/summation.hpp>
#include <gsem/sem/rng.hpp>

namespace gsem::sem {

std::string_view to_string(Protocol protocol) {
    return protocol == Protocol::homogeneous ? "homogeneous" : "heterogeneous";
}

std::optional<Protocol> parse_protocol(std::string_view name) {
    if (name == "homogeneous") return Protocol::homogeneous;
    if (name == "heterogeneous") return Protocol::heterogeneous;
    return std::nullopt;
}

GaussianSem random_sem(std::size_t p, Protocol protocol, std::uint64_t seed) {
    if (p < 2) throw PreconditionError("random SEMs need at least 2 nodes, got " + std::to_string(p));
    Rng rng(seed);

    std::vector<Node> order(p);
    for (Node v = 0; v < p; ++v) order[v] = v;
    for (std::size_t i = p - 1; i > 0; --i) std::swap(order[i], order[rng.uniform_index(i + 1)]);

    const double window = protocol == Protocol::homogeneous ? 0.25 : 1.0;
    Matrix weights(p, p);
    for (std::size_t a = 1; a < p; ++a)
        for (std::size_t b = 0; b < a; ++b) {
            const double beta = rng.uniform(-2.0, 2.0);
            // zero inside the open window (-window, window)
            weights(order[a], order[b]) = std::fabs(beta) < window ? 0.0 : beta;
        }

    std::vector<double> sigma2(p, 1.0);
    if (protocol == Protocol::heterogeneous)
        for (auto& s : sigma2) s = rng.uniform(1.0, 3.0);
    return GaussianSem(std::move(weights), std::move(sigma2));
}

GaussianSem nonfaithful_chain() {
    Matrix weights(3, 3);
    weights(1, 0) = 1.0;
    weights(2, 0) = 1.0;
    weights(2, 1) = 1.0;
    return GaussianSem(std::move(weights), {2.25, 1.5, 1.5});
}

numerics::Matrix standard_normal_noise(std::size_t n, std::size_t p, std::uint64_t seed) {
    Rng rng(seed);
    numerics::Matrix z(n, p);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < p; ++j) z(i, j) = rng.standard_normal();
    return z;
}

numerics::Dataset sample_with_noise(const GaussianSem& m, const numerics::Matrix& noise) {
    const std::size_t p = m.size();
    if (noise.cols() != p) throw DimensionError("noise matrix must have one column per node");
    if (noise.rows() == 0) throw PreconditionError("sample size must be at least 1");
    const auto order = graph::topological_order(m.dag());
    std::vector<std::vector<Node>> parents(p);
    std::vector<double> sigma(p);
    for (Node j = 0; j < p; ++j) {
        parents[j] = m.dag().parents(j);
        sigma[j] = std::sqrt(m.sigma2()[j]);
    }

    numerics::Matrix x(noise.rows(), p);
    for (std::size_t i = 0; i < noise.rows(); ++i)
        for (Node j : order.nodes()) {
            numerics::CompensatedSum v;
            v.add(m.intercepts()[j]);
            for (Node k : parents[j]) v.add(m.weight(j, k) * x(i, k));
            v.add(sigma[j] * noise(i, j));
            x(i, j) = v.value();
        }
    return numerics::Dataset(numerics::default_names(p), std::move(x));
}

numerics::Dataset sample(const GaussianSem& m, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw PreconditionError("sample size must be at least 1");
    return sample_with_noise(m, standard_normal_noise(n, m.size(), seed));
}

}  // namespace gsem::sem
