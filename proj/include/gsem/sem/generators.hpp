#ifndef GSEM_SEM_GENERATORS_HPP
#define GSEM_SEM_GENERATORS_HPP

#include <cstdint>
#include <optional>
#include <string_view>

#include <gsem/numerics/dataset.hpp>
#include <gsem/sem/gaussian_sem.hpp>

namespace gsem::sem {

/// Random-model families.
///   homogeneous:   beta ~ U[-2, 2], zeroed inside (-0.25, 0.25); sigma^2 = 1
///   heterogeneous: beta ~ U[-2, 2], zeroed inside (-1, 1);       sigma^2 ~ U[1, 3]
enum class Protocol { homogeneous, heterogeneous };

std::string_view to_string(Protocol protocol);
std::optional<Protocol> parse_protocol(std::string_view name);

/// Draws a uniform random causal order, then a candidate weight for every
/// (later, earlier) pair under it, zeroing those inside the protocol window.
/// Draw order: permutation (Fisher-Yates from the back), weights for
/// positions a = 1..p-1 and b = 0..a-1, then variances by node index.
GaussianSem random_sem(std::size_t p, Protocol protocol, std::uint64_t seed);

/// X1 = e1, X2 = X1 + e2, X3 = X1 + X2 + e3 with variances (2.25, 1.5, 1.5).
/// Its precision matrix has a structural zero between X1 and X2, so the
/// distribution is not faithful to the graph.
GaussianSem nonfaithful_chain();

/// n x p standard normal draws, row by row, columns in node order.
numerics::Matrix standard_normal_noise(std::size_t n, std::size_t p, std::uint64_t seed);

/// Propagates eps_j = sigma_j z_j through the structural equations in
/// topological order. Column j of the result is node j.
numerics::Dataset sample_with_noise(const GaussianSem& m, const numerics::Matrix& noise);

/// sample_with_noise(m, standard_normal_noise(n, p, seed)).
numerics::Dataset sample(const GaussianSem& m, std::size_t n, std::uint64_t seed);

}  // namespace gsem::sem

#endif  // GSEM_SEM_GENERATORS_HPP
