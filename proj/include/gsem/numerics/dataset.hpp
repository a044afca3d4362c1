#ifndef GSEM_NUMERICS_DATASET_HPP
#define GSEM_NUMERICS_DATASET_HPP

#include <string>
#include <vector>

#include <gsem/numerics/matrix.hpp>

namespace gsem::numerics {

/// n x p observations with one label per column.
///
/// Construction rejects label/column count mismatch, zero rows and
/// non-finite entries. A single row is allowed (the sampler can produce one);
/// every estimator that needs two or more rows checks for itself.
class Dataset {
public:
    Dataset(std::vector<std::string> names, Matrix data);

    const std::vector<std::string>& names() const noexcept { return names_; }
    const Matrix& data() const noexcept { return data_; }
    std::size_t samples() const noexcept { return data_.rows(); }
    std::size_t variables() const noexcept { return data_.cols(); }

    std::vector<double> column(std::size_t j) const { return data_.column(j); }

    /// Same variables with rows reordered: row i of the result is row perm[i].
    Dataset permute_rows(const std::vector<std::size_t>& perm) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::vector<std::string> names_;
    Matrix data_;
};

/// Labels "X0", "X1", ... used when a dataset has no names of its own.
std::vector<std::string> default_names(std::size_t p);

}  // namespace gsem::numerics

#endif  // GSEM_NUMERICS_DATASET_HPP
