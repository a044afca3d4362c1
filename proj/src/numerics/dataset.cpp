#include <gsem/numerics/dataset.hpp>

#include <cmath>
#include <string>

#include <gsem/error.hpp>

namespace gsem::numerics {

Dataset::Dataset(std::vector<std::string> names, Matrix data) : names_(std::move(names)), data_(std::move(data)) {
    if (names_.size() != data_.cols())
        throw DimensionError("dataset has " + std::to_string(data_.cols()) + " columns but " +
                             std::to_string(names_.size()) + " names");
    if (data_.rows() == 0) throw ValidationError("dataset has no rows");
    for (std::size_t i = 0; i < data_.rows(); ++i)
        for (std::size_t j = 0; j < data_.cols(); ++j)
            if (!std::isfinite(data_(i, j)))
                throw ValidationError("non-finite entry at row " + std::to_string(i) + ", column '" +
                                      names_[j] + "'");
}

Dataset Dataset::permute_rows(const std::vector<std::size_t>& perm) const {
    if (perm.size() != samples()) throw DimensionError("row permutation has the wrong length");
    Matrix out(samples(), variables());
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = 0; j < variables(); ++j) out(i, j) = data_(perm.at(i), j);
    return Dataset(names_, std::move(out));
}

std::vector<std::string> default_names(std::size_t p) {
    std::vector<std::string> names;
    names.reserve(p);
    for (std::size_t j = 0; j < p; ++j) names.push_back("X" + std::to_string(j));
    return names;
}

}  // namespace gsem::numerics
