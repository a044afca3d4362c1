#ifndef GSEM_NUMERICS_SUMMATION_HPP
#define GSEM_NUMERICS_SUMMATION_HPP

#include <cmath>
#include <span>

namespace gsem::numerics {

/// Neumaier's variant of Kahan summation. Every reduction in the library goes
/// through this so that benchmark numbers do not depend on summation order
/// quirks of the platform.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            compensation_ += (sum_ - t) + x;
        else
            compensation_ += (x - t) + sum_;
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }

    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) noexcept {
    CompensatedSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

/// Dot product over the first `count` entries.
inline double compensated_dot(const double* a, const double* b, std::size_t count) noexcept {
    CompensatedSum acc;
    for (std::size_t i = 0; i < count; ++i) acc.add(a[i] * b[i]);
    return acc.value();
}

inline double compensated_dot(std::span<const double> a, std::span<const double> b) noexcept {
    return compensated_dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

}  // namespace gsem::numerics

#endif  // GSEM_NUMERICS_SUMMATION_HPP
