#ifndef GSEM_SEM_SEM_IO_HPP
#define GSEM_SEM_SEM_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include <gsem/sem/gaussian_sem.hpp>
#include <gsem/sem/identifiability.hpp>

namespace gsem::sem {

// SEM documents are JSON objects:
//   {
//     "p": 3,
//     "edges": [{"j": 1, "k": 0, "beta": 1.0}, ...],   // child j, parent k
//     "sigma2": [2.25, 1.5, 1.5],
//     "intercepts": [0.0, 0.0, 0.0]                       // optional
//   }
// Numbers are written in shortest round-trip form, so parse(format(m)) == m.

std::string format_sem(const GaussianSem& m);
GaussianSem parse_sem(std::string_view text);
GaussianSem read_sem(const std::filesystem::path& path);

std::string format_report(const IdentifiabilityReport& report);

}  // namespace gsem::sem

#endif  // GSEM_SEM_SEM_IO_HPP
