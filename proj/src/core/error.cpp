#include <gsem/error.hpp>

namespace gsem {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::dimension: return "dimension error";
        case ErrorKind::degenerate_design: return "degenerate design";
        case ErrorKind::insufficient_samples: return "insufficient samples";
        case ErrorKind::numerical_degeneracy: return "numerical degeneracy";
        case ErrorKind::precondition: return "precondition violated";
        case ErrorKind::parse: return "parse error";
        case ErrorKind::validation: return "validation error";
        case ErrorKind::io: return "I/O error";
    }
    return "error";
}

}  // namespace gsem
