#include "subsetcodec/exec.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace subsetcodec {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

std::uint64_t enumeration_budget(std::uint64_t fallback) {
    const char* env = std::getenv("SUBSETCODEC_BUDGET");
    if (env == nullptr || *env == '\0') return fallback;
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(env, &pos);
        if (pos == std::string(env).size() && v > 0) return v;
    } catch (const std::exception&) {
    }
    return fallback;
}

}  // namespace subsetcodec
