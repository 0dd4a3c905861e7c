#pragma once

#include <cstdint>
#include <string>

namespace subsetcodec {

// Selects between the OpenMP kernel and the serial reference it is tested
// against. Both produce identical results for identical inputs.
enum class Exec { serial, parallel };

int max_threads();

// Enumeration budget: SUBSETCODEC_BUDGET when set to a positive integer,
// otherwise `fallback`.
std::uint64_t enumeration_budget(std::uint64_t fallback);

}  // namespace subsetcodec
