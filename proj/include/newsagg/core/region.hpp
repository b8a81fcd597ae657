#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace newsagg::core {

// Region codes used across all file formats. The portal regions are fr, us,
// jp, eu, cn, int, kr, es, in, de; questionnaires also came from Italy (it)
// and Brazil (br).
const std::vector<std::string>& supported_regions();
bool is_supported_region(std::string_view code);

// Accepts a code ("jp") or a country name ("Japan", "United States", ...),
// case-insensitively.
std::optional<std::string> normalize_region(std::string_view country);

// Default article language for sources in a region (BCP-47 style tag).
std::string default_language(std::string_view region);

}  // namespace newsagg::core
