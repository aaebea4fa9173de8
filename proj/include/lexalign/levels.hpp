#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

namespace lexalign {

// Six CEFR sub-levels, ordered from easiest to hardest.
enum class Level { A1 = 0, A2 = 1, B1 = 2, B2 = 3, C1 = 4, C2 = 5 };

// Aggregated proficiency bands: A = A1+A2, B = B1+B2, C = C1+C2.
enum class Band { A = 0, B = 1, C = 2 };

inline constexpr std::array<Band, 3> kAllBands = {Band::A, Band::B, Band::C};

Band band_of(Level level);
std::pair<Level, Level> sublevels(Band band);

std::optional<Level> parse_level(const std::string& code);
std::optional<Band> parse_band(const std::string& code);
const std::string& level_name(Level level);
const std::string& band_name(Band band);

inline int level_rank(Level level) { return static_cast<int>(level); }
inline int band_index(Band band) { return static_cast<int>(band); }

} // namespace lexalign

