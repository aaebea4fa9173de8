#include "lexalign/levels.hpp"

namespace lexalign {

namespace {
const std::array<std::string, 6> kLevelNames = {"A1", "A2", "B1", "B2", "C1", "C2"};
const std::array<std::string, 3> kBandNames = {"A", "B", "C"};
} // namespace

Band band_of(Level level) {
    return static_cast<Band>(static_cast<int>(level) / 2);
}

std::pair<Level, Level> sublevels(Band band) {
    const int base = static_cast<int>(band) * 2;
    return {static_cast<Level>(base), static_cast<Level>(base + 1)};
}

std::optional<Level> parse_level(const std::string& code) {
    for (int i = 0; i < 6; ++i) {
        if (code == kLevelNames[static_cast<size_t>(i)]) return static_cast<Level>(i);
    }
    return std::nullopt;
}

std::optional<Band> parse_band(const std::string& code) {
    for (int i = 0; i < 3; ++i) {
        if (code == kBandNames[static_cast<size_t>(i)]) return static_cast<Band>(i);
    }
    return std::nullopt;
}

const std::string& level_name(Level level) {
    return kLevelNames[static_cast<size_t>(level)];
}

const std::string& band_name(Band band) {
    return kBandNames[static_cast<size_t>(band)];
}

} // namespace lexalign
