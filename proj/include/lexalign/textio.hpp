#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lexalign {

// Shortest decimal form that parses back to the exact same double.
// All file formats use this so that save/load/save round-trips are
// byte-identical.
std::string format_double(double value);
double parse_double(const std::string& text, const std::string& context);
long parse_long(const std::string& text, const std::string& context);

std::string trim(const std::string& text);
std::string to_lower_ascii(const std::string& text);
std::vector<std::string> split_ws(const std::string& text);
std::vector<std::string> split_char(const std::string& text, char sep);

std::vector<std::string> read_lines(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// Deterministic RNG helpers over std::mt19937_64 output.  Library code
// never uses std::*_distribution, whose sequences are not pinned by the
// standard.
uint64_t mix_seed(uint64_t seed, uint64_t a, uint64_t b = 0);

class SplitRng {
public:
    explicit SplitRng(uint64_t seed) : state_(seed) {}
    uint64_t next();
    // Uniform in [0, n).
    size_t index(size_t n);
    // Uniform in [0, 1).
    double unit();
    // Standard normal via Box-Muller.
    double normal();

private:
    uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace lexalign

