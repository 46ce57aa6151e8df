#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace nlse {

// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double v);

// Minimal CSV writer with deterministic formatting.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void close();

private:
    std::ofstream out_;
    std::size_t n_cols_;
};

}  // namespace nlse
