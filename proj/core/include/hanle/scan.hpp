// Deterministic CSV output: fixed 17-significant-digit decimal formatting so
// identical inputs produce byte-identical files.
#pragma once

#include <string>
#include <vector>

namespace hanle::scan {

/// printf "%.17g" of a double; round-trips exactly and is locale independent.
std::string format_g17(double v);

struct CsvTable {
    std::vector<std::string> comments;      ///< emitted as "# ..." header lines
    std::vector<std::string> column_names;  ///< one header row
    std::vector<std::vector<double>> columns;

    /// Render with '\n' line endings, every row newline-terminated.
    std::string render() const;
};

/// Write atomically-ish (whole string at once); throws std::runtime_error on
/// I/O failure.
void write_file(const std::string& path, const std::string& contents);

/// FNV-1a 64-bit hash, used to stamp output files with their manifest.
std::uint64_t fnv1a64(const std::string& text);

}  // namespace hanle::scan
