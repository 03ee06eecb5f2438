#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fluxon::io {

/// Shortest decimal that round-trips to the same binary64 value; "inf", "-inf", "nan" otherwise.
std::string format_double(double v);

/// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view bytes);

/// In-memory CSV document: one header row, then data rows of the same width.
class CsvWriter {
public:
    using Cell = std::variant<double, long long, std::string, bool>;

    explicit CsvWriter(std::vector<std::string> header);

    /// Throws std::invalid_argument when the row width differs from the header.
    void row(std::vector<Cell> cells);

    const std::string& str() const { return buffer_; }
    std::size_t rows() const { return rows_; }

private:
    std::size_t width_;
    std::size_t rows_ = 0;
    std::string buffer_;
};

struct WrittenFile {
    std::string name;  ///< relative to the output directory
    std::string sha256;
    std::size_t bytes = 0;
};

/// Writes `content` to dir/name (binary mode) and returns its digest.
WrittenFile write_file(const std::filesystem::path& dir, const std::string& name, std::string_view content);

/// Runs body(i) for i in [0, n) on up to `threads` workers. Work is claimed in index
/// order; the first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace fluxon::io
