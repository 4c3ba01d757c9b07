#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace specshare {
namespace csv {

/// 12-significant-digit decimal rendering; the same input always yields the
/// same bytes, which keeps emitted datasets byte-stable.
std::string format_number(double value);

/// RFC-4180 style writer: comma separated, fields quoted only when needed,
/// CRLF-free line endings for easy diffing.
class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void row(const std::vector<std::string>& fields);

    /// One accumulated row via repeated field() calls.
    Writer& field(const std::string& value);
    Writer& field(const char* value);
    Writer& field(double value);
    Writer& field(bool value);
    /// Empty cell when unset.
    Writer& field(const std::optional<double>& value);
    void end_row();

private:
    std::ostream& out_;
    std::vector<std::string> pending_;
};

} // namespace csv
} // namespace specshare
