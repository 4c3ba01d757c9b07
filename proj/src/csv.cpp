#include "specshare/csv.hpp"

#include <cmath>
#include <cstdio>

namespace specshare {
namespace csv {

std::string format_number(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

namespace {

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\n") != std::string::npos;
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

} // namespace

void Writer::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << (needs_quoting(fields[i]) ? quoted(fields[i]) : fields[i]);
    }
    out_ << '\n';
}

Writer& Writer::field(const std::string& value) {
    pending_.push_back(value);
    return *this;
}

Writer& Writer::field(const char* value) {
    pending_.emplace_back(value);
    return *this;
}

Writer& Writer::field(double value) {
    pending_.push_back(format_number(value));
    return *this;
}

Writer& Writer::field(bool value) {
    pending_.emplace_back(value ? "true" : "false");
    return *this;
}

Writer& Writer::field(const std::optional<double>& value) {
    pending_.push_back(value ? format_number(*value) : std::string{});
    return *this;
}

void Writer::end_row() {
    row(pending_);
    pending_.clear();
}

} // namespace csv
} // namespace specshare
