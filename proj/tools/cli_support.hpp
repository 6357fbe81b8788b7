#pragma once

// Parsing of flag values and the fixed-precision report emitter used by the
// command-line front end.

#include <string>
#include <vector>

#include "spikehyp/core.hpp"

namespace spikehyp::cli {

/// "1.5", "-2i", "1.5+2i", "1e-3-4.5i".
complex parse_complex(const std::string& text);
std::vector<complex> parse_complex_list(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);
/// One value per line; blank lines and lines starting with '#' are skipped.
/// Throws std::ios_base::failure when the file cannot be read.
std::vector<double> read_real_file(const std::string& path);

/// %.17g, with nan/inf spelled as JSON strings.
std::string format_number(double v);
std::string format_complex(complex z);

/// Ordered key/value record rendered as JSON or as a two-row CSV.
class Report {
public:

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, const char* value) { set(key, std::string(value)); }
    void set(const std::string& key, double value);
    void set(const std::string& key, long long value);
    void set(const std::string& key, bool value);
    void set(const std::string& key, const Report& nested);
    void set(const std::string& key, const std::vector<Report>& list);

    std::string json() const;
    /// Nested records and lists are flattened to compact JSON strings.
    std::string csv() const;

private:
    struct Entry {
        std::string key;
        std::string rendered; // JSON text of the value
        bool is_string = false;
        std::string raw;      // unquoted text for CSV
    };
    std::vector<Entry> entries_;

    void put(const std::string& key, std::string rendered, bool is_string, std::string raw);
};

} // namespace spikehyp::cli
