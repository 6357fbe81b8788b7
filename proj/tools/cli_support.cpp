#include "cli_support.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace spikehyp::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& text)
{
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(trim(item));
    if (out.empty() || (out.size() == 1 && out[0].empty()))
        return {};
    return out;
}

double parse_real(const std::string& text)
{
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size())
        throw DomainError("cannot parse number '" + text + "'");
    return v;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

complex parse_complex(const std::string& text)
{
    const std::string t = trim(text);
    if (t.empty())
        throw DomainError("empty complex literal");
    const char* begin = t.c_str();
    char* end = nullptr;
    if (t == "i" || t == "+i")
        return {0.0, 1.0};
    if (t == "-i")
        return {0.0, -1.0};
    const double first = std::strtod(begin, &end);
    if (end == begin)
        throw DomainError("cannot parse complex literal '" + text + "'");
    std::string rest(end);
    if (rest.empty())
        return {first, 0.0};
    if (rest == "i")
        return {0.0, first};
    if ((rest[0] == '+' || rest[0] == '-') && rest.back() == 'i') {
        const std::string imag = rest.substr(0, rest.size() - 1);
        if (imag == "+" || imag == "-")
            return {first, imag == "+" ? 1.0 : -1.0};
        return {first, parse_real(imag)};
    }
    throw DomainError("cannot parse complex literal '" + text + "'");
}

std::vector<complex> parse_complex_list(const std::string& text)
{
    std::vector<complex> out;
    for (const auto& item : split(text))
        out.push_back(parse_complex(item));
    return out;
}

std::vector<double> parse_real_list(const std::string& text)
{
    std::vector<double> out;
    for (const auto& item : split(text))
        out.push_back(parse_real(item));
    return out;
}

std::vector<double> read_real_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::ios_base::failure("cannot open '" + path + "'");
    std::vector<double> out;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#')
            continue;
        out.push_back(parse_real(line));
    }
    if (in.bad())
        throw std::ios_base::failure("error reading '" + path + "'");
    return out;
}

std::string format_number(double v)
{
    if (std::isnan(v))
        return "\"nan\"";
    if (std::isinf(v))
        return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_complex(complex z)
{
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

void Report::put(const std::string& key, std::string rendered, bool is_string, std::string raw)
{
    for (auto& e : entries_) {
        if (e.key == key) {
            e = {key, std::move(rendered), is_string, std::move(raw)};
            return;
        }
    }
    entries_.push_back({key, std::move(rendered), is_string, std::move(raw)});
}

void Report::set(const std::string& key, const std::string& value)
{
    put(key, "\"" + escape(value) + "\"", true, value);
}

void Report::set(const std::string& key, double value)
{
    const std::string text = format_number(value);
    put(key, text, false, text);
}

void Report::set(const std::string& key, long long value)
{
    const std::string text = std::to_string(value);
    put(key, text, false, text);
}

void Report::set(const std::string& key, bool value) { put(key, value ? "true" : "false", false, value ? "true" : "false"); }

void Report::set(const std::string& key, const Report& nested)
{
    const std::string text = nested.json();
    put(key, text, false, text);
}

void Report::set(const std::string& key, const std::vector<Report>& list)
{
    std::string text = "[";
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (i)
            text += ",";
        text += list[i].json();
    }
    text += "]";
    put(key, text, false, text);
}

std::string Report::json() const
{
    std::string out = "{";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i)
            out += ",";
        out += "\"" + escape(entries_[i].key) + "\":" + entries_[i].rendered;
    }
    return out + "}";
}

std::string Report::csv() const
{
    std::string header;
    std::string row;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) {
            header += ",";
            row += ",";
        }
        header += csv_field(entries_[i].key);
        row += csv_field(entries_[i].raw);
    }
    return header + "\n" + row + "\n";
}

} // namespace spikehyp::cli
