#include "dtm/ivp_file.hpp"

#include <cctype>
#include <charconv>

#include "dtm/errors.hpp"

namespace dtm {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw error("problem file line " + std::to_string(line) + ": " + what);
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

// Removes a trailing comment, ignoring '#' characters inside a quoted value.
std::string_view strip_comment(std::string_view s) {
    bool quoted = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"') quoted = !quoted;
        else if (s[i] == '#' && !quoted) return s.substr(0, i);
    }
    return s;
}

double parse_number(int line, const std::string& key, std::string_view value) {
    double x = 0.0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), x);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size())
        fail(line, "value of '" + key + "' is not a number: '" + std::string(value) + "'");
    return x;
}

int parse_integer(int line, const std::string& key, std::string_view value) {
    int x = 0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), x);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size())
        fail(line, "value of '" + key + "' is not an integer: '" + std::string(value) + "'");
    return x;
}

template <typename T>
void assign_once(int line, const std::string& key, std::optional<T>& slot, T value) {
    if (slot.has_value()) fail(line, "duplicate key '" + key + "'");
    slot = std::move(value);
}

}  // namespace

ivp_file_data parse_ivp_text(std::string_view text) {
    ivp_file_data data;
    int line_no = 0;
    while (!text.empty()) {
        ++line_no;
        std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        line = trim(strip_comment(line));
        if (line.empty()) continue;

        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
        std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) fail(line_no, "missing key before '='");
        if (value.empty()) fail(line_no, "missing value for '" + key + "'");

        if (key == "equation") {
            if (value.size() < 2 || value.front() != '"' || value.back() != '"')
                fail(line_no, "equation must be a double-quoted string");
            assign_once(line_no, key, data.equation,
                        std::string(value.substr(1, value.size() - 2)));
        } else if (key == "t0") {
            assign_once(line_no, key, data.t0, parse_number(line_no, key, value));
        } else if (key == "u0") {
            assign_once(line_no, key, data.u0, parse_number(line_no, key, value));
        } else if (key == "order") {
            assign_once(line_no, key, data.order, parse_integer(line_no, key, value));
        } else if (key == "step") {
            assign_once(line_no, key, data.step, parse_number(line_no, key, value));
        } else if (key == "steps") {
            assign_once(line_no, key, data.steps, parse_integer(line_no, key, value));
        } else {
            fail(line_no, "unknown key '" + key + "'");
        }
    }
    return data;
}

}  // namespace dtm
