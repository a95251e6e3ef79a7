#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace dtm {

// Contents of a problem file: `key = value` lines with `#` comments and
// insignificant blank lines.  Recognised keys:
//   equation  quoted expression string (required to solve)
//   t0, u0    expansion point and initial value (doubles)
//   order     truncation order (integer)
//   step      continuation step size (double)
//   steps     number of continuation segments (integer)
// Every field is optional at this layer; callers decide which are required
// and what the defaults are.
struct ivp_file_data {
    std::optional<std::string> equation;
    std::optional<double> t0;
    std::optional<double> u0;
    std::optional<int> order;
    std::optional<double> step;
    std::optional<int> steps;
};

// Parses problem-file text.  Throws dtm::error with a 1-based line number
// for unknown keys, duplicate keys, missing '=', unquoted equations and
// malformed numbers.
ivp_file_data parse_ivp_text(std::string_view text);

}  // namespace dtm
