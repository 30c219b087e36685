#pragma once

#include "config.hpp"

#include <string>
#include <vector>

namespace cli {

// One command's output: scalar summary plus an optional table.
struct Report {
    std::string command;
    json config;
    json summary = json::object();
    std::vector<std::string> columns;
    std::vector<std::vector<json>> rows;  // strings, integers or booleans
    int exit_code = 0;                    // 0 ok, 4 verification failure
};

std::string render(const Report& r, const std::string& format);

json rational_json(const Rational& q);
json rationals_json(const std::vector<Rational>& v);

// Structured error record written to stderr.
std::string error_record(const std::string& kind, const std::string& precondition,
                         const std::optional<long>& index, const std::string& detail);

}  // namespace cli
