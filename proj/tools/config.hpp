#pragma once

#include "opc/functional.hpp"
#include "opc/mops.hpp"
#include "opc/poly.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cli {

using json = nlohmann::ordered_json;
using opc::Rational;

// A classical functional, optionally multiplied by a polynomial.
struct FunctionalSpec {
    opc::ClassicalFamily family = opc::ClassicalFamily::hermite();
    std::optional<opc::Poly> multiply;

    opc::MomentFunctional build() const;
};

struct RunConfig {
    std::string kind;  // 1|2|3|4|II|fit|sobolev|companion|verify|moments|recurrence
    std::optional<FunctionalSpec> functional, u0, u, u1;
    int n_max = 10;
    int residual_depth = 30;
    std::optional<Rational> lambda;
    std::map<std::string, Rational> initials;
    std::map<std::string, std::vector<Rational>> sequences;
    std::map<std::string, Rational> pins;
    std::vector<std::string> pairs;  // Case II: {beta_gamma|d_e, b_c|sigma_tau}
    std::optional<opc::Poly> A, D;
    std::string format = "json";
    opc::Convention convention = opc::Convention::Std;
    json annotations = json::object();
    json source;  // the configuration as given, with overrides applied
};

// Accepts a configuration object, or a report that embeds one under "config".
RunConfig parse_config(const json& doc);
RunConfig load_config(const std::string& path);

// Splits "sigma12" into ("sigma", 12); throws ConfigError otherwise.
std::pair<std::string, int> split_indexed(const std::string& key);

}  // namespace cli
