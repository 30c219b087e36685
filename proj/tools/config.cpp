#include "config.hpp"

#include "opc/errors.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace cli {

namespace {

using opc::Error;
using opc::ErrorKind;

[[noreturn]] void config_error(const std::string& what, const std::string& detail = {}) {
    throw Error(ErrorKind::ConfigError, what, std::nullopt, detail);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) config_error(where + " is an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) config_error("known key in " + where, key);
}

Rational rational(const json& v, const std::string& where) {
    if (!v.is_string()) config_error(where + " is a rational string", v.dump());
    try {
        return opc::parse_rational(v.get<std::string>());
    } catch (const Error& e) {
        config_error(where + " is a rational string", v.get<std::string>());
    }
}

std::vector<Rational> rationals(const json& v, const std::string& where) {
    if (!v.is_array()) config_error(where + " is an array of rational strings");
    std::vector<Rational> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.push_back(rational(v[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

opc::Poly poly(const json& v, const std::string& where) { return opc::Poly(rationals(v, where)); }

std::map<std::string, Rational> rational_map(const json& v, const std::string& where) {
    if (!v.is_object()) config_error(where + " is an object");
    std::map<std::string, Rational> out;
    for (const auto& [key, value] : v.items()) out[key] = rational(value, where + "." + key);
    return out;
}

int integer(const json& v, const std::string& where, int lo) {
    if (!v.is_number_integer()) config_error(where + " is an integer", v.dump());
    const long long n = v.get<long long>();
    if (n < lo || n > 100000) config_error(where + " >= " + std::to_string(lo), v.dump());
    return static_cast<int>(n);
}

FunctionalSpec functional(const json& v, const std::string& where) {
    reject_unknown(v, {"family", "alpha", "beta", "a0", "multiply"}, where);
    if (!v.contains("family") || !v["family"].is_string()) config_error(where + ".family is a string");
    const std::string name = v["family"].get<std::string>();
    auto param = [&](const char* key, bool needed) -> Rational {
        if (!v.contains(key)) {
            if (needed) config_error(where + "." + key + " is given for " + name);
            return 0;
        }
        if (!needed) config_error(where + "." + key + " is not used by " + name);
        return rational(v[key], where + "." + key);
    };
    const Rational a0 = v.contains("a0") ? rational(v["a0"], where + ".a0") : Rational(1);
    FunctionalSpec spec;
    if (name == "hermite") {
        param("alpha", false);
        param("beta", false);
        spec.family = opc::ClassicalFamily::hermite(a0);
    } else if (name == "laguerre") {
        param("beta", false);
        spec.family = opc::ClassicalFamily::laguerre(param("alpha", true), a0);
    } else if (name == "bessel") {
        param("beta", false);
        spec.family = opc::ClassicalFamily::bessel(param("alpha", true), a0);
    } else if (name == "jacobi") {
        spec.family = opc::ClassicalFamily::jacobi(param("alpha", true), param("beta", true), a0);
    } else {
        config_error(where + ".family is hermite|laguerre|bessel|jacobi", name);
    }
    if (v.contains("multiply")) spec.multiply = poly(v["multiply"], where + ".multiply");
    return spec;
}

const std::set<std::string> kKinds{"1",   "2",       "3",         "4",      "II",     "fit",
                                   "sobolev", "companion", "verify", "moments", "recurrence"};

const std::set<std::string> kSequences{"b", "c", "beta", "gamma", "sigma", "tau", "d", "e"};

}  // namespace

opc::MomentFunctional FunctionalSpec::build() const {
    auto u = opc::MomentFunctional::classical(family);
    return multiply ? u.mul_poly(*multiply) : u;
}

std::pair<std::string, int> split_indexed(const std::string& key) {
    std::size_t cut = key.size();
    while (cut > 0 && key[cut - 1] >= '0' && key[cut - 1] <= '9') --cut;
    if (cut == 0 || cut == key.size() || key.size() - cut > 6) config_error("name is <family><index>", key);
    return {key.substr(0, cut), std::stoi(key.substr(cut))};
}

RunConfig parse_config(const json& doc_in) {
    const json& doc = (doc_in.is_object() && doc_in.contains("command") && doc_in.contains("config"))
                          ? doc_in["config"]
                          : doc_in;
    reject_unknown(doc,
                   {"case", "functional", "u0", "u", "u1", "n_max", "residual_depth", "lambda", "initials",
                    "sequences", "pins", "pairs", "A", "D", "format", "convention", "annotations"},
                   "config");
    RunConfig c;
    c.source = doc;
    if (!doc.contains("case") || !doc["case"].is_string()) config_error("config.case is a string");
    c.kind = doc["case"].get<std::string>();
    if (!kKinds.count(c.kind)) config_error("config.case is 1|2|3|4|II|fit|sobolev|companion|verify|moments|recurrence", c.kind);
    if (doc.contains("functional")) c.functional = functional(doc["functional"], "functional");
    if (doc.contains("u0")) c.u0 = functional(doc["u0"], "u0");
    if (doc.contains("u")) c.u = functional(doc["u"], "u");
    if (doc.contains("u1")) c.u1 = functional(doc["u1"], "u1");
    if (doc.contains("n_max")) c.n_max = integer(doc["n_max"], "n_max", 0);
    if (doc.contains("residual_depth")) c.residual_depth = integer(doc["residual_depth"], "residual_depth", 0);
    if (doc.contains("lambda")) c.lambda = rational(doc["lambda"], "lambda");
    if (doc.contains("initials")) c.initials = rational_map(doc["initials"], "initials");
    if (doc.contains("pins")) c.pins = rational_map(doc["pins"], "pins");
    if (doc.contains("sequences")) {
        const json& s = doc["sequences"];
        reject_unknown(s, kSequences, "sequences");
        for (const auto& [key, value] : s.items()) c.sequences[key] = rationals(value, "sequences." + key);
    }
    if (doc.contains("pairs")) {
        const json& p = doc["pairs"];
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
            config_error("pairs is [beta_gamma|d_e, b_c|sigma_tau]");
        c.pairs = {p[0].get<std::string>(), p[1].get<std::string>()};
        if ((c.pairs[0] != "beta_gamma" && c.pairs[0] != "d_e") || (c.pairs[1] != "b_c" && c.pairs[1] != "sigma_tau"))
            config_error("pairs is [beta_gamma|d_e, b_c|sigma_tau]", p.dump());
    }
    if (doc.contains("A")) c.A = poly(doc["A"], "A");
    if (doc.contains("D")) c.D = poly(doc["D"], "D");
    if (doc.contains("format")) {
        if (!doc["format"].is_string()) config_error("format is json|csv");
        c.format = doc["format"].get<std::string>();
        if (c.format != "json" && c.format != "csv") config_error("format is json|csv", c.format);
    }
    if (doc.contains("convention")) {
        const std::string conv = doc["convention"].is_string() ? doc["convention"].get<std::string>() : "";
        if (conv == "std") c.convention = opc::Convention::Std;
        else if (conv == "plus") c.convention = opc::Convention::Plus;
        else config_error("convention is std|plus", doc["convention"].dump());
    }
    if (doc.contains("annotations")) {
        const json& a = doc["annotations"];
        if (!a.is_object()) config_error("annotations is an object of strings");
        for (const auto& [key, value] : a.items())
            if (!value.is_string()) config_error("annotations." + key + " is a string");
        c.annotations = a;
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) config_error("config file is readable", path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        config_error("config is valid JSON", e.what());
    }
    return parse_config(doc);
}

}  // namespace cli
