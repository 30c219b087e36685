#include "report.hpp"

#include <sstream>

namespace cli {

namespace {

std::string csv_cell(const json& v) {
    if (v.is_string()) {
        std::string s = "\"";
        for (char ch : v.get<std::string>()) s += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        return s + "\"";
    }
    return v.dump();
}

std::string meta_value(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

json rational_json(const Rational& q) { return opc::format_rational(q); }

json rationals_json(const std::vector<Rational>& v) {
    json out = json::array();
    for (const auto& q : v) out.push_back(rational_json(q));
    return out;
}

std::string render(const Report& r, const std::string& format) {
    if (format == "csv") {
        std::ostringstream os;
        os << "# command: " << r.command << "\n";
        for (const auto& [key, value] : r.summary.items()) os << "# " << key << ": " << meta_value(value) << "\n";
        for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
        os << "\n";
        for (const auto& row : r.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
            os << "\n";
        }
        return os.str();
    }
    json doc;
    doc["command"] = r.command;
    doc["config"] = r.config;
    doc["summary"] = r.summary;
    json table = json::array();
    for (const auto& row : r.rows) {
        json rec = json::object();
        for (std::size_t i = 0; i < row.size(); ++i) rec[r.columns[i]] = row[i];
        table.push_back(std::move(rec));
    }
    doc["table"] = std::move(table);
    return doc.dump(2) + "\n";
}

std::string error_record(const std::string& kind, const std::string& precondition,
                         const std::optional<long>& index, const std::string& detail) {
    json rec;
    rec["error"] = kind;
    rec["precondition"] = precondition;
    rec["index"] = index ? json(*index) : json(nullptr);
    rec["detail"] = detail;
    return rec.dump() + "\n";
}

}  // namespace cli
