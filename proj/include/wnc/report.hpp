#pragma once

// Tabular reports rendered as aligned text, CSV or JSON. Rows are JSON objects keyed by the
// column names, so the JSON form keeps column order.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wnc/decompositions.hpp"
#include "wnc/theorems.hpp"

namespace wnc {

enum class Format { Table, Json, Csv };

inline std::optional<Format> parse_format(std::string_view s) {
    if (s == "table") return Format::Table;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    return std::nullopt;
}

struct Report {
    std::vector<std::string> columns;
    std::vector<Json> rows;
};

namespace detail {

inline std::string cell_text(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace detail

inline std::string render_report(const Report& report, Format format) {
    std::ostringstream os;
    switch (format) {
        case Format::Json: {
            Json arr = Json::array();
            for (const auto& row : report.rows) {
                Json obj = Json::object();
                for (const auto& c : report.columns)
                    if (row.contains(c)) obj[c] = row.at(c);
                arr.push_back(std::move(obj));
            }
            os << arr.dump(2) << "\n";
            break;
        }
        case Format::Csv: {
            for (std::size_t i = 0; i < report.columns.size(); ++i)
                os << (i ? "," : "") << detail::csv_quote(report.columns[i]);
            os << "\r\n";
            for (const auto& row : report.rows) {
                for (std::size_t i = 0; i < report.columns.size(); ++i) {
                    const auto& c = report.columns[i];
                    os << (i ? "," : "") << detail::csv_quote(row.contains(c) ? detail::cell_text(row.at(c)) : "");
                }
                os << "\r\n";
            }
            break;
        }
        case Format::Table: {
            std::vector<std::size_t> width;
            for (const auto& c : report.columns) width.push_back(c.size());
            std::vector<std::vector<std::string>> text;
            for (const auto& row : report.rows) {
                std::vector<std::string> line;
                for (std::size_t i = 0; i < report.columns.size(); ++i) {
                    const auto& c = report.columns[i];
                    line.push_back(row.contains(c) ? detail::cell_text(row.at(c)) : "");
                    width[i] = std::max(width[i], line.back().size());
                }
                text.push_back(std::move(line));
            }
            auto emit = [&](const std::vector<std::string>& line) {
                std::string out;
                for (std::size_t i = 0; i < line.size(); ++i) {
                    out += line[i];
                    if (i + 1 < line.size()) out += std::string(width[i] - line[i].size() + 2, ' ');
                }
                os << out << "\n";
            };
            emit(report.columns);
            std::vector<std::string> rule;
            for (auto w : width) rule.push_back(std::string(w, '-'));
            emit(rule);
            for (const auto& line : text) emit(line);
            break;
        }
    }
    return os.str();
}

inline Report suite_report(const SuiteReport& suite) {
    Report r{{"ring", "check_id", "outcome", "witness"}, {}};
    for (const auto& c : suite.cells) {
        Json row{{"ring", c.ring}, {"check_id", c.check_id}, {"outcome", outcome_name(c.outcome)}};
        if (!c.witness.is_null()) row["witness"] = c.witness;
        r.rows.push_back(std::move(row));
    }
    return r;
}

/// {ring, kind, holds, witness, certs: [{x, e, companion, sign, commutes}]}
inline Json verdict_json(const RingTable& r, const RingVerdict& v) {
    Json certs = Json::array();
    for (const auto& c : v.certs)
        certs.push_back(Json{{"x", c.target.index},
                             {"e", c.idempotent.index},
                             {"companion", c.companion.index},
                             {"sign", sign_symbol(c.sign)},
                             {"commutes", c.commutes}});
    return Json{{"ring", r.label()},
                {"kind", kind_name(v.kind)},
                {"holds", v.holds},
                {"witness", v.witness_failure ? Json(v.witness_failure->index) : Json(nullptr)},
                {"certs", std::move(certs)}};
}

}  // namespace wnc
