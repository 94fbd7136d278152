#include "pwyw/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pwyw {

namespace {

const char* kMetricColumns[] = {
    "demand_rate",        "buyers",  "mean_price_paid",
    "revenue",            "total_cost_incurred",
    "profit",             "mean_consumer_surplus",
    "free_rider_rate",
};

std::string optional_number(const std::optional<double>& value, int precision,
                            const char* absent) {
    return value ? format_number(*value, precision) : std::string(absent);
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += ch;
        }
    }
    return out;
}

void append_metrics_csv(std::string& out, const AggregateMetrics& m,
                        int precision) {
    out += format_number(m.demand_rate, precision);
    out += ',';
    out += std::to_string(m.buyers);
    out += ',';
    out += optional_number(m.mean_price_paid, precision, "NA");
    out += ',';
    out += format_number(m.revenue, precision);
    out += ',';
    out += format_number(m.total_cost_incurred, precision);
    out += ',';
    out += format_number(m.profit, precision);
    out += ',';
    out += optional_number(m.mean_consumer_surplus, precision, "NA");
    out += ',';
    out += optional_number(m.free_rider_rate, precision, "NA");
}

void append_metrics_json(std::string& out, const AggregateMetrics& m,
                         int precision) {
    out += "\"demand_rate\": " + format_number(m.demand_rate, precision);
    out += ", \"buyers\": " + std::to_string(m.buyers);
    out += ", \"mean_price_paid\": " +
           optional_number(m.mean_price_paid, precision, "null");
    out += ", \"revenue\": " + format_number(m.revenue, precision);
    out += ", \"total_cost_incurred\": " +
           format_number(m.total_cost_incurred, precision);
    out += ", \"profit\": " + format_number(m.profit, precision);
    out += ", \"mean_consumer_surplus\": " +
           optional_number(m.mean_consumer_surplus, precision, "null");
    out += ", \"free_rider_rate\": " +
           optional_number(m.free_rider_rate, precision, "null");
}

}  // namespace

std::string format_number(double value, int precision) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value,
                             std::chars_format::general, precision);
    return std::string(buf, res.ptr);
}

std::string to_csv(const ResultTable& table, int precision) {
    std::string out = table.key_column;
    for (const char* col : kMetricColumns) {
        out += ',';
        out += col;
    }
    out += '\n';
    for (const auto& row : table.rows) {
        out += row.key;
        out += ',';
        append_metrics_csv(out, row.metrics, precision);
        out += '\n';
    }
    return out;
}

std::string to_json_text(const ResultTable& table, int precision) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        out += "  {\"" + json_escape(table.key_column) + "\": \"" +
               json_escape(row.key) + "\", ";
        append_metrics_json(out, row.metrics, precision);
        out += i + 1 < table.rows.size() ? "},\n" : "}\n";
    }
    out += "]\n";
    return out;
}

std::string trace_to_csv(const std::vector<InteractionOutcome>& outcomes,
                         int precision) {
    std::string out =
        "consumer_index,scenario,bought,price,consumer_payoff,"
        "supplier_payoff\n";
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        out += std::to_string(i);
        out += ',';
        out += scenario_name(o.scenario);
        out += ',';
        out += o.bought ? "true" : "false";
        out += ',';
        out += o.price ? format_number(*o.price, precision) : std::string("NA");
        out += ',';
        out += format_number(o.consumer_payoff, precision);
        out += ',';
        out += format_number(o.supplier_payoff, precision);
        out += '\n';
    }
    return out;
}

std::string consistency_report_json(const ConsistencyReport& report,
                                    int precision) {
    std::string out = "{";
    out += "\"pass\": " + std::string(report.pass ? "true" : "false");
    out += ", \"max_point_distance\": " +
           format_number(report.max_point_distance, precision);
    out += ", \"worst_point\": " + format_number(report.worst_point, precision);
    out += ", \"utility_gap\": " + format_number(report.utility_gap, precision);
    out += ", \"oracle_points\": " + std::to_string(report.oracle_points);
    out += ", \"note\": \"" + json_escape(report.note) + "\"}";
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed: " + path);
}

void validate_results_json_text(const std::string& text,
                                const std::string& key_column) {
    nlohmann::json doc = nlohmann::json::parse(text);  // throws on bad JSON
    if (!doc.is_array())
        throw std::runtime_error("results JSON: top level must be an array");
    for (const auto& row : doc) {
        if (!row.is_object())
            throw std::runtime_error("results JSON: rows must be objects");
        if (!row.contains(key_column) || !row.at(key_column).is_string())
            throw std::runtime_error("results JSON: missing key column '" +
                                     key_column + "'");
        if (!row.contains("buyers") ||
            !row.at("buyers").is_number_unsigned())
            throw std::runtime_error(
                "results JSON: buyers must be a non-negative integer");
        for (const char* col : kMetricColumns) {
            if (std::string(col) == "buyers") continue;
            if (!row.contains(col))
                throw std::runtime_error(
                    std::string("results JSON: missing metric ") + col);
            const auto& v = row.at(col);
            bool nullable = std::string(col) == "mean_price_paid" ||
                            std::string(col) == "mean_consumer_surplus" ||
                            std::string(col) == "free_rider_rate";
            if (!(v.is_number() || (nullable && v.is_null())))
                throw std::runtime_error(
                    std::string("results JSON: bad type for metric ") + col);
        }
    }
}

}  // namespace pwyw
