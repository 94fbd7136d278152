#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pwyw/experiments.hpp"
#include "pwyw/game.hpp"
#include "pwyw/optimizer.hpp"

namespace pwyw {

// Machine-readable result emission. Both formats run every number through
// the same formatter, so the CSV and JSON of one run carry identical
// values; the CSV dialect is fixed (comma separator, '.' decimal point,
// LF endings, "NA" for absent buyer statistics).

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// value -> shortest general-format string with `precision` significant
// digits, locale-independent.
std::string format_number(double value, int precision);

// One labeled metrics row; key is a cell label or a formatted swept value.
struct ResultRow {
    std::string key;
    AggregateMetrics metrics;
};

struct ResultTable {
    std::string key_column;  // "cell" for simulate, parameter name for sweep
    std::vector<ResultRow> rows;
};

// Header: key_column,demand_rate,buyers,mean_price_paid,revenue,
//         total_cost_incurred,profit,mean_consumer_surplus,free_rider_rate
std::string to_csv(const ResultTable& table, int precision);

// Same rows as a JSON array of objects; absent statistics are null.
// Numbers are emitted through format_number, matching the CSV exactly.
std::string to_json_text(const ResultTable& table, int precision);

// Per-consumer trace with columns
// consumer_index,scenario,bought,price,consumer_payoff,supplier_payoff.
std::string trace_to_csv(const std::vector<InteractionOutcome>& outcomes,
                         int precision);

std::string consistency_report_json(const ConsistencyReport& report,
                                    int precision);

// Throws IoError on failure.
void write_text_file(const std::string& path, const std::string& content);

// Validates a results JSON document (as emitted by to_json_text) against
// the schema: array of objects, each with the key column as a string and
// every metric present as a number or null. Throws std::runtime_error
// naming the problem.
void validate_results_json_text(const std::string& text,
                                const std::string& key_column);

}  // namespace pwyw
