#include "pwyw/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pwyw/report.hpp"

namespace pwyw {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ConfigError(path, what);
}

const json& member(const json& obj, const std::string& path,
                   const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end())
        fail(path.empty() ? key : path + "." + key, "required field missing");
    return *it;
}

const json* optional_member(const json& obj, const std::string& key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected true or false");
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

std::uint64_t as_u64(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

void check_object(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
}

Distribution parse_distribution(const json& j, const std::string& path) {
    if (j.is_number()) return Distribution::constant(j.get<double>());
    check_object(j, path);
    std::string kind = as_string(member(j, path, "kind"), path + ".kind");
    try {
        if (kind == "constant")
            return Distribution::constant(
                as_number(member(j, path, "value"), path + ".value"));
        if (kind == "uniform") {
            double lo = as_number(member(j, path, "lo"), path + ".lo");
            double hi = as_number(member(j, path, "hi"), path + ".hi");
            return Distribution::uniform(lo, hi);
        }
        if (kind == "truncated_normal") {
            double mean = as_number(member(j, path, "mean"), path + ".mean");
            double sd = as_number(member(j, path, "sd"), path + ".sd");
            double lo = as_number(member(j, path, "lo"), path + ".lo");
            double hi = as_number(member(j, path, "hi"), path + ".hi");
            return Distribution::truncated_normal(mean, sd, lo, hi);
        }
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    fail(path + ".kind",
         "unknown distribution kind '" + kind +
             "' (expected constant, uniform or truncated_normal)");
}

BeliefRule parse_belief(const json& j, const std::string& path) {
    std::string kind;
    if (j.is_string()) {
        kind = j.get<std::string>();
    } else {
        check_object(j, path);
        kind = as_string(member(j, path, "kind"), path + ".kind");
    }
    if (kind == "zero") return BeliefRule::zero();
    if (kind == "true_cost") return BeliefRule::true_cost();
    if (kind == "fixed") {
        if (!j.is_object()) fail(path, "fixed belief needs {kind, value}");
        double value = as_number(member(j, path, "value"), path + ".value");
        try {
            return BeliefRule::fixed(value);
        } catch (const std::invalid_argument& e) {
            fail(path + ".value", e.what());
        }
    }
    fail(path, "unknown believed_cost_rule '" + kind +
                   "' (expected zero, true_cost or fixed)");
}

PopulationSpec parse_population(const json& j, const std::string& path) {
    check_object(j, path);
    PopulationSpec spec;

    const json& size = member(j, path, "size");
    if (!size.is_number_unsigned() || size.get<std::uint64_t>() < 1)
        fail(path + ".size", "expected an integer >= 1");
    spec.size = size.get<std::size_t>();

    spec.seed = as_u64(member(j, path, "seed"), path + ".seed");

    if (const json* v = optional_member(j, "v"))
        spec.v_dist = parse_distribution(*v, path + ".v");
    if (const json* a = optional_member(j, "alpha"))
        spec.alpha_dist = parse_distribution(*a, path + ".alpha");
    if (const json* b = optional_member(j, "beta"))
        spec.beta_dist = parse_distribution(*b, path + ".beta");
    if (const json* g = optional_member(j, "gamma"))
        spec.gamma_dist = parse_distribution(*g, path + ".gamma");
    if (const json* l = optional_member(j, "lambda"))
        spec.lambda_dist = parse_distribution(*l, path + ".lambda");
    if (const json* f = optional_member(j, "free_rider_share"))
        spec.free_rider_share = as_number(*f, path + ".free_rider_share");
    if (const json* r = optional_member(j, "believed_cost_rule"))
        spec.believed_cost_rule =
            parse_belief(*r, path + ".believed_cost_rule");

    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return spec;
}

CostType parse_cost_type(const json& j, const std::string& path) {
    std::string s = as_string(j, path);
    if (s == "recoverable") return CostType::Recoverable;
    if (s == "sunk") return CostType::Sunk;
    fail(path, "unknown cost_type '" + s + "' (expected recoverable or sunk)");
}

StrategyCell parse_cell(const json& j, const std::string& path) {
    check_object(j, path);
    StrategyCell cell;
    cell.cost = as_number(member(j, path, "cost"), path + ".cost");
    cell.cost_type =
        parse_cost_type(member(j, path, "cost_type"), path + ".cost_type");
    if (const json* r = optional_member(j, "reveal_cost"))
        cell.reveal_cost = as_bool(*r, path + ".reveal_cost");
    if (const json* p = optional_member(j, "provide_erp"))
        cell.provide_erp = as_bool(*p, path + ".provide_erp");
    if (const json* e = optional_member(j, "erp_level"))
        cell.erp_level = as_number(*e, path + ".erp_level");
    // An erp_level alone implies provide_erp.
    if (cell.erp_level && !optional_member(j, "provide_erp"))
        cell.provide_erp = true;
    try {
        cell.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return cell;
}

Representative parse_representative(const json& j, const std::string& path) {
    std::string s = as_string(j, path);
    if (s == "upper") return Representative::Upper;
    if (s == "lower") return Representative::Lower;
    if (s == "midpoint") return Representative::Midpoint;
    fail(path, "unknown representative '" + s +
                   "' (expected upper, lower or midpoint)");
}

BehaviorMode parse_mode(const json& j, const std::string& path) {
    check_object(j, path);
    std::string kind = as_string(member(j, path, "kind"), path + ".kind");
    BehaviorMode mode;
    if (kind == "literal") {
        mode.kind = BehaviorMode::Kind::Literal;
    } else if (kind == "fs_model") {
        mode.kind = BehaviorMode::Kind::FsModel;
    } else {
        fail(path + ".kind",
             "unknown mode '" + kind + "' (expected literal or fs_model)");
    }
    if (const json* f = optional_member(j, "gain_fraction"))
        mode.gain_fraction = as_number(*f, path + ".gain_fraction");
    if (const json* r = optional_member(j, "representative"))
        mode.representative =
            parse_representative(*r, path + ".representative");
    try {
        mode.validate();
    } catch (const std::invalid_argument& e) {
        fail(path + ".gain_fraction", e.what());
    }
    return mode;
}

SweepParameter parse_sweep_parameter(const json& j, const std::string& path) {
    std::string s = as_string(j, path);
    if (s == "lambda") return SweepParameter::Lambda;
    if (s == "gamma") return SweepParameter::Gamma;
    if (s == "erp_level") return SweepParameter::ErpLevel;
    if (s == "free_rider_share") return SweepParameter::FreeRiderShare;
    if (s == "cost") return SweepParameter::Cost;
    fail(path, "unknown sweep parameter '" + s + "'");
}

SweepSection parse_sweep(const json& j, const std::string& path) {
    check_object(j, path);
    SweepSection section;
    section.parameter = parse_sweep_parameter(member(j, path, "parameter"),
                                              path + ".parameter");
    const json& grid = member(j, path, "grid");
    if (!grid.is_array() || grid.empty())
        fail(path + ".grid", "expected a non-empty array of numbers");
    for (std::size_t i = 0; i < grid.size(); ++i)
        section.grid.push_back(
            as_number(grid[i], path + ".grid[" + std::to_string(i) + "]"));
    return section;
}

OutputConfig parse_output(const json* j, const std::string& path) {
    OutputConfig out;
    if (j) {
        check_object(*j, path);
        if (const json* f = optional_member(*j, "format")) {
            std::string s = as_string(*f, path + ".format");
            if (s == "csv")
                out.format = OutputFormat::Csv;
            else if (s == "json")
                out.format = OutputFormat::Json;
            else
                fail(path + ".format", "expected csv or json");
        }
        if (const json* p = optional_member(*j, "path"))
            out.path = as_string(*p, path + ".path");
        if (const json* p = optional_member(*j, "precision")) {
            if (!p->is_number_integer())
                fail(path + ".precision", "expected an integer");
            out.precision = p->get<int>();
            if (out.precision < 1 || out.precision > 17)
                fail(path + ".precision", "must be in [1, 17]");
        }
    }
    if (out.path.empty())
        out.path = out.format == OutputFormat::Csv ? "pwyw_results.csv"
                                                   : "pwyw_results.json";
    return out;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        fail("<document>", std::string("not valid JSON: ") + e.what());
    }
    check_object(doc, "<document>");

    RunConfig config;
    config.population =
        parse_population(member(doc, "", "population"), "population");

    const json& strategies = member(doc, "", "strategies");
    if (!strategies.is_array() || strategies.empty())
        fail("strategies", "expected a non-empty array of strategy cells");
    for (std::size_t i = 0; i < strategies.size(); ++i) {
        std::string path = "strategies[" + std::to_string(i) + "]";
        config.strategies.push_back(parse_cell(strategies[i], path));
        std::string label = "cell" + std::to_string(i);
        if (const json* l = optional_member(strategies[i], "label"))
            label = as_string(*l, path + ".label");
        config.strategy_labels.push_back(label);
    }

    if (const json* m = optional_member(doc, "mode"))
        config.mode = parse_mode(*m, "mode");

    if (const json* s = optional_member(doc, "sweep"))
        config.sweep = parse_sweep(*s, "sweep");

    config.output = parse_output(optional_member(doc, "output"), "output");
    return config;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path);
    return parse_run_config(buffer.str());
}

}  // namespace pwyw
