// pwyw — pay-what-you-want market simulator and consumer price solver.
//
// Subcommands:
//   solve     closed-form optimal price for one consumer, with an optional
//             brute-force cross-check
//   simulate  run a population through the strategy cells of a config file
//   sweep     run the config's sweep section and tabulate one row per value
//
// Exit codes: 0 success, 1 I/O failure, 2 invalid parameters/config.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pwyw/config.hpp"
#include "pwyw/experiments.hpp"
#include "pwyw/game.hpp"
#include "pwyw/optimizer.hpp"
#include "pwyw/population.hpp"
#include "pwyw/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;

struct SolveArgs {
    std::optional<double> p_r;
    std::optional<double> v;
    std::optional<double> erp;
    double c = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    bool verify = false;
    std::optional<double> step;
};

std::string format_set(const pwyw::ArgmaxSet& set, int precision) {
    std::string out;
    for (std::size_t i = 0; i < set.pieces.size(); ++i) {
        if (i) out += " U ";
        const auto& piece = set.pieces[i];
        if (piece.is_point())
            out += pwyw::format_number(piece.lo, precision);
        else
            out += "[" + pwyw::format_number(piece.lo, precision) + ", " +
                   pwyw::format_number(piece.hi, precision) + "]";
    }
    return out;
}

int run_solve(const SolveArgs& args) {
    if (args.p_r && args.v) {
        std::cerr << "error: pass either --pr or --v, not both\n";
        return kExitInvalid;
    }
    if (!args.p_r && !args.v) {
        std::cerr << "error: one of --pr or --v is required\n";
        return kExitInvalid;
    }
    double p_r = args.p_r ? *args.p_r
                          : (args.erp ? std::min(*args.erp, *args.v) : *args.v);

    const int precision = 9;
    pwyw::ArgmaxSet set = pwyw::optimal_price_closed_form(
        p_r, args.c, args.alpha, args.beta, args.gamma);

    bool single = set.pieces.size() == 1 && set.pieces.front().is_point();
    std::string label =
        pwyw::optimal_price_case(p_r, args.c, args.beta, args.gamma);
    std::cout << (single ? "P* = " : "P* in ") << format_set(set, precision)
              << " (case: " << label << ")\n";
    std::cout << "max utility = "
              << pwyw::format_number(set.max_utility, precision) << " at p_r = "
              << pwyw::format_number(p_r, precision) << ", c = "
              << pwyw::format_number(args.c, precision) << "\n";

    if (args.verify) {
        double step = args.step ? *args.step : 1e-3 * std::max(1.0, p_r);
        pwyw::ConsistencyReport report = pwyw::check_consistency(
            p_r, args.c, args.alpha, args.beta, args.gamma, step);
        std::cout << "oracle check (step "
                  << pwyw::format_number(step, precision)
                  << "): " << (report.pass ? "PASS" : "FAIL") << " "
                  << pwyw::consistency_report_json(report, precision) << "\n";
    }
    return kExitOk;
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
    std::filesystem::path p(path);
    std::filesystem::path stem = p.stem();
    std::filesystem::path ext = p.extension();
    p.replace_filename(stem.string() + suffix + ext.string());
    return p.string();
}

void print_table(const pwyw::ResultTable& table, int precision) {
    std::printf("%-20s %12s %8s %12s %12s %12s %12s\n",
                table.key_column.c_str(), "demand", "buyers", "mean_price",
                "revenue", "cost", "profit");
    for (const auto& row : table.rows) {
        const auto& m = row.metrics;
        std::printf("%-20s %12s %8zu %12s %12s %12s %12s\n", row.key.c_str(),
                    pwyw::format_number(m.demand_rate, 6).c_str(), m.buyers,
                    m.mean_price_paid
                        ? pwyw::format_number(*m.mean_price_paid, 6).c_str()
                        : "NA",
                    pwyw::format_number(m.revenue, precision).c_str(),
                    pwyw::format_number(m.total_cost_incurred, precision).c_str(),
                    pwyw::format_number(m.profit, precision).c_str());
    }
}

void write_table(const pwyw::ResultTable& table,
                 const pwyw::OutputConfig& output) {
    std::string content = output.format == pwyw::OutputFormat::Csv
                              ? pwyw::to_csv(table, output.precision)
                              : pwyw::to_json_text(table, output.precision);
    pwyw::write_text_file(output.path, content);
    std::cout << "wrote " << output.path << "\n";
}

// Cross-checks every FsModel pricing decision against the grid oracle.
// Reporting only; does not change the exit code.
void verify_population(const std::vector<pwyw::ConsumerProfile>& population,
                       const std::vector<pwyw::StrategyCell>& cells,
                       const pwyw::BehaviorMode& mode,
                       const pwyw::BeliefRule& belief) {
    if (mode.kind != pwyw::BehaviorMode::Kind::FsModel) {
        std::cout << "verify: nothing to cross-check in literal mode\n";
        return;
    }
    std::size_t checked = 0;
    std::size_t failed = 0;
    for (const auto& cell : cells) {
        pwyw::SupplierProfile supplier = cell.supplier();
        if (supplier.reveals_cost) continue;  // fair-split path, no optimizer
        for (const auto& consumer : population) {
            double p_r = pwyw::effective_reference_price(consumer, supplier);
            double gamma_eff = 0.0;
            double believed = 0.0;
            if (supplier.cost_type == pwyw::CostType::Sunk) {
                gamma_eff = consumer.gamma;
                believed = belief.believed_cost(supplier);
            }
            double c_opt = std::min(believed, p_r);
            double step = 1e-3 * std::max(1.0, p_r);
            auto report = pwyw::check_consistency(
                p_r, c_opt, consumer.alpha, consumer.beta, gamma_eff, step);
            ++checked;
            if (!report.pass) {
                ++failed;
                std::cout << "verify FAIL: "
                          << pwyw::consistency_report_json(report, 9) << "\n";
            }
        }
    }
    std::cout << "verify: " << checked
              << " optimizer decisions cross-checked against the grid oracle, "
              << failed << " failures\n";
}

int run_simulate(const std::string& config_path, bool trace, unsigned threads,
                 bool verify) {
    pwyw::RunConfig config = pwyw::load_run_config(config_path);
    auto population = pwyw::sample_population(config.population);
    const auto& belief = config.population.believed_cost_rule;

    pwyw::ResultTable table;
    table.key_column = "cell";
    for (std::size_t i = 0; i < config.strategies.size(); ++i) {
        pwyw::CellRun run = pwyw::run_cell(population, config.strategies[i],
                                           config.mode, belief, threads);
        table.rows.push_back({config.strategy_labels[i], run.metrics});
        if (trace) {
            std::string path = with_suffix(
                config.output.path, "_trace_" + config.strategy_labels[i]);
            if (!path.ends_with(".csv")) path += ".csv";
            pwyw::write_text_file(
                path, pwyw::trace_to_csv(run.outcomes, config.output.precision));
            std::cout << "wrote " << path << "\n";
        }
    }

    if (verify)
        verify_population(population, config.strategies, config.mode, belief);

    print_table(table, config.output.precision);
    write_table(table, config.output);
    return kExitOk;
}

// Rebuilds the optimizer-relevant view of each sweep row and cross-checks
// it; lambda and free-rider sweeps never move the optimizer inputs, so one
// base check covers the whole grid for them.
void verify_sweep(const pwyw::RunConfig& config) {
    using pwyw::SweepParameter;
    if (config.mode.kind != pwyw::BehaviorMode::Kind::FsModel) {
        std::cout << "verify: nothing to cross-check in literal mode\n";
        return;
    }
    auto base = pwyw::sample_population(config.population);
    const auto& belief = config.population.believed_cost_rule;
    SweepParameter parameter = config.sweep->parameter;

    std::vector<double> grid = config.sweep->grid;
    if (parameter == SweepParameter::Lambda ||
        parameter == SweepParameter::FreeRiderShare)
        grid = {grid.front()};

    for (double value : grid) {
        auto population = base;
        pwyw::StrategyCell cell = config.strategies.front();
        switch (parameter) {
            case SweepParameter::Gamma:
                for (auto& p : population)
                    p = pwyw::ConsumerProfile(p.v, p.alpha, p.beta, value,
                                              p.lambda, p.is_free_rider);
                break;
            case SweepParameter::ErpLevel:
                cell.provide_erp = true;
                cell.erp_level = value;
                break;
            case SweepParameter::Cost:
                cell.cost = value;
                break;
            default:
                break;
        }
        verify_population(population, {cell}, config.mode, belief);
    }
}

int run_sweep(const std::string& config_path, unsigned threads, bool verify) {
    pwyw::RunConfig config = pwyw::load_run_config(config_path);
    if (!config.sweep)
        throw pwyw::ConfigError("sweep", "config has no sweep section");

    auto rows = pwyw::sweep(config.population, config.strategies.front(),
                            config.sweep->parameter, config.sweep->grid,
                            config.mode, threads);

    if (verify) verify_sweep(config);

    pwyw::ResultTable table;
    table.key_column = pwyw::sweep_parameter_name(config.sweep->parameter);
    for (const auto& row : rows)
        table.rows.push_back(
            {pwyw::format_number(row.value, config.output.precision),
             row.metrics});

    print_table(table, config.output.precision);
    write_table(table, config.output);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pay-what-you-want market simulator"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve = app.add_subcommand(
        "solve", "optimal price for one consumer (closed form)");
    solve->add_option("--pr", solve_args.p_r, "reference price");
    solve->add_option("--v", solve_args.v,
                      "internal reference price (alternative to --pr)");
    solve->add_option("--erp", solve_args.erp,
                      "external reference price (caps --v)");
    solve->add_option("--c", solve_args.c, "supplier unit cost")->required();
    solve->add_option("--alpha", solve_args.alpha, "envy weight")->required();
    solve->add_option("--beta", solve_args.beta, "altruism weight")->required();
    solve->add_option("--gamma", solve_args.gamma, "loss-sensitivity weight")
        ->required();
    solve->add_flag("--verify", solve_args.verify,
                    "cross-check against the grid oracle");
    solve->add_option("--step", solve_args.step, "oracle grid step");

    std::string config_path;
    bool trace = false;
    bool verify = false;
    unsigned threads = 1;

    CLI::App* simulate =
        app.add_subcommand("simulate", "run the strategy cells of a config");
    simulate->add_option("config", config_path, "JSON config path")->required();
    simulate->add_flag("--trace", trace, "write per-consumer outcome files");
    simulate->add_option("--threads", threads, "worker threads");
    simulate->add_flag("--verify", verify,
                       "cross-check FsModel prices against the grid oracle");

    CLI::App* sweep =
        app.add_subcommand("sweep", "run the sweep section of a config");
    sweep->add_option("config", config_path, "JSON config path")->required();
    sweep->add_option("--threads", threads, "worker threads");
    sweep->add_flag("--verify", verify,
                    "cross-check FsModel prices against the grid oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        if (solve->parsed()) return run_solve(solve_args);
        if (simulate->parsed())
            return run_simulate(config_path, trace, threads, verify);
        if (sweep->parsed()) return run_sweep(config_path, threads, verify);
    } catch (const pwyw::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return kExitIo;
    } catch (const pwyw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
