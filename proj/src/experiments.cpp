#include "pwyw/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

namespace pwyw {

SupplierProfile StrategyCell::supplier() const {
    validate();
    return SupplierProfile(cost, cost_type,
                           provide_erp ? erp_level : std::nullopt, reveal_cost);
}

void StrategyCell::validate() const {
    if (provide_erp != erp_level.has_value())
        throw std::invalid_argument(
            "strategy cell: erp_level must be present exactly when "
            "provide_erp is set");
    if (erp_level && !(std::isfinite(*erp_level) && *erp_level >= 0.0))
        throw std::invalid_argument("strategy cell: erp_level must be >= 0");
    if (!(std::isfinite(cost) && cost >= 0.0))
        throw std::invalid_argument("strategy cell: cost must be >= 0");
}

namespace {

AggregateMetrics aggregate(const std::vector<InteractionOutcome>& outcomes,
                           const StrategyCell& cell, std::size_t n) {
    AggregateMetrics m;
    m.population_size = n;

    std::size_t buyers = 0;
    std::size_t zero_payers = 0;
    double revenue = 0.0;
    double surplus = 0.0;
    for (const auto& o : outcomes) {
        if (!o.bought) continue;
        ++buyers;
        revenue += *o.price;
        surplus += o.consumer_payoff;
        if (*o.price == 0.0) ++zero_payers;
    }

    m.buyers = buyers;
    m.demand_rate = static_cast<double>(buyers) / static_cast<double>(n);
    m.revenue = revenue;
    m.total_cost_incurred =
        cell.cost * static_cast<double>(
                        cell.cost_type == CostType::Sunk ? n : buyers);
    m.profit = m.revenue - m.total_cost_incurred;
    if (buyers > 0) {
        m.mean_price_paid = revenue / static_cast<double>(buyers);
        m.mean_consumer_surplus = surplus / static_cast<double>(buyers);
        m.free_rider_rate =
            static_cast<double>(zero_payers) / static_cast<double>(buyers);
    }
    return m;
}

}  // namespace

CellRun run_cell(const std::vector<ConsumerProfile>& population,
                 const StrategyCell& cell, const BehaviorMode& mode,
                 const BeliefRule& belief, unsigned threads) {
    if (population.empty())
        throw std::invalid_argument("run_cell: population is empty");
    SupplierProfile supplier = cell.supplier();

    std::size_t n = population.size();
    CellRun run;
    run.outcomes.resize(n);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            run.outcomes[i] = decide(population[i], supplier, mode, belief);
    };

    if (threads <= 1 || n < 2) {
        work(0, n);
    } else {
        unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(n));
        std::vector<std::thread> pool;
        pool.reserve(workers);
        std::size_t chunk = (n + workers - 1) / workers;
        for (unsigned t = 0; t < workers; ++t) {
            std::size_t begin = static_cast<std::size_t>(t) * chunk;
            std::size_t end = std::min(n, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(work, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    // Sequential, index-ordered reduction: identical totals at any thread
    // count.
    run.metrics = aggregate(run.outcomes, cell, n);
    return run;
}

std::vector<AggregateMetrics> compare_strategies(
    const std::vector<ConsumerProfile>& population,
    const std::vector<StrategyCell>& cells, const BehaviorMode& mode,
    const BeliefRule& belief, unsigned threads) {
    if (cells.empty())
        throw std::invalid_argument("compare_strategies: need at least one cell");
    std::vector<AggregateMetrics> rows;
    rows.reserve(cells.size());
    for (const auto& cell : cells)
        rows.push_back(run_cell(population, cell, mode, belief, threads).metrics);
    return rows;
}

const char* sweep_parameter_name(SweepParameter p) {
    switch (p) {
        case SweepParameter::Lambda: return "lambda";
        case SweepParameter::Gamma: return "gamma";
        case SweepParameter::ErpLevel: return "erp_level";
        case SweepParameter::FreeRiderShare: return "free_rider_share";
        case SweepParameter::Cost: return "cost";
    }
    return "?";
}

namespace {

void validate_grid_value(SweepParameter parameter, double value) {
    if (!std::isfinite(value))
        throw std::invalid_argument("sweep: grid values must be finite");
    switch (parameter) {
        case SweepParameter::Lambda:
            if (value <= 0.0 || value > 1.0)
                throw std::invalid_argument(
                    "sweep: lambda grid values must be in (0, 1]");
            break;
        case SweepParameter::FreeRiderShare:
            if (value < 0.0 || value > 1.0)
                throw std::invalid_argument(
                    "sweep: free_rider_share grid values must be in [0, 1]");
            break;
        case SweepParameter::Gamma:
        case SweepParameter::ErpLevel:
        case SweepParameter::Cost:
            if (value < 0.0)
                throw std::invalid_argument(
                    "sweep: grid values must be >= 0");
            break;
    }
}

}  // namespace

std::vector<SweepRow> sweep(const PopulationSpec& spec,
                            const StrategyCell& cell_template,
                            SweepParameter parameter,
                            const std::vector<double>& grid,
                            const BehaviorMode& mode, unsigned threads) {
    if (grid.empty()) throw std::invalid_argument("sweep: grid is empty");
    for (double value : grid) validate_grid_value(parameter, value);
    spec.validate();
    cell_template.validate();

    bool resample = parameter == SweepParameter::Lambda ||
                    parameter == SweepParameter::FreeRiderShare;
    std::vector<ConsumerProfile> base;
    if (!resample) base = sample_population(spec);

    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double value : grid) {
        PopulationSpec row_spec = spec;
        StrategyCell cell = cell_template;
        std::vector<ConsumerProfile> population;

        switch (parameter) {
            case SweepParameter::Lambda:
                row_spec.lambda_dist = Distribution::constant(value);
                population = sample_population(row_spec);
                break;
            case SweepParameter::FreeRiderShare:
                row_spec.free_rider_share = value;
                population = sample_population(row_spec);
                break;
            case SweepParameter::Gamma:
                population = base;
                for (auto& p : population)
                    p = ConsumerProfile(p.v, p.alpha, p.beta, value, p.lambda,
                                        p.is_free_rider);
                break;
            case SweepParameter::ErpLevel:
                cell.provide_erp = true;
                cell.erp_level = value;
                population = base;
                break;
            case SweepParameter::Cost:
                cell.cost = value;
                population = base;
                break;
        }

        CellRun run = run_cell(population, cell, mode,
                               row_spec.believed_cost_rule, threads);
        rows.push_back({value, run.metrics});
    }
    return rows;
}

}  // namespace pwyw
