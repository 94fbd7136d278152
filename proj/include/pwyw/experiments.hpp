#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pwyw/game.hpp"
#include "pwyw/population.hpp"
#include "pwyw/preferences.hpp"

namespace pwyw {

// Runs a population through supplier information-disclosure strategies and
// aggregates the outcomes. Cells sharing one population object are paired
// comparisons (common random numbers).

// One supplier strategy: which information is disclosed and at what cost
// structure the item is produced.
struct StrategyCell {
    bool provide_erp = false;
    std::optional<double> erp_level;  // present iff provide_erp
    bool reveal_cost = false;
    CostType cost_type = CostType::Recoverable;
    double cost = 0.0;

    SupplierProfile supplier() const;
    void validate() const;
};

struct AggregateMetrics {
    std::size_t population_size = 0;
    std::size_t buyers = 0;
    double demand_rate = 0.0;
    // Buyer-conditioned statistics are absent when nobody bought, so a
    // demand collapse never masquerades as a zero price.
    std::optional<double> mean_price_paid;
    double revenue = 0.0;
    double total_cost_incurred = 0.0;
    double profit = 0.0;  // always exactly revenue - total_cost_incurred
    std::optional<double> mean_consumer_surplus;
    std::optional<double> free_rider_rate;  // buyers paying exactly 0
};

struct CellRun {
    AggregateMetrics metrics;
    std::vector<InteractionOutcome> outcomes;  // one per consumer, in order
};

// Decides every consumer independently (in parallel across `threads`
// contiguous chunks) and aggregates sequentially in index order, so the
// result is identical for every thread count.
CellRun run_cell(const std::vector<ConsumerProfile>& population,
                 const StrategyCell& cell, const BehaviorMode& mode,
                 const BeliefRule& belief, unsigned threads = 1);

// One metrics row per cell over the same population object.
std::vector<AggregateMetrics> compare_strategies(
    const std::vector<ConsumerProfile>& population,
    const std::vector<StrategyCell>& cells, const BehaviorMode& mode,
    const BeliefRule& belief, unsigned threads = 1);

enum class SweepParameter { Lambda, Gamma, ErpLevel, FreeRiderShare, Cost };

const char* sweep_parameter_name(SweepParameter p);

struct SweepRow {
    double value = 0.0;
    AggregateMetrics metrics;
};

// One row per grid value applied to the strategy template. Lambda and
// free-rider-share sweeps resample the population from a modified spec
// (lambda is drawn last and free-rider flags ride on top, so every other
// parameter draw is unchanged — rows stay paired); a gamma sweep overrides
// gamma on one shared population; ERP and cost sweeps only touch the cell.
// The whole grid is validated before the first row runs.
std::vector<SweepRow> sweep(const PopulationSpec& spec,
                            const StrategyCell& cell_template,
                            SweepParameter parameter,
                            const std::vector<double>& grid,
                            const BehaviorMode& mode, unsigned threads = 1);

}  // namespace pwyw
