#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pwyw/experiments.hpp"

using namespace pwyw;

namespace {

std::vector<ConsumerProfile> identical_consumers(std::size_t n, double v,
                                                 double lambda = 0.5) {
    std::vector<ConsumerProfile> pop;
    pop.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        pop.emplace_back(v, 1.0, 0.3, 0.5, lambda, false);
    return pop;
}

StrategyCell reveal_cell(double cost, CostType type = CostType::Recoverable) {
    StrategyCell cell;
    cell.reveal_cost = true;
    cell.cost = cost;
    cell.cost_type = type;
    return cell;
}

PopulationSpec constant_spec(std::size_t size, std::uint64_t seed, double v) {
    PopulationSpec spec;
    spec.size = size;
    spec.seed = seed;
    spec.v_dist = Distribution::constant(v);
    spec.alpha_dist = Distribution::constant(1.0);
    spec.beta_dist = Distribution::constant(0.3);
    spec.gamma_dist = Distribution::constant(0.5);
    spec.lambda_dist = Distribution::constant(0.5);
    return spec;
}

const BeliefRule kBelief = BeliefRule::true_cost();

}  // namespace

TEST_CASE("hundred identical consumers under a revealed cost") {
    auto pop = identical_consumers(100, 10.0);
    CellRun run = run_cell(pop, reveal_cell(4.0), BehaviorMode::literal(),
                           kBelief);
    CHECK(run.metrics.population_size == 100);
    CHECK(run.metrics.buyers == 100);
    CHECK(run.metrics.demand_rate == 1.0);
    CHECK(*run.metrics.mean_price_paid == 7.0);
    CHECK(run.metrics.revenue == 700.0);
    CHECK(run.metrics.total_cost_incurred == 400.0);
    CHECK(run.metrics.profit == 300.0);
    CHECK(*run.metrics.mean_consumer_surplus == 3.0);
    CHECK(*run.metrics.free_rider_rate == 0.0);
    CHECK(run.outcomes.size() == 100);
}

TEST_CASE("demand collapse leaves buyer statistics absent") {
    auto pop = identical_consumers(100, 3.0);

    CellRun recoverable = run_cell(pop, reveal_cell(4.0, CostType::Recoverable),
                                   BehaviorMode::literal(), kBelief);
    CHECK(recoverable.metrics.buyers == 0);
    CHECK(recoverable.metrics.demand_rate == 0.0);
    CHECK(!recoverable.metrics.mean_price_paid.has_value());
    CHECK(!recoverable.metrics.mean_consumer_surplus.has_value());
    CHECK(!recoverable.metrics.free_rider_rate.has_value());
    CHECK(recoverable.metrics.revenue == 0.0);
    CHECK(recoverable.metrics.profit == 0.0);

    CellRun sunk = run_cell(pop, reveal_cell(4.0, CostType::Sunk),
                            BehaviorMode::literal(), kBelief);
    CHECK(sunk.metrics.total_cost_incurred == 400.0);
    CHECK(sunk.metrics.profit == -400.0);
}

TEST_CASE("accounting identities on random populations") {
    PopulationSpec spec = constant_spec(400, 77, 10.0);
    spec.v_dist = Distribution::uniform(0.0, 15.0);
    spec.beta_dist = Distribution::uniform(0.0, 0.9);
    spec.alpha_dist = Distribution::uniform(0.9, 3.0);
    spec.free_rider_share = 0.25;
    auto pop = sample_population(spec);

    StrategyCell cells[] = {
        reveal_cell(4.0, CostType::Sunk),
        reveal_cell(4.0, CostType::Recoverable),
        [] {
            StrategyCell c;
            c.provide_erp = true;
            c.erp_level = 8.0;
            c.cost = 4.0;
            c.cost_type = CostType::Sunk;
            return c;
        }(),
    };
    for (const auto& cell : cells)
        for (const auto& mode :
             {BehaviorMode::literal(), BehaviorMode::fs_model()}) {
            CellRun run = run_cell(pop, cell, mode, kBelief);
            const auto& m = run.metrics;
            CHECK(m.profit == m.revenue - m.total_cost_incurred);
            CHECK(m.demand_rate ==
                  static_cast<double>(m.buyers) /
                      static_cast<double>(m.population_size));
            double expected_cost =
                cell.cost *
                static_cast<double>(cell.cost_type == CostType::Sunk
                                        ? m.population_size
                                        : m.buyers);
            CHECK(m.total_cost_incurred == expected_cost);
        }
}

TEST_CASE("thread count never changes the result") {
    PopulationSpec spec = constant_spec(501, 31, 10.0);
    spec.v_dist = Distribution::uniform(0.0, 15.0);
    spec.beta_dist = Distribution::uniform(0.0, 0.9);
    spec.alpha_dist = Distribution::uniform(0.9, 3.0);
    auto pop = sample_population(spec);
    StrategyCell cell = reveal_cell(4.0, CostType::Sunk);

    CellRun one = run_cell(pop, cell, BehaviorMode::fs_model(), kBelief, 1);
    for (unsigned threads : {2u, 3u, 8u}) {
        CellRun many =
            run_cell(pop, cell, BehaviorMode::fs_model(), kBelief, threads);
        CHECK(many.metrics.revenue == one.metrics.revenue);
        CHECK(many.metrics.profit == one.metrics.profit);
        CHECK(many.metrics.buyers == one.metrics.buyers);
        REQUIRE(many.outcomes.size() == one.outcomes.size());
        for (std::size_t i = 0; i < one.outcomes.size(); ++i) {
            CHECK(many.outcomes[i].bought == one.outcomes[i].bought);
            CHECK(many.outcomes[i].consumer_payoff ==
                  one.outcomes[i].consumer_payoff);
        }
    }
}

TEST_CASE("ERP cell trades price against demand") {
    // ten consumers with valuations 5..14; ERP 8 under sunk cost
    std::vector<ConsumerProfile> pop;
    for (int i = 0; i < 10; ++i)
        pop.emplace_back(5.0 + i, 1.0, 0.3, 0.5, 0.5, false);

    StrategyCell no_erp;
    no_erp.cost = 4.0;
    no_erp.cost_type = CostType::Sunk;
    StrategyCell erp = no_erp;
    erp.provide_erp = true;
    erp.erp_level = 8.0;

    auto rows = compare_strategies(pop, {no_erp, erp}, BehaviorMode::literal(),
                                   kBelief);
    // everyone buys at v without the ERP
    CHECK(rows[0].demand_rate == 1.0);
    CHECK(*rows[0].mean_price_paid == doctest::Approx(9.5));
    // with the ERP, the v >= 8 consumers buy at 8, the rest walk
    CHECK(rows[1].buyers == 7);
    CHECK(*rows[1].mean_price_paid == 8.0);
    // mean price over v > 8 buyers is higher without the ERP
    double mean_high_v = (9 + 10 + 11 + 12 + 13 + 14) / 6.0;
    CHECK(mean_high_v > 8.0);
}

TEST_CASE("compare_strategies rejects an empty cell list") {
    auto pop = identical_consumers(5, 10.0);
    CHECK_THROWS_AS(
        compare_strategies(pop, {}, BehaviorMode::literal(), kBelief),
        std::invalid_argument);
}

TEST_CASE("cost type only matters when demand is below one") {
    auto pop = identical_consumers(50, 10.0);
    StrategyCell sunk = reveal_cell(4.0, CostType::Sunk);
    StrategyCell recoverable = reveal_cell(4.0, CostType::Recoverable);
    auto rows = compare_strategies(pop, {sunk, recoverable},
                                   BehaviorMode::literal(), kBelief);
    CHECK(rows[0].demand_rate == 1.0);
    CHECK(rows[0].revenue == rows[1].revenue);
    CHECK(rows[0].profit == rows[1].profit);
}

TEST_CASE("all free riders: full demand, zero revenue") {
    PopulationSpec spec = constant_spec(40, 3, 10.0);
    spec.free_rider_share = 1.0;
    auto pop = sample_population(spec);
    StrategyCell cell;
    cell.cost = 4.0;
    cell.cost_type = CostType::Sunk;
    CellRun run = run_cell(pop, cell, BehaviorMode::literal(), kBelief);
    CHECK(run.metrics.demand_rate == 1.0);
    CHECK(run.metrics.revenue == 0.0);
    CHECK(*run.metrics.free_rider_rate == 1.0);
}

TEST_CASE("lambda sweep is linear under a revealed cost") {
    PopulationSpec spec = constant_spec(100, 42, 10.0);
    auto rows = sweep(spec, reveal_cell(4.0), SweepParameter::Lambda,
                      {0.25, 0.5, 0.75, 1.0}, BehaviorMode::literal());
    REQUIRE(rows.size() == 4);
    CHECK(*rows[0].metrics.mean_price_paid == 5.5);
    CHECK(*rows[1].metrics.mean_price_paid == 7.0);
    CHECK(*rows[2].metrics.mean_price_paid == 8.5);
    CHECK(*rows[3].metrics.mean_price_paid == 10.0);
}

TEST_CASE("lambda sweep keeps the other draws paired") {
    PopulationSpec spec = constant_spec(50, 8, 10.0);
    spec.v_dist = Distribution::uniform(5.0, 15.0);
    spec.beta_dist = Distribution::uniform(0.0, 0.9);
    spec.alpha_dist = Distribution::uniform(0.9, 3.0);
    PopulationSpec a = spec;
    a.lambda_dist = Distribution::constant(0.25);
    PopulationSpec b = spec;
    b.lambda_dist = Distribution::constant(0.75);
    auto pop_a = sample_population(a);
    auto pop_b = sample_population(b);
    for (std::size_t i = 0; i < pop_a.size(); ++i) {
        CHECK(pop_a[i].v == pop_b[i].v);
        CHECK(pop_a[i].alpha == pop_b[i].alpha);
        CHECK(pop_a[i].beta == pop_b[i].beta);
        CHECK(pop_a[i].gamma == pop_b[i].gamma);
        CHECK(pop_a[i].lambda != pop_b[i].lambda);
    }
}

TEST_CASE("gamma sweep crosses the beta + gamma = 1 boundary") {
    PopulationSpec spec = constant_spec(20, 9, 10.0);
    StrategyCell hidden;
    hidden.cost = 4.0;
    hidden.cost_type = CostType::Sunk;
    auto rows = sweep(spec, hidden, SweepParameter::Gamma,
                      {0.2, 0.5, 0.69, 0.71, 1.0, 1.5},
                      BehaviorMode::fs_model());
    // beta is 0.3 everywhere: below the crossing everyone pays zero,
    // above it everyone pays the (believed, true) cost
    CHECK(*rows[0].metrics.mean_price_paid == 0.0);
    CHECK(*rows[1].metrics.mean_price_paid == 0.0);
    CHECK(*rows[2].metrics.mean_price_paid == 0.0);
    CHECK(*rows[3].metrics.mean_price_paid == 4.0);
    CHECK(*rows[4].metrics.mean_price_paid == 4.0);
    CHECK(*rows[5].metrics.mean_price_paid == 4.0);
}

TEST_CASE("erp sweep: demand never rises with the reference price") {
    PopulationSpec spec = constant_spec(200, 10, 10.0);
    spec.v_dist = Distribution::uniform(2.0, 14.0);
    StrategyCell cell;
    cell.cost = 4.0;
    cell.cost_type = CostType::Sunk;
    std::vector<double> grid;
    for (int i = 0; i < 10; ++i) grid.push_back(1.0 + 1.5 * i);
    auto rows =
        sweep(spec, cell, SweepParameter::ErpLevel, grid, BehaviorMode::literal());
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].metrics.demand_rate <= rows[i - 1].metrics.demand_rate);
}

TEST_CASE("cost sweep under a revealed cost: demand never rises") {
    PopulationSpec spec = constant_spec(200, 11, 10.0);
    spec.v_dist = Distribution::uniform(2.0, 14.0);
    std::vector<double> grid;
    for (int i = 0; i < 10; ++i) grid.push_back(1.5 * i);
    auto rows = sweep(spec, reveal_cell(0.0), SweepParameter::Cost, grid,
                      BehaviorMode::literal());
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].metrics.demand_rate <= rows[i - 1].metrics.demand_rate);
}

TEST_CASE("sweep validates the whole grid up front") {
    PopulationSpec spec = constant_spec(10, 1, 10.0);
    CHECK_THROWS_AS(sweep(spec, reveal_cell(4.0), SweepParameter::Lambda, {},
                          BehaviorMode::literal()),
                    std::invalid_argument);
    CHECK_THROWS_AS(sweep(spec, reveal_cell(4.0), SweepParameter::Lambda,
                          {0.5, 1.5}, BehaviorMode::literal()),
                    std::invalid_argument);
    CHECK_THROWS_AS(sweep(spec, reveal_cell(4.0), SweepParameter::Cost,
                          {1.0, -2.0}, BehaviorMode::literal()),
                    std::invalid_argument);
}
