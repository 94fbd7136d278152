#pragma once

#include <optional>

namespace pwyw {

// Core payoff and utility formulas for a single pay-what-you-want
// interaction between one consumer and one supplier. Everything here is a
// pure function of its arguments; money is a plain double.

enum class CostType { Recoverable, Sunk };

// Private parameters of one consumer.
//   v      internal reference price (perceived value of the item)
//   alpha  envy weight on disadvantageous inequality
//   beta   altruism weight on advantageous inequality
//   gamma  sensitivity to supplier losses (0 recovers the classic
//          Fehr-Schmidt utility for prices at or above cost)
//   lambda share of the surplus passed to the supplier when cost is known
struct ConsumerProfile {
    double v = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double lambda = 0.5;
    bool is_free_rider = false;

    ConsumerProfile() = default;
    ConsumerProfile(double v, double alpha, double beta, double gamma,
                    double lambda, bool is_free_rider = false);

    // Throws std::invalid_argument naming the violated invariant.
    void validate() const;
};

struct SupplierProfile {
    double cost = 0.0;
    CostType cost_type = CostType::Recoverable;
    std::optional<double> erp;  // external reference price, if provided
    bool reveals_cost = false;

    SupplierProfile() = default;
    SupplierProfile(double cost, CostType cost_type,
                    std::optional<double> erp = std::nullopt,
                    bool reveals_cost = false);

    void validate() const;
};

// Consumer utility from buying at price p: v - p. May be negative; the
// decision layer never selects such prices, but the optimizer evaluates
// them when scanning the envy region.
double buyer_utility(double v, double p);

// Opportunity payoff of walking away: the price that would have been paid.
double no_buy_utility(double p_foregone);

// Supplier margin from a sale at price p with unit cost c: p - c.
double supplier_margin(double p, double c);

// Supplier payoff on a no-sale: 0 if the cost is recoverable, -cost if sunk.
double no_buy_supplier_payoff(const SupplierProfile& supplier);

// Fair-split payment when the cost is known: c + lambda * (v - c).
// Requires v >= c (below cost the consumer does not purchase at all;
// callers gate on that rule first).
double fair_split_price(double v, double c, double lambda);

// Utility of the fair split: (1 - lambda) * (v - c). Identically equal to
// buyer_utility(v, fair_split_price(v, c, lambda)).
double fair_split_utility(double v, double c, double lambda);

// Price that splits the surplus implied by a reference price equally:
// (p_r + c) / 2.
double midpoint_fair_price(double p_r, double c);

// Inequity-averse utility of paying p against reference price p_r and
// supplier cost c, decomposed into its terms. total is computed exactly as
// surplus_term - envy_penalty - altruism_penalty - loss_penalty.
struct UtilityBreakdown {
    double surplus_term = 0.0;      // p_r - p
    double envy_penalty = 0.0;      // alpha-weighted, >= 0
    double altruism_penalty = 0.0;  // beta-weighted, >= 0
    double loss_penalty = 0.0;      // gamma-weighted, >= 0
    double total = 0.0;
};

// Which supplier-surplus enters the inequity comparison.
//
// FlooredSurplus (the default) compares the consumer surplus against
// max(p - c, 0), so below cost the marginal penalty of lowering the price
// is beta + gamma per dollar. Literal compares against the raw margin
// p - c, giving 2*beta + gamma below cost; it is kept for side-by-side
// comparison only. All decision and optimizer code uses FlooredSurplus.
enum class FsVariant { FlooredSurplus, Literal };

// U = (p_r - p) - alpha * max(s - (p_r - p), 0)
//              - beta  * max((p_r - p) - s, 0)
//              - gamma * max(c - p, 0)
// with s = max(p - c, 0) under FlooredSurplus, s = p - c under Literal.
UtilityBreakdown fs_extended_utility(double p_r, double p, double c,
                                     double alpha, double beta, double gamma,
                                     FsVariant variant = FsVariant::FlooredSurplus);

// Validates the (alpha, beta, gamma) triple shared by ConsumerProfile and
// the optimizer entry points.
void validate_inequity_params(double alpha, double beta, double gamma);

}  // namespace pwyw
