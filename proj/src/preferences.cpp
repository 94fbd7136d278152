#include "pwyw/preferences.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pwyw {

namespace {

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

void require_finite_nonnegative(double x, const char* name) {
    if (!(std::isfinite(x) && x >= 0.0)) {
        throw std::invalid_argument(std::string(name) +
                                    " must be finite and >= 0");
    }
}

}  // namespace

void validate_inequity_params(double alpha, double beta, double gamma) {
    require_finite_nonnegative(alpha, "alpha");
    require_finite_nonnegative(beta, "beta");
    require_finite_nonnegative(gamma, "gamma");
    require(beta < 1.0, "beta must be < 1");
    require(alpha >= beta, "alpha must be >= beta");
}

ConsumerProfile::ConsumerProfile(double v_, double alpha_, double beta_,
                                 double gamma_, double lambda_,
                                 bool is_free_rider_)
    : v(v_),
      alpha(alpha_),
      beta(beta_),
      gamma(gamma_),
      lambda(lambda_),
      is_free_rider(is_free_rider_) {
    validate();
}

void ConsumerProfile::validate() const {
    require_finite_nonnegative(v, "v");
    validate_inequity_params(alpha, beta, gamma);
    require(std::isfinite(lambda) && lambda > 0.0 && lambda <= 1.0,
            "lambda must be in (0, 1]");
}

SupplierProfile::SupplierProfile(double cost_, CostType cost_type_,
                                 std::optional<double> erp_,
                                 bool reveals_cost_)
    : cost(cost_), cost_type(cost_type_), erp(erp_), reveals_cost(reveals_cost_) {
    validate();
}

void SupplierProfile::validate() const {
    require_finite_nonnegative(cost, "cost");
    if (erp) require_finite_nonnegative(*erp, "erp");
}

double buyer_utility(double v, double p) {
    require_finite_nonnegative(v, "v");
    require_finite_nonnegative(p, "p");
    return v - p;
}

double no_buy_utility(double p_foregone) {
    require_finite_nonnegative(p_foregone, "p_foregone");
    return p_foregone;
}

double supplier_margin(double p, double c) {
    require_finite_nonnegative(p, "p");
    require_finite_nonnegative(c, "c");
    return p - c;
}

double no_buy_supplier_payoff(const SupplierProfile& supplier) {
    supplier.validate();
    return supplier.cost_type == CostType::Recoverable ? 0.0 : -supplier.cost;
}

double fair_split_price(double v, double c, double lambda) {
    require_finite_nonnegative(v, "v");
    require_finite_nonnegative(c, "c");
    require(std::isfinite(lambda) && lambda > 0.0 && lambda <= 1.0,
            "lambda must be in (0, 1]");
    require(v >= c, "fair_split_price requires v >= c (no-purchase region)");
    return c + lambda * (v - c);
}

double fair_split_utility(double v, double c, double lambda) {
    require_finite_nonnegative(v, "v");
    require_finite_nonnegative(c, "c");
    require(std::isfinite(lambda) && lambda > 0.0 && lambda <= 1.0,
            "lambda must be in (0, 1]");
    require(v >= c, "fair_split_utility requires v >= c (no-purchase region)");
    return (1.0 - lambda) * (v - c);
}

double midpoint_fair_price(double p_r, double c) {
    require_finite_nonnegative(p_r, "p_r");
    require_finite_nonnegative(c, "c");
    require(p_r >= c, "midpoint_fair_price requires c <= p_r");
    return 0.5 * (p_r + c);
}

UtilityBreakdown fs_extended_utility(double p_r, double p, double c,
                                     double alpha, double beta, double gamma,
                                     FsVariant variant) {
    require_finite_nonnegative(p_r, "p_r");
    require_finite_nonnegative(p, "p");
    require_finite_nonnegative(c, "c");
    validate_inequity_params(alpha, beta, gamma);

    UtilityBreakdown out;
    out.surplus_term = p_r - p;

    // diff = consumer surplus minus the supplier surplus used in the
    // comparison. When the margin is taken as p - c, it is evaluated as
    // (p_r + c) - 2p so that the fair midpoint (p_r + c)/2 lands on an
    // exact zero and neither inequity penalty fires there.
    double margin = p - c;
    double diff;
    if (variant == FsVariant::FlooredSurplus && margin < 0.0) {
        diff = out.surplus_term;  // floored margin is 0
    } else {
        diff = (p_r + c) - 2.0 * p;
    }

    out.envy_penalty = alpha * std::max(-diff, 0.0);
    out.altruism_penalty = beta * std::max(diff, 0.0);
    out.loss_penalty = gamma * std::max(c - p, 0.0);
    out.total = out.surplus_term - out.envy_penalty - out.altruism_penalty -
                out.loss_penalty;
    return out;
}

}  // namespace pwyw
