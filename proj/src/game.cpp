#include "pwyw/game.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pwyw {

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::GainSeeking: return "gain_seeking";
        case Scenario::Herding: return "herding";
        case Scenario::InequityAversion: return "inequity_aversion";
        case Scenario::SelfImage: return "self_image";
        case Scenario::CostRevealed: return "cost_revealed";
    }
    return "?";
}

BehaviorMode BehaviorMode::literal(double gain_fraction) {
    BehaviorMode mode;
    mode.kind = Kind::Literal;
    mode.gain_fraction = gain_fraction;
    mode.validate();
    return mode;
}

BehaviorMode BehaviorMode::fs_model(Representative rep) {
    BehaviorMode mode;
    mode.kind = Kind::FsModel;
    mode.representative = rep;
    return mode;
}

void BehaviorMode::validate() const {
    if (!(std::isfinite(gain_fraction) && gain_fraction > 0.0 &&
          gain_fraction < 1.0))
        throw std::invalid_argument(
            "gain_fraction must be strictly between 0 and 1");
}

BeliefRule BeliefRule::fixed(double cost) {
    BeliefRule rule{Kind::Fixed, cost};
    rule.validate();
    return rule;
}

void BeliefRule::validate() const {
    if (kind == Kind::Fixed && !(std::isfinite(fixed_cost) && fixed_cost >= 0.0))
        throw std::invalid_argument("fixed believed cost must be >= 0");
}

double BeliefRule::believed_cost(const SupplierProfile& supplier) const {
    switch (kind) {
        case Kind::Zero: return 0.0;
        case Kind::TrueCost: return supplier.cost;
        case Kind::Fixed: return fixed_cost;
    }
    return 0.0;
}

Scenario classify_scenario(const SupplierProfile& supplier) {
    if (supplier.reveals_cost) return Scenario::CostRevealed;
    if (supplier.erp.has_value())
        return supplier.cost_type == CostType::Recoverable ? Scenario::Herding
                                                           : Scenario::SelfImage;
    return supplier.cost_type == CostType::Recoverable
               ? Scenario::GainSeeking
               : Scenario::InequityAversion;
}

double effective_reference_price(const ConsumerProfile& consumer,
                                 const SupplierProfile& supplier) {
    if (supplier.erp) return std::min(*supplier.erp, consumer.v);
    return consumer.v;
}

namespace {

// Price the consumer would pay if she buys, with the purchase gates
// already resolved by the caller. Also evaluated counterfactually (gate
// off) to fix the opportunity payoff of a no-buy.
double purchase_price(const ConsumerProfile& consumer,
                      const SupplierProfile& supplier, Scenario scenario,
                      const BehaviorMode& mode, const BeliefRule& belief) {
    if (scenario == Scenario::CostRevealed)
        return fair_split_price(consumer.v, supplier.cost, consumer.lambda);

    if (mode.kind == BehaviorMode::Kind::Literal) {
        switch (scenario) {
            case Scenario::GainSeeking:
                return mode.gain_fraction * consumer.v;
            case Scenario::Herding:
            case Scenario::SelfImage:
                // SelfImage reaches here only with erp <= v (or as the
                // counterfactual of a gated no-buy, where min() caps at v).
                return effective_reference_price(consumer, supplier);
            case Scenario::InequityAversion:
                return consumer.v;
            default: break;
        }
    }

    // FsModel: maximize the inequity-averse utility against the effective
    // reference price. Loss sensitivity only binds when the cost is
    // believed sunk; a believed-recoverable cost also carries no inequity
    // anchor, so the optimization runs against cost zero.
    double p_r = effective_reference_price(consumer, supplier);
    double gamma_eff = 0.0;
    double believed = 0.0;
    if (supplier.cost_type == CostType::Sunk) {
        gamma_eff = consumer.gamma;
        believed = belief.believed_cost(supplier);
    }
    // A believed cost above p_r leaves the whole [0, p_r] range below
    // cost, where the argmax only depends on the slopes; clamping keeps
    // the optimizer domain valid without changing the maximizing set.
    double c_opt = std::min(believed, p_r);
    ArgmaxSet best = optimal_price_closed_form(p_r, c_opt, consumer.alpha,
                                               consumer.beta, gamma_eff);
    return representative_price(best, mode.representative);
}

InteractionOutcome buy(const ConsumerProfile& consumer,
                       const SupplierProfile& supplier, Scenario scenario,
                       double price) {
    InteractionOutcome out;
    out.bought = true;
    out.price = price;
    out.consumer_payoff = buyer_utility(consumer.v, price);
    out.supplier_payoff = supplier_margin(price, supplier.cost);
    out.scenario = scenario;
    return out;
}

InteractionOutcome no_buy(const ConsumerProfile& consumer,
                          const SupplierProfile& supplier, Scenario scenario,
                          double counterfactual_price) {
    InteractionOutcome out;
    out.bought = false;
    out.consumer_payoff =
        no_buy_utility(std::min(counterfactual_price, consumer.v));
    out.supplier_payoff = no_buy_supplier_payoff(supplier);
    out.scenario = scenario;
    return out;
}

}  // namespace

InteractionOutcome decide(const ConsumerProfile& consumer,
                          const SupplierProfile& supplier,
                          const BehaviorMode& mode, const BeliefRule& belief) {
    consumer.validate();
    supplier.validate();
    mode.validate();
    belief.validate();

    Scenario scenario = classify_scenario(supplier);

    if (consumer.is_free_rider) return buy(consumer, supplier, scenario, 0.0);

    if (scenario == Scenario::SelfImage && *supplier.erp > consumer.v) {
        // She would have paid her own valuation (the ERP exceeds it).
        return no_buy(consumer, supplier, scenario,
                      purchase_price(consumer, supplier, scenario, mode, belief));
    }

    if (scenario == Scenario::CostRevealed && consumer.v < supplier.cost) {
        // Any fair payment covers at least the cost, which exceeds her
        // valuation, so the foregone price is capped at v.
        return no_buy(consumer, supplier, scenario, consumer.v);
    }

    double price = purchase_price(consumer, supplier, scenario, mode, belief);
    return buy(consumer, supplier, scenario, price);
}

}  // namespace pwyw
