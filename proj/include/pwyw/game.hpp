#pragma once

#include <optional>

#include "pwyw/optimizer.hpp"
#include "pwyw/preferences.hpp"

namespace pwyw {

// The interaction tree: which information the supplier discloses and what
// the consumer believes about cost recoverability select one of five
// behavioral scenarios, each with its own pricing rule and purchase gate.

enum class Scenario {
    GainSeeking,      // no ERP, cost believed recoverable
    Herding,          // ERP shown, cost believed recoverable
    InequityAversion, // no ERP, cost believed sunk
    SelfImage,        // ERP shown, cost believed sunk
    CostRevealed      // cost disclosed; overrides the other four
};

const char* scenario_name(Scenario s);

// How the consumer prices the item.
//
// Literal applies the scenario price rules directly: a fixed fraction of v
// under GainSeeking, min(erp, v) under Herding, v under InequityAversion,
// the ERP under SelfImage. FsModel instead maximizes the inequity-averse
// utility with the scenario mapped onto its parameters: the reference
// price is min(erp, v), and gamma is active only when the cost is believed
// sunk.
struct BehaviorMode {
    enum class Kind { Literal, FsModel };

    Kind kind = Kind::Literal;
    // Fraction of v paid by a literal gain-seeking consumer; in (0, 1).
    double gain_fraction = 0.4;
    // Price picked out of an FsModel indifference set.
    Representative representative = Representative::Upper;

    static BehaviorMode literal(double gain_fraction = 0.4);
    static BehaviorMode fs_model(Representative rep = Representative::Upper);

    void validate() const;
};

// What a consumer assumes the hidden cost is when she believes it is sunk.
// Under a recoverable-cost belief the assumed cost is always zero (no loss
// to worry about, and no anchor to infer one from).
struct BeliefRule {
    enum class Kind { Zero, TrueCost, Fixed };

    Kind kind = Kind::TrueCost;
    double fixed_cost = 0.0;

    static BeliefRule zero() { return {Kind::Zero, 0.0}; }
    static BeliefRule true_cost() { return {Kind::TrueCost, 0.0}; }
    static BeliefRule fixed(double cost);

    double believed_cost(const SupplierProfile& supplier) const;
    void validate() const;
};

struct InteractionOutcome {
    bool bought = false;
    std::optional<double> price;  // set iff bought
    // v - price when bought; the foregone counterfactual price when not.
    double consumer_payoff = 0.0;
    // price - cost when bought; 0 (recoverable) or -cost (sunk) when not.
    double supplier_payoff = 0.0;
    Scenario scenario = Scenario::GainSeeking;
};

// Scenario from the supplier's disclosure choices alone.
Scenario classify_scenario(const SupplierProfile& supplier);

// The reference price the consumer actually anchors on: the ERP when one
// is shown and it does not exceed her own valuation, otherwise v.
double effective_reference_price(const ConsumerProfile& consumer,
                                 const SupplierProfile& supplier);

// Full decision pipeline for one interaction:
//   1. free riders take the item at zero in every scenario;
//   2. SelfImage: an ERP above v kills the purchase;
//   3. CostRevealed: v below the disclosed cost kills the purchase;
//   4. otherwise price per the scenario rule (mode-dependent);
//   5. payoffs from the realized price and the true cost.
InteractionOutcome decide(const ConsumerProfile& consumer,
                          const SupplierProfile& supplier,
                          const BehaviorMode& mode,
                          const BeliefRule& belief = BeliefRule::true_cost());

}  // namespace pwyw
