#pragma once

#include <cstdint>
#include <vector>

#include "pwyw/game.hpp"
#include "pwyw/preferences.hpp"
#include "pwyw/rng.hpp"

namespace pwyw {

// Seeded sampling of heterogeneous consumer populations. Consumer i draws
// from a substream derived from (seed, i), so the output is a pure
// function of the PopulationSpec: same inputs, same profiles, on any host
// and at any thread count.

class Distribution {
public:
    enum class Kind { Constant, Uniform, TruncatedNormal };

    static Distribution constant(double value);
    // Samples in [lo, hi).
    static Distribution uniform(double lo, double hi);
    // Normal(mean, sd) conditioned on [lo, hi].
    static Distribution truncated_normal(double mean, double sd, double lo,
                                         double hi);

    double sample(Substream& rng) const;

    Kind kind() const { return kind_; }
    // Smallest/largest value the distribution can emit; used to validate
    // supports against the profile invariants before sampling.
    double support_min() const;
    double support_max() const;
    // Whether the support max is actually attainable (uniform is
    // half-open at the top).
    bool support_max_inclusive() const;

    double value() const { return a_; }  // Constant
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mean() const { return a_; }  // TruncatedNormal
    double sd() const { return b_; }    // TruncatedNormal

private:
    Distribution(Kind kind, double a, double b, double lo, double hi)
        : kind_(kind), a_(a), b_(b), lo_(lo), hi_(hi) {}

    Kind kind_;
    double a_, b_, lo_, hi_;
};

struct PopulationSpec {
    std::size_t size = 1;
    Distribution v_dist = Distribution::uniform(0.0, 20.0);
    Distribution alpha_dist = Distribution::truncated_normal(0.85, 0.4, 0.0, 3.0);
    Distribution beta_dist = Distribution::truncated_normal(0.3, 0.15, 0.0, 0.99);
    Distribution gamma_dist = Distribution::truncated_normal(0.5, 0.25, 0.0, 2.0);
    Distribution lambda_dist = Distribution::constant(0.5);
    double free_rider_share = 0.0;
    BeliefRule believed_cost_rule = BeliefRule::true_cost();
    std::uint64_t seed = 0;

    // Throws std::invalid_argument when a distribution support can emit a
    // value outside the profile invariants.
    void validate() const;
};

// Samples exactly spec.size profiles. The (alpha, beta) pair is rejection
// sampled until alpha >= beta (up to 1000 attempts per consumer); the
// first floor(size * free_rider_share) positions of a seeded shuffle are
// marked free riders, leaving every parameter draw untouched.
std::vector<ConsumerProfile> sample_population(const PopulationSpec& spec);

}  // namespace pwyw
