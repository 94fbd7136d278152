#include "pwyw/population.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace pwyw {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

// Support bounds against a closed [lo, hi] requirement; hi_strict demands
// the distribution can never emit hi itself.
void check_support(const Distribution& d, const char* name, double lo,
                   double hi, bool hi_strict) {
    require(d.support_min() >= lo,
            std::string(name) + " distribution support must be >= " +
                std::to_string(lo));
    double max = d.support_max();
    if (hi_strict && d.support_max_inclusive())
        require(max < hi, std::string(name) +
                              " distribution support must stay below " +
                              std::to_string(hi));
    else
        require(max <= hi, std::string(name) +
                               " distribution support must be <= " +
                               std::to_string(hi));
}

}  // namespace

Distribution Distribution::constant(double value) {
    require(std::isfinite(value), "constant distribution: value must be finite");
    return Distribution(Kind::Constant, value, 0.0, value, value);
}

Distribution Distribution::uniform(double lo, double hi) {
    require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi,
            "uniform distribution requires lo <= hi");
    return Distribution(Kind::Uniform, 0.0, 0.0, lo, hi);
}

Distribution Distribution::truncated_normal(double mean, double sd, double lo,
                                            double hi) {
    require(std::isfinite(mean) && std::isfinite(sd) && sd >= 0.0,
            "truncated_normal requires finite mean and sd >= 0");
    require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi,
            "truncated_normal requires lo <= hi");
    return Distribution(Kind::TruncatedNormal, mean, sd, lo, hi);
}

double Distribution::sample(Substream& rng) const {
    switch (kind_) {
        case Kind::Constant: return a_;
        case Kind::Uniform: return rng.uniform(lo_, hi_);
        case Kind::TruncatedNormal:
            if (b_ == 0.0) return std::min(std::max(a_, lo_), hi_);
            return rng.truncated_normal(a_, b_, lo_, hi_);
    }
    return a_;
}

double Distribution::support_min() const { return lo_; }

double Distribution::support_max() const { return hi_; }

bool Distribution::support_max_inclusive() const {
    // uniform samples in [lo, hi); the others can hit hi.
    return kind_ != Kind::Uniform || lo_ == hi_;
}

void PopulationSpec::validate() const {
    require(size >= 1, "population size must be >= 1");
    require(std::isfinite(free_rider_share) && free_rider_share >= 0.0 &&
                free_rider_share <= 1.0,
            "free_rider_share must be in [0, 1]");
    believed_cost_rule.validate();

    double huge = std::numeric_limits<double>::max();
    check_support(v_dist, "v", 0.0, huge, false);
    check_support(alpha_dist, "alpha", 0.0, huge, false);
    check_support(beta_dist, "beta", 0.0, 1.0, true);
    check_support(gamma_dist, "gamma", 0.0, huge, false);
    check_support(lambda_dist, "lambda", 0.0, 1.0, false);
    require(lambda_dist.support_min() > 0.0,
            "lambda distribution support must stay within (0, 1]");
    // alpha >= beta must be satisfiable at all.
    require(alpha_dist.support_max() >= beta_dist.support_min(),
            "alpha support lies entirely below beta support; alpha >= beta "
            "cannot hold");
}

std::vector<ConsumerProfile> sample_population(const PopulationSpec& spec) {
    spec.validate();

    constexpr int kRejectionCap = 1000;
    constexpr std::uint64_t kParamsPurpose = 0;
    constexpr std::uint64_t kShufflePurpose = 1;

    std::vector<ConsumerProfile> profiles;
    profiles.reserve(spec.size);
    for (std::size_t i = 0; i < spec.size; ++i) {
        Substream rng(spec.seed, kParamsPurpose, i);
        double v = spec.v_dist.sample(rng);
        double alpha = 0.0;
        double beta = 0.0;
        bool ok = false;
        for (int attempt = 0; attempt < kRejectionCap; ++attempt) {
            alpha = spec.alpha_dist.sample(rng);
            beta = spec.beta_dist.sample(rng);
            if (alpha >= beta) {
                ok = true;
                break;
            }
        }
        if (!ok)
            throw std::invalid_argument(
                "sample_population: could not satisfy alpha >= beta within " +
                std::to_string(kRejectionCap) +
                " attempts; check the alpha/beta distribution supports");
        double gamma = spec.gamma_dist.sample(rng);
        double lambda = spec.lambda_dist.sample(rng);  // drawn last; sweeps
                                                       // rely on this order
        profiles.emplace_back(v, alpha, beta, gamma, lambda, false);
    }

    // Free riders: floor(size * share) positions of a seeded shuffle. The
    // flags ride on top of the parameter draws, so marking never perturbs
    // anyone's sampled parameters.
    auto n_free = static_cast<std::size_t>(
        std::floor(static_cast<double>(spec.size) * spec.free_rider_share));
    if (n_free > 0) {
        std::vector<std::size_t> order(spec.size);
        std::iota(order.begin(), order.end(), std::size_t{0});
        Substream rng(spec.seed, kShufflePurpose, 0);
        for (std::size_t j = spec.size - 1; j > 0; --j) {
            std::size_t k = rng.bounded(j + 1);
            std::swap(order[j], order[k]);
        }
        for (std::size_t k = 0; k < n_free && k < spec.size; ++k)
            profiles[order[k]].is_free_rider = true;
    }
    return profiles;
}

}  // namespace pwyw
