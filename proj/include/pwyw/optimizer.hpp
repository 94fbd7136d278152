#pragma once

#include <string>
#include <vector>

#include "pwyw/preferences.hpp"

namespace pwyw {

// Exact maximization of the piecewise-linear utility fs_extended_utility
// over prices in [0, p_r], plus an independent brute-force grid oracle the
// closed form is validated against.

// A closed interval of prices; a single price is lo == hi.
struct PriceInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool is_point() const { return lo == hi; }
};

// The full set of maximizing prices: disjoint closed intervals in
// ascending order, every element attaining max_utility (to the utility
// tolerance the set was built with).
struct ArgmaxSet {
    std::vector<PriceInterval> pieces;
    double max_utility = 0.0;

    double lower() const { return pieces.front().lo; }
    double upper() const { return pieces.back().hi; }
    bool contains(double p, double tol = 0.0) const;
    // 0 when p lies inside some piece.
    double distance_to(double p) const;
};

// Which single price to quote when a caller needs one value out of an
// indifference set. Upper is the supplier-friendliest choice and the
// default everywhere.
enum class Representative { Upper, Lower, Midpoint };

// Upper/Lower: endpoints of the whole set. Midpoint: midpoint of the
// topmost piece (always an element of the set, unlike the midpoint of a
// disconnected hull).
double representative_price(const ArgmaxSet& set, Representative rule);

// Absolute utility tolerance used for tie detection and oracle
// qualification: 1e-9 scaled by max(1, p_r).
double utility_tolerance(double p_r);

// Maximizes U(p) = fs_extended_utility(p_r, p, c, ...) over p in [0, p_r]
// by breakpoint evaluation. U is affine on [0, c], [c, p_f], [p_f, p_r]
// with p_f = (p_r + c)/2 and slopes beta+gamma-1, 2*beta-1, -1-2*alpha;
// the last slope is always negative, so only {0, c, p_f} can carry a
// maximum, extended to whole segments where the adjoining slope is zero.
//
// Generic regimes: beta < 0.5 and beta + gamma < 1 gives {0};
// beta < 0.5 and beta + gamma > 1 gives {c}; beta > 0.5 gives {p_f}
// whenever the fair midpoint beats paying zero, i.e.
// p_r (beta - 0.5) > c (0.5 - gamma) — automatic for gamma >= 0.5. When
// that inequality flips (small gamma, cost near the reference price),
// paying zero dominates and the set is {0} even though beta > 0.5.
//
// Requires 0 <= c <= p_r and valid (alpha, beta, gamma).
ArgmaxSet optimal_price_closed_form(double p_r, double c, double alpha,
                                    double beta, double gamma);

// Brute-force check: evaluates U on the grid {0, step, 2*step, ..., p_r}
// with the breakpoints c and (p_r + c)/2 injected, and returns every grid
// point within utility_tolerance(p_r) of the grid maximum, coalescing
// consecutive qualifying grid points into intervals. Independent of the
// closed-form path.
ArgmaxSet optimal_price_oracle(double p_r, double c, double alpha,
                               double beta, double gamma, double step);

// One-line description of the parameter regime that decided the optimum
// (used by the CLI).
std::string optimal_price_case(double p_r, double c, double beta, double gamma);

struct ConsistencyReport {
    bool pass = false;
    // Largest distance from a qualifying oracle grid point to the
    // closed-form set; must stay within step + point_tol.
    double max_point_distance = 0.0;
    double worst_point = 0.0;
    // |closed-form max utility - oracle max utility|; must stay within
    // utility_tol.
    double utility_gap = 0.0;
    std::size_t oracle_points = 0;
    std::string note;
};

// Runs both routes and compares them. Failures are reported, not thrown.
// point_tol defaults to 1e-6; utility_tol defaults to utility_tolerance(p_r).
ConsistencyReport check_consistency(double p_r, double c, double alpha,
                                    double beta, double gamma, double step,
                                    double point_tol = 1e-6,
                                    double utility_tol = -1.0);

}  // namespace pwyw
