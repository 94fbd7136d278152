#include "pwyw/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pwyw {

namespace {

double utility_at(double p_r, double p, double c, double alpha, double beta,
                  double gamma) {
    return fs_extended_utility(p_r, p, c, alpha, beta, gamma).total;
}

void validate_domain(double p_r, double c, double alpha, double beta,
                     double gamma) {
    if (!(std::isfinite(p_r) && p_r >= 0.0))
        throw std::invalid_argument("p_r must be finite and >= 0");
    if (!(std::isfinite(c) && c >= 0.0))
        throw std::invalid_argument("c must be finite and >= 0");
    if (c > p_r)
        throw std::invalid_argument("optimal price requires c <= p_r");
    validate_inequity_params(alpha, beta, gamma);
}

// Qualifying grid points within tol of the grid maximum, ascending.
struct GridScan {
    std::vector<double> points;
    double max_utility = 0.0;
};

GridScan oracle_scan(double p_r, double c, double alpha, double beta,
                     double gamma, double step) {
    if (!(std::isfinite(step) && step > 0.0))
        throw std::invalid_argument("oracle step must be > 0");
    validate_domain(p_r, c, alpha, beta, gamma);

    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(p_r / step) + 4);
    for (double p = 0.0; p < p_r; p += step) grid.push_back(p);
    grid.push_back(p_r);
    grid.push_back(c);                   // breakpoints injected so kink
    grid.push_back(0.5 * (p_r + c));     // optima are never missed
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> utilities(grid.size());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        utilities[i] = utility_at(p_r, grid[i], c, alpha, beta, gamma);
        best = std::max(best, utilities[i]);
    }

    GridScan out;
    out.max_utility = best;
    double tol = utility_tolerance(p_r);
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (utilities[i] >= best - tol) out.points.push_back(grid[i]);
    return out;
}

}  // namespace

double utility_tolerance(double p_r) { return 1e-9 * std::max(1.0, p_r); }

bool ArgmaxSet::contains(double p, double tol) const {
    for (const auto& piece : pieces)
        if (p >= piece.lo - tol && p <= piece.hi + tol) return true;
    return false;
}

double ArgmaxSet::distance_to(double p) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& piece : pieces) {
        double d = 0.0;
        if (p < piece.lo)
            d = piece.lo - p;
        else if (p > piece.hi)
            d = p - piece.hi;
        best = std::min(best, d);
    }
    return best;
}

double representative_price(const ArgmaxSet& set, Representative rule) {
    if (set.pieces.empty())
        throw std::invalid_argument("representative_price: empty argmax set");
    switch (rule) {
        case Representative::Upper: return set.pieces.back().hi;
        case Representative::Lower: return set.pieces.front().lo;
        case Representative::Midpoint: {
            const auto& top = set.pieces.back();
            return 0.5 * (top.lo + top.hi);
        }
    }
    throw std::logic_error("representative_price: bad rule");
}

ArgmaxSet optimal_price_closed_form(double p_r, double c, double alpha,
                                    double beta, double gamma) {
    validate_domain(p_r, c, alpha, beta, gamma);

    double p_f = 0.5 * (p_r + c);

    // Candidate breakpoints; slope beyond p_f is -1 - 2*alpha < 0, so the
    // upper endpoint p_r never carries a maximum on its own.
    std::vector<double> bp{0.0, c, p_f};
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

    std::vector<double> u(bp.size());
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < bp.size(); ++i) {
        u[i] = utility_at(p_r, bp[i], c, alpha, beta, gamma);
        best = std::max(best, u[i]);
    }

    double tol = utility_tolerance(p_r);
    std::vector<bool> keep(bp.size());
    for (std::size_t i = 0; i < bp.size(); ++i) keep[i] = u[i] >= best - tol;

    // Slope of the segment [bp[i], bp[i+1]]: the first breakpoint below c
    // sits on the beta+gamma-1 piece, the rest of [0, p_f] on 2*beta-1.
    auto segment_slope = [&](std::size_t i) {
        return bp[i] < c ? (beta + gamma) - 1.0 : 2.0 * beta - 1.0;
    };
    // A segment joins the argmax as a whole interval when it is exactly
    // flat, or flat at tolerance (utility swing below tol).
    auto segment_flat = [&](std::size_t i) {
        double s = segment_slope(i);
        return s == 0.0 || std::abs(s) * (bp[i + 1] - bp[i]) <= tol;
    };

    ArgmaxSet out;
    out.max_utility = best;
    for (std::size_t i = 0; i < bp.size(); ++i) {
        if (!keep[i]) continue;
        double lo = bp[i];
        double hi = bp[i];
        while (i + 1 < bp.size() && keep[i + 1] && segment_flat(i)) {
            hi = bp[i + 1];
            ++i;
        }
        if (!out.pieces.empty() && out.pieces.back().hi == lo)
            out.pieces.back().hi = hi;
        else
            out.pieces.push_back({lo, hi});
    }
    return out;
}

ArgmaxSet optimal_price_oracle(double p_r, double c, double alpha, double beta,
                               double gamma, double step) {
    GridScan scan = oracle_scan(p_r, c, alpha, beta, gamma, step);

    ArgmaxSet out;
    out.max_utility = scan.max_utility;
    // Coalesce runs of grid-adjacent qualifying points. Two qualifying
    // points are adjacent when no grid point lies strictly between them,
    // i.e. they are within one step (breakpoint injection can make runs
    // denser than the step, never sparser).
    std::size_t i = 0;
    while (i < scan.points.size()) {
        double lo = scan.points[i];
        double hi = lo;
        while (i + 1 < scan.points.size() &&
               scan.points[i + 1] - scan.points[i] <= step * (1.0 + 1e-12)) {
            ++i;
            hi = scan.points[i];
        }
        out.pieces.push_back({lo, hi});
        ++i;
    }
    return out;
}

std::string optimal_price_case(double p_r, double c, double beta,
                               double gamma) {
    double s1 = (beta + gamma) - 1.0;
    if (beta < 0.5) {
        if (s1 < 0.0) return "beta < 0.5 and beta + gamma < 1";
        if (s1 > 0.0) return "beta < 0.5 and beta + gamma > 1";
        return "beta < 0.5 and beta + gamma = 1 (indifference)";
    }
    if (beta == 0.5) {
        if (gamma >= 0.5) return "beta = 0.5 (indifference on [c, p_f])";
        return "beta = 0.5 and gamma < 0.5 (paying zero dominates)";
    }
    // beta > 0.5: the fair midpoint wins unless paying zero dominates.
    double u0_minus_uf = p_r * (0.5 - beta) + c * (0.5 - gamma);
    if (u0_minus_uf > 0.0)
        return "beta > 0.5, but p_r(beta - 0.5) < c(0.5 - gamma): paying "
               "zero dominates the fair midpoint";
    if (u0_minus_uf == 0.0)
        return "beta > 0.5, tie between 0 and the fair midpoint";
    return "beta > 0.5";
}

ConsistencyReport check_consistency(double p_r, double c, double alpha,
                                    double beta, double gamma, double step,
                                    double point_tol, double utility_tol) {
    if (utility_tol < 0.0) utility_tol = utility_tolerance(p_r);

    ConsistencyReport report;
    ArgmaxSet closed = optimal_price_closed_form(p_r, c, alpha, beta, gamma);
    GridScan scan = oracle_scan(p_r, c, alpha, beta, gamma, step);

    report.oracle_points = scan.points.size();
    report.utility_gap = std::abs(closed.max_utility - scan.max_utility);
    for (double p : scan.points) {
        double d = closed.distance_to(p);
        if (d > report.max_point_distance) {
            report.max_point_distance = d;
            report.worst_point = p;
        }
    }
    report.pass = report.max_point_distance <= step + point_tol &&
                  report.utility_gap <= utility_tol;
    if (!report.pass) {
        report.note = "oracle argmax strays from the closed-form set";
    }
    return report;
}

}  // namespace pwyw
