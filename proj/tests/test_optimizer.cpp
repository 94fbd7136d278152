#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pwyw/optimizer.hpp"
#include "pwyw/rng.hpp"

using namespace pwyw;

namespace {

bool is_single_point(const ArgmaxSet& set, double p, double tol = 1e-12) {
    return set.pieces.size() == 1 && set.pieces.front().is_point() &&
           std::abs(set.pieces.front().lo - p) <= tol;
}

bool is_single_interval(const ArgmaxSet& set, double lo, double hi,
                        double tol = 1e-12) {
    return set.pieces.size() == 1 &&
           std::abs(set.pieces.front().lo - lo) <= tol &&
           std::abs(set.pieces.front().hi - hi) <= tol;
}

struct Tuple {
    double p_r, c, alpha, beta, gamma;
};

Tuple random_tuple(Substream& rng) {
    Tuple t;
    t.p_r = rng.uniform(0.1, 100.0);
    t.c = rng.uniform(0.0, t.p_r);
    t.beta = rng.uniform(0.0, 0.99);
    t.alpha = rng.uniform(t.beta, 3.0);
    t.gamma = rng.uniform(0.0, 2.0);
    return t;
}

}  // namespace

TEST_CASE("closed form: generic single-point regimes") {
    // beta < 0.5, beta + gamma < 1: keep everything
    CHECK(is_single_point(optimal_price_closed_form(10, 4, 1, 0.3, 0.2), 0));
    // beta < 0.5, beta + gamma > 1: pay exactly the cost
    CHECK(is_single_point(optimal_price_closed_form(10, 4, 1, 0.3, 0.9), 4));
    // beta > 0.5 with the loss term strong enough: fair midpoint
    CHECK(is_single_point(optimal_price_closed_form(10, 4, 1, 0.6, 0.5), 7));
    CHECK(optimal_price_closed_form(10, 4, 1, 0.6, 0.5).max_utility ==
          doctest::Approx(3.0));
}

TEST_CASE("closed form: altruism above 0.5 with a weak loss term") {
    // With gamma far below 0.5 and the cost close to the reference price,
    // paying zero beats the fair midpoint: U(0) = (1-beta) p_r - gamma c
    // exceeds U(p_f) = (p_r - c)/2 whenever
    // p_r (0.5 - beta) + c (0.5 - gamma) > 0.
    ArgmaxSet zero_wins = optimal_price_closed_form(10, 4, 1, 0.6, 0);
    CHECK(is_single_point(zero_wins, 0));
    CHECK(zero_wins.max_utility == doctest::Approx(4.0));
    ArgmaxSet oracle = optimal_price_oracle(10, 4, 1, 0.6, 0, 0.001);
    CHECK(oracle.pieces.front().lo == 0.0);
    CHECK(oracle.max_utility == doctest::Approx(4.0));

    // same altruism, cheap item: the midpoint wins again
    CHECK(is_single_point(optimal_price_closed_form(10, 1, 1, 0.6, 0), 5.5));

    // the tie between 0 and p_f shows up as two argmax points
    // (beta=0.6, gamma=0.3: u0 - uf = p_r(-0.1) + c(0.2) = 0 at c = p_r/2)
    ArgmaxSet tie = optimal_price_closed_form(10, 5, 1, 0.6, 0.3);
    CHECK(tie.pieces.size() == 2);
    CHECK(tie.pieces.front().lo == 0.0);
    CHECK(tie.pieces.back().lo == doctest::Approx(7.5));
}

TEST_CASE("closed form: indifference intervals") {
    // beta + gamma = 1 with beta < 0.5: flat on [0, c], falling after
    ArgmaxSet flat_low = optimal_price_closed_form(10, 4, 1, 0.3, 0.7);
    CHECK(is_single_interval(flat_low, 0, 4));
    CHECK(flat_low.max_utility == doctest::Approx(4.2));

    // beta = 0.5 with gamma >= 0.5: flat on [c, p_f], rising before
    ArgmaxSet flat_high = optimal_price_closed_form(10, 4, 1, 0.5, 0.6);
    CHECK(is_single_interval(flat_high, 4, 7));

    // beta = 0.5 with gamma < 0.5: the [0, c] slope is negative, so the
    // plateau never reaches the value of paying zero
    CHECK(is_single_point(optimal_price_closed_form(10, 4, 1, 0.5, 0.2), 0));

    // beta = 0.5, gamma = 0.5: flat everywhere up to p_f
    CHECK(is_single_interval(optimal_price_closed_form(10, 4, 1, 0.5, 0.5), 0, 7));
}

TEST_CASE("closed form: degenerate domains") {
    // zero cost folds the first segment away
    CHECK(is_single_point(optimal_price_closed_form(10, 0, 1, 0.3, 1.5), 0));
    CHECK(is_single_point(optimal_price_closed_form(10, 0, 1, 0.7, 0), 5));
    // cost equal to the reference price folds the second away
    CHECK(is_single_point(optimal_price_closed_form(10, 10, 1, 0.3, 0.9), 10));
    CHECK(is_single_point(optimal_price_closed_form(10, 10, 1, 0.3, 0.2), 0));
    // the completely degenerate point
    ArgmaxSet all_zero = optimal_price_closed_form(0, 0, 0, 0, 0);
    CHECK(is_single_point(all_zero, 0));
    CHECK(all_zero.max_utility == 0);
}

TEST_CASE("closed form: domain validation") {
    CHECK_THROWS_AS(optimal_price_closed_form(4, 10, 1, 0.3, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimal_price_closed_form(10, 4, 0.2, 0.5, 0),
                    std::invalid_argument);  // alpha < beta
    CHECK_THROWS_AS(optimal_price_closed_form(10, 4, 1, 1.0, 0),
                    std::invalid_argument);  // beta = 1
    CHECK_THROWS_AS(optimal_price_closed_form(10, 4, 1, 0.3, -0.1),
                    std::invalid_argument);
}

TEST_CASE("oracle: matches the closed form on the worked examples") {
    ArgmaxSet fair = optimal_price_oracle(10, 4, 1, 0.6, 0.5, 0.001);
    CHECK(fair.pieces.size() == 1);
    CHECK(std::abs(fair.pieces.front().lo - 7) <= 0.001 + 1e-9);
    CHECK(std::abs(fair.pieces.front().hi - 7) <= 0.001 + 1e-9);

    ArgmaxSet cost = optimal_price_oracle(10, 4, 1, 0.3, 0.9, 0.001);
    CHECK(std::abs(cost.pieces.front().lo - 4) <= 0.001 + 1e-9);

    ArgmaxSet selfish = optimal_price_oracle(1, 0, 0, 0, 0, 0.001);
    CHECK(selfish.pieces.size() == 1);
    CHECK(selfish.pieces.front().lo == 0.0);
    CHECK(selfish.pieces.front().hi == 0.0);

    CHECK_THROWS_AS(optimal_price_oracle(10, 4, 1, 0.3, 0.9, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(optimal_price_oracle(10, 4, 1, 0.3, 0.9, -1),
                    std::invalid_argument);
}

TEST_CASE("oracle: indifference interval comes back as one piece") {
    ArgmaxSet flat = optimal_price_oracle(10, 4, 1, 0.3, 0.7, 0.001);
    CHECK(flat.pieces.size() == 1);
    CHECK(flat.pieces.front().lo == 0.0);
    CHECK(std::abs(flat.pieces.front().hi - 4.0) <= 0.001 + 1e-9);
}

TEST_CASE("consistency: closed form against the grid oracle") {
    Substream rng(21, 0, 0);
    for (int i = 0; i < 500; ++i) {
        Tuple t = random_tuple(rng);
        ConsistencyReport report = check_consistency(
            t.p_r, t.c, t.alpha, t.beta, t.gamma, 1e-3 * t.p_r);
        INFO("tuple p_r=", t.p_r, " c=", t.c, " alpha=", t.alpha,
             " beta=", t.beta, " gamma=", t.gamma);
        CHECK(report.pass);
    }
}

TEST_CASE("consistency: boundary beta = 0.5 passes with an interval") {
    ConsistencyReport report = check_consistency(10, 4, 1, 0.5, 0.6, 0.001);
    CHECK(report.pass);
    ArgmaxSet set = optimal_price_closed_form(10, 4, 1, 0.5, 0.6);
    CHECK(!set.pieces.front().is_point());
    // invariant violations are rejected before any comparison runs
    CHECK_THROWS_AS(check_consistency(10, 4, 0.2, 0.5, 0.6, 0.001),
                    std::invalid_argument);
}

TEST_CASE("argmax sets are sorted, disjoint, in range and attain the max") {
    Substream rng(25, 0, 0);
    for (int i = 0; i < 2000; ++i) {
        Tuple t = random_tuple(rng);
        ArgmaxSet set =
            optimal_price_closed_form(t.p_r, t.c, t.alpha, t.beta, t.gamma);
        REQUIRE(!set.pieces.empty());
        double tol = utility_tolerance(t.p_r);
        double prev_hi = -1.0;
        for (const auto& piece : set.pieces) {
            CHECK(piece.lo <= piece.hi);
            CHECK(piece.lo > prev_hi);
            prev_hi = piece.hi;
            CHECK(piece.lo >= 0.0);
            CHECK(piece.hi <= t.p_r);
            for (double at : {piece.lo, 0.5 * (piece.lo + piece.hi), piece.hi}) {
                double u = fs_extended_utility(t.p_r, at, t.c, t.alpha, t.beta,
                                               t.gamma)
                               .total;
                CHECK(std::abs(u - set.max_utility) <= tol);
            }
        }
    }
}

TEST_CASE("gamma = 0 never makes the cost an isolated optimum") {
    Substream rng(22, 0, 0);
    for (int i = 0; i < 2000; ++i) {
        Tuple t = random_tuple(rng);
        t.gamma = 0.0;
        t.c = rng.uniform(1e-3 * t.p_r, (1.0 - 1e-3) * t.p_r);
        ArgmaxSet set =
            optimal_price_closed_form(t.p_r, t.c, t.alpha, t.beta, t.gamma);
        for (const auto& piece : set.pieces)
            if (piece.is_point())
                CHECK(std::abs(piece.lo - t.c) > 1e-12);
    }
}

TEST_CASE("paying zero beats the midpoint whenever beta < 0.5, beta+gamma < 1") {
    Substream rng(23, 0, 0);
    for (int i = 0; i < 2000; ++i) {
        Tuple t = random_tuple(rng);
        if (!(t.beta < 0.5 && t.beta + t.gamma < 1.0)) continue;
        double u0 =
            fs_extended_utility(t.p_r, 0, t.c, t.alpha, t.beta, t.gamma).total;
        double p_f = 0.5 * (t.p_r + t.c);
        double uf =
            fs_extended_utility(t.p_r, p_f, t.c, t.alpha, t.beta, t.gamma).total;
        CHECK(u0 >= uf);
        ArgmaxSet set =
            optimal_price_closed_form(t.p_r, t.c, t.alpha, t.beta, t.gamma);
        CHECK(set.upper() < p_f + 1e-12);
    }
}

TEST_CASE("selected price is monotone in beta, gamma and p_r") {
    Substream rng(24, 0, 0);
    auto selected = [](double p_r, double c, double alpha, double beta,
                       double gamma) {
        return representative_price(
            optimal_price_closed_form(p_r, c, alpha, beta, gamma),
            Representative::Upper);
    };
    for (int i = 0; i < 300; ++i) {
        Tuple t = random_tuple(rng);
        double prev = selected(t.p_r, t.c, std::max(t.alpha, 0.99), 0.0, t.gamma);
        for (double beta = 0.05; beta < 0.99; beta += 0.05) {
            double cur =
                selected(t.p_r, t.c, std::max(t.alpha, 0.99), beta, t.gamma);
            CHECK(cur >= prev - 1e-9);
            prev = cur;
        }
        prev = selected(t.p_r, t.c, t.alpha, t.beta, 0.0);
        for (double gamma = 0.1; gamma <= 2.0; gamma += 0.1) {
            double cur = selected(t.p_r, t.c, t.alpha, t.beta, gamma);
            CHECK(cur >= prev - 1e-9);
            prev = cur;
        }
        prev = selected(std::max(t.c, 0.1), t.c, t.alpha, t.beta, t.gamma);
        for (double p_r = std::max(t.c, 0.1) * 1.1; p_r < 200.0; p_r *= 1.5) {
            double cur = selected(p_r, t.c, t.alpha, t.beta, t.gamma);
            CHECK(cur >= prev - 1e-9);
            prev = cur;
        }
    }
}

TEST_CASE("representative price selection") {
    ArgmaxSet set;
    set.pieces = {{0.0, 0.0}, {4.0, 7.0}};
    set.max_utility = 1.0;
    CHECK(representative_price(set, Representative::Upper) == 7.0);
    CHECK(representative_price(set, Representative::Lower) == 0.0);
    CHECK(representative_price(set, Representative::Midpoint) == 5.5);
    CHECK_THROWS_AS(representative_price(ArgmaxSet{}, Representative::Upper),
                    std::invalid_argument);
}

TEST_CASE("argmax set distance helper") {
    ArgmaxSet set;
    set.pieces = {{1.0, 2.0}, {5.0, 5.0}};
    CHECK(set.distance_to(1.5) == 0.0);
    CHECK(set.distance_to(0.0) == 1.0);
    CHECK(set.distance_to(4.0) == doctest::Approx(1.0));
    CHECK(set.distance_to(6.0) == doctest::Approx(1.0));
    CHECK(set.contains(2.0));
    CHECK(!set.contains(3.0));
    CHECK(set.contains(3.0, 1.0));
}

TEST_CASE("case label for the CLI") {
    CHECK(optimal_price_case(10, 4, 0.6, 0.5) == "beta > 0.5");
    CHECK(optimal_price_case(10, 4, 0.3, 0.2) ==
          "beta < 0.5 and beta + gamma < 1");
    CHECK(optimal_price_case(10, 4, 0.3, 0.9) ==
          "beta < 0.5 and beta + gamma > 1");
    CHECK(optimal_price_case(10, 4, 0.3, 0.7) ==
          "beta < 0.5 and beta + gamma = 1 (indifference)");
}
