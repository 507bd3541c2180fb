#pragma once

// Topological shooting over the initial slope a = y'(0): classification of
// each shot by whichever happens first (y crosses 1, or y' crosses 0), and
// bisection for the unique connecting slope a* separating the two regimes.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wuyang/ode.hpp"
#include "wuyang/types.hpp"

namespace wuyang {

enum class Outcome { CrossedOne, DerivCrossedZero, ConvergedToOne, Undetermined };

const char* outcome_name(Outcome tag);
Outcome outcome_from_name(const std::string& name);

struct ShotOutcome {
    Outcome tag = Outcome::Undetermined;
    std::optional<double> location;  // coordinate of the deciding event
    PlaneTrajectory trajectory;
};

struct AstarResult {
    double a_star = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int iterations = 0;
    std::vector<std::pair<double, Outcome>> log;
    double x_max_used = 0.0;
    bool x_max_capped = false;  // bisection stopped at the x_max cap
};

// Integrate the shot at slope a with both classifier events armed and decide
// by the first terminal event before x_max. With no event, the far-window
// test (0 < y < 1, y' > 0, |y-1| < far_tol at x_max) yields ConvergedToOne;
// anything else is Undetermined. Two events landing within one localization
// tolerance (1e-12) of each other are ruled a tie and also Undetermined.
ShotOutcome classify(double a, const StepControl& ctrl, double x_max, double far_tol = 1e-6);

// hi = 0.71, just above 1/sqrt(2), where the energy identity guarantees a
// crossing; lo found by geometric descent a <- a/2 from 0.35 until a shot
// classifies DerivCrossedZero. Both endpoints re-verified.
std::pair<double, double> seed_bracket(const StepControl& ctrl, double x_max);

// Bisection on the classifier. Undetermined (or ConvergedToOne) midpoints
// trigger x_max doubling, capped at 200; the cap sets x_max_capped instead
// of refining further. Requires tol >= 1e-12 and a valid bracket.
AstarResult find_astar(std::pair<double, double> bracket, double tol, const StepControl& ctrl,
                       double x_max = 40.0);

// Shrink a valid bracket down to two adjacent doubles. The trajectory at
// either endpoint then shadows the connecting orbit as long as double
// precision permits, which the far-field fits need.
std::pair<double, double> refine_bracket_ulp(std::pair<double, double> bracket,
                                             const StepControl& ctrl, double x_max = 40.0);

// For a > 1/sqrt(2) the first integral of the shifted equation bounds the
// crossing: y reaches 1 no later than x+ = (a^2 - 1/2)^(-1/2) + 1 with
// y' > 0 throughout. Checks both claims on the computed shot.
CheckReport crossing_bound_witness(double a, const StepControl& ctrl);

// Solution of the small-slope linear limit w'' - w' + w = 0, w(0) = 0,
// w'(0) = 1, and its derivative.
double linear_limit_w(double x);
double linear_limit_w_prime(double x);

// First abscissa where the linear-limit derivative has turned negative
// while w is still positive: 5*pi/(3*sqrt(3)).
inline double x_minus() { return 5.0 * M_PI / (3.0 * std::sqrt(3.0)); }

}  // namespace wuyang
