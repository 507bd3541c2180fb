#include "wuyang/shooting.hpp"

#include <cmath>
#include <version>

namespace wuyang {

const char* outcome_name(Outcome tag) {
    switch (tag) {
        case Outcome::CrossedOne: return "CrossedOne";
        case Outcome::DerivCrossedZero: return "DerivCrossedZero";
        case Outcome::ConvergedToOne: return "ConvergedToOne";
        case Outcome::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

Outcome outcome_from_name(const std::string& name) {
    if (name == "CrossedOne") return Outcome::CrossedOne;
    if (name == "DerivCrossedZero") return Outcome::DerivCrossedZero;
    if (name == "ConvergedToOne") return Outcome::ConvergedToOne;
    if (name == "Undetermined") return Outcome::Undetermined;
    throw std::invalid_argument("unknown outcome tag: " + name);
}

ShotOutcome classify(double a, const StepControl& ctrl, double x_max, double far_tol) {
    if (!(a > 0.0)) throw std::invalid_argument("classify: requires a > 0");
    const EventSpec<2> events[] = {event_crosses_one(), event_deriv_zero()};
    auto tr = integrate_x({0.0, 0.0, a}, ctrl, events, x_max);

    ShotOutcome out;
    out.trajectory = std::move(tr);
    const auto& t = out.trajectory;

    switch (t.termination) {
        case Termination::Event: {
            const auto& first = t.events.front();
            if (t.events.size() >= 2) {
                const auto& second = t.events[1];
                const double tie_tol = 1e-12 * std::max(1.0, std::fabs(first.t));
                if (second.label != first.label && second.t - first.t < tie_tol) {
                    out.tag = Outcome::Undetermined;  // below localization accuracy
                    return out;
                }
            }
            out.tag = (first.label == "y=1") ? Outcome::CrossedOne : Outcome::DerivCrossedZero;
            out.location = first.t;
            return out;
        }
        case Termination::ReachedEnd: {
            const auto& last = t.nodes.back().u;
            const bool window_ok =
                last[0] > 0.0 && last[0] < 1.0 && last[1] > 0.0 && std::fabs(last[0] - 1.0) < far_tol;
            out.tag = window_ok ? Outcome::ConvergedToOne : Outcome::Undetermined;
            return out;
        }
        case Termination::Blowup:
            // The crossing event fires before the guard on any upward escape;
            // a guarded stop without it means the shot told us nothing.
            out.tag = Outcome::Undetermined;
            return out;
        case Termination::StepLimit:
            throw StepLimitExceeded("classify: step limit at a = " + std::to_string(a));
    }
    return out;
}

std::pair<double, double> seed_bracket(const StepControl& ctrl, double x_max) {
    const double hi = 0.71;
    if (classify(hi, ctrl, x_max).tag != Outcome::CrossedOne)
        throw SeedFailure("seed_bracket: 0.71 did not cross 1 by x_max");
    double lo = 0.35;
    while (lo > 1e-8) {
        if (classify(lo, ctrl, x_max).tag == Outcome::DerivCrossedZero) return {lo, hi};
        lo *= 0.5;
    }
    throw SeedFailure("seed_bracket: no slope above 1e-8 classified DerivCrossedZero");
}

namespace {

void check_bracket(std::pair<double, double> bracket, const StepControl& ctrl, double x_max) {
    if (!(bracket.first > 0.0) || !(bracket.second > bracket.first))
        throw std::invalid_argument("find_astar: bracket must satisfy 0 < lo < hi");
    if (classify(bracket.first, ctrl, x_max).tag != Outcome::DerivCrossedZero)
        throw std::invalid_argument("find_astar: lo endpoint is not DerivCrossedZero");
    if (classify(bracket.second, ctrl, x_max).tag != Outcome::CrossedOne)
        throw std::invalid_argument("find_astar: hi endpoint is not CrossedOne");
}

}  // namespace

AstarResult find_astar(std::pair<double, double> bracket, double tol, const StepControl& ctrl,
                       double x_max) {
    if (!(tol >= 1e-12)) throw std::invalid_argument("find_astar: tol must be >= 1e-12");
    check_bracket(bracket, ctrl, x_max);

    AstarResult res;
    auto [lo, hi] = bracket;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;  // bracket at double resolution
        Outcome tag = classify(mid, ctrl, x_max).tag;
        while (tag != Outcome::CrossedOne && tag != Outcome::DerivCrossedZero) {
            // ConvergedToOne never drives a bisection decision; only a strict
            // event does. Extend the horizon until one fires.
            if (x_max >= 200.0) {
                res.x_max_capped = true;
                break;
            }
            x_max = std::min(2.0 * x_max, 200.0);
            tag = classify(mid, ctrl, x_max).tag;
        }
        res.log.emplace_back(mid, tag);
        if (res.x_max_capped) break;
        ++res.iterations;
        if (tag == Outcome::CrossedOne)
            hi = mid;
        else
            lo = mid;
    }
    res.a_star = 0.5 * (lo + hi);
    res.bracket_lo = lo;
    res.bracket_hi = hi;
    res.x_max_used = x_max;
    return res;
}

std::pair<double, double> refine_bracket_ulp(std::pair<double, double> bracket,
                                             const StepControl& ctrl, double x_max) {
    check_bracket(bracket, ctrl, x_max);
    auto [lo, hi] = bracket;
    while (std::nextafter(lo, hi) < hi) {
        const double mid = std::midpoint(lo, hi);
        if (!(mid > lo && mid < hi)) break;
        Outcome tag = classify(mid, ctrl, x_max).tag;
        while (tag != Outcome::CrossedOne && tag != Outcome::DerivCrossedZero && x_max < 200.0) {
            x_max = std::min(2.0 * x_max, 200.0);
            tag = classify(mid, ctrl, x_max).tag;
        }
        if (tag == Outcome::CrossedOne)
            hi = mid;
        else if (tag == Outcome::DerivCrossedZero)
            lo = mid;
        else
            break;  // undecidable even at the cap; keep the current bracket
    }
    return {lo, hi};
}

CheckReport crossing_bound_witness(double a, const StepControl& ctrl) {
    if (!(a > 1.0 / std::sqrt(2.0)))
        throw std::invalid_argument("crossing_bound_witness: requires a > 1/sqrt(2)");
    const double bound = 1.0 / std::sqrt(a * a - 0.5) + 1.0;

    CheckReport rep;
    rep.name = "crossing-bound(a=" + std::to_string(a) + ")";
    auto shot = classify(a, ctrl, bound + 1.0);
    if (shot.tag != Outcome::CrossedOne) {
        rep.detail = "no crossing of 1 before the bound";
        return rep;
    }
    const double x1 = *shot.location;
    double min_yp = shot.trajectory.nodes.front().u[1];
    double min_yp_at = shot.trajectory.nodes.front().t;
    for (const auto& n : shot.trajectory.nodes) {
        if (n.t > x1) break;
        if (n.u[1] < min_yp) {
            min_yp = n.u[1];
            min_yp_at = n.t;
        }
    }
    rep.values = {{"a", a}, {"x1", x1}, {"bound", bound}, {"min_yp", min_yp}};
    if (!(x1 <= bound)) {
        rep.detail = "crossing at " + std::to_string(x1) + " exceeds bound " + std::to_string(bound);
        return rep;
    }
    if (!(min_yp > 0.0)) {
        rep.detail = "y' = " + std::to_string(min_yp) + " at x = " + std::to_string(min_yp_at);
        rep.values.emplace_back("violating_x", min_yp_at);
        return rep;
    }
    rep.passed = true;
    rep.detail = "crossed at x1 = " + std::to_string(x1) + " <= " + std::to_string(bound);
    return rep;
}

double linear_limit_w(double x) {
    return 2.0 / std::sqrt(3.0) * std::exp(0.5 * x) * std::sin(std::sqrt(3.0) * 0.5 * x);
}

double linear_limit_w_prime(double x) {
    const double s = std::sqrt(3.0) * 0.5 * x;
    return std::exp(0.5 * x) * (std::sin(s) / std::sqrt(3.0) + std::cos(s));
}

}  // namespace wuyang
