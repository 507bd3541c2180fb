#pragma once

// The two forms of the field equation and the coordinate transform between
// them:
//
//   r-domain:  r^2 f'' + f = f^3          on r >= 1
//   x-domain:  y'' - y' + y = y^3         with r = e^x, f(r) = y(x)
//
// plus the augmented systems used by the energy-identity and sensitivity
// checks.

#include <array>
#include <cmath>
#include <span>
#include <utility>
#include <vector>

#include "wuyang/rk54.hpp"
#include "wuyang/trajectory.hpp"
#include "wuyang/types.hpp"

namespace wuyang {

using PlaneTrajectory = Trajectory<2>;

// y'' = y' + y^3 - y as a first-order system.
inline std::pair<double, double> rhs_x(const XState& s) {
    return {s.yp, s.yp + s.y * s.y * s.y - s.y};
}

// f'' = (f^3 - f) / r^2; only r > 0 is meaningful here.
inline std::pair<double, double> rhs_r(const RState& s) {
    if (!(s.r > 0.0)) throw std::domain_error("rhs_r: requires r > 0");
    return {s.fp, (s.f * s.f * s.f - s.f) / (s.r * s.r)};
}

struct PlaneXSystem {
    void operator()(double, const std::array<double, 2>& u, std::array<double, 2>& du) const {
        du[0] = u[1];
        du[1] = u[1] + u[0] * u[0] * u[0] - u[0];
    }
};

struct PlaneRSystem {
    void operator()(double r, const std::array<double, 2>& u, std::array<double, 2>& du) const {
        du[0] = u[1];
        du[1] = (u[0] * u[0] * u[0] - u[0]) / (r * r);
    }
};

// (y, y', E) with E(x) = int_0^x y'(s)^2 ds, carried at integrator accuracy
// so the first integral of the shifted equation can be checked pointwise.
struct EnergyXSystem {
    void operator()(double, const std::array<double, 3>& u, std::array<double, 3>& du) const {
        du[0] = u[1];
        du[1] = u[1] + u[0] * u[0] * u[0] - u[0];
        du[2] = u[1] * u[1];
    }
};

// (f, f', psi, psi', I) in r: the sensitivity psi = df/da co-integrated with
// the base solution, plus I(r) = int_1^r f^3 psi / s^2 ds for the integrated
// Wronskian relation r^2 (f' psi - f psi')' = -2 f^3 psi.
struct SensitivityRSystem {
    void operator()(double r, const std::array<double, 5>& u, std::array<double, 5>& du) const {
        const double r2 = r * r;
        const double f = u[0], psi = u[2];
        du[0] = u[1];
        du[1] = (f * f * f - f) / r2;
        du[2] = u[3];
        du[3] = (3.0 * f * f - 1.0) * psi / r2;
        du[4] = f * f * f * psi / r2;
    }
};

// Events used by the shooting classifier.
inline EventSpec<2> event_crosses_one() {
    return {"y=1", [](double, const std::array<double, 2>& u) { return u[0] - 1.0; },
            EventDirection::Rising, true};
}

inline EventSpec<2> event_deriv_zero(bool terminal = true) {
    return {"yp=0", [](double, const std::array<double, 2>& u) { return u[1]; },
            EventDirection::Falling, terminal};
}

inline EventSpec<2> event_f_crosses_one() {
    return {"f=1", [](double, const std::array<double, 2>& u) { return u[0] - 1.0; },
            EventDirection::Rising, true};
}

inline PlaneTrajectory integrate_x(const XState& initial, const StepControl& ctrl,
                                   std::span<const EventSpec<2>> events, double x_max) {
    return integrate<2>(initial.x, {initial.y, initial.yp}, PlaneXSystem{}, ctrl, events, x_max);
}

inline PlaneTrajectory integrate_r(const RState& initial, const StepControl& ctrl,
                                   std::span<const EventSpec<2>> events, double r_max) {
    if (!(initial.r >= 1.0)) throw std::invalid_argument("integrate_r: requires r0 >= 1");
    return integrate<2>(initial.r, {initial.f, initial.fp}, PlaneRSystem{}, ctrl, events, r_max);
}

// Pointwise map r = e^x, f = y, f' = y'/r. Nodes and event hits map exactly;
// dense segments are rebuilt as Hermite interpolants from the mapped values
// and slopes.
inline PlaneTrajectory transform_to_r(const PlaneTrajectory& tx) {
    std::vector<double> rs;
    std::vector<std::array<double, 2>> us, dus;
    rs.reserve(tx.nodes.size());
    for (const auto& n : tx.nodes) {
        const double r = std::exp(n.t);
        const double f = n.u[0];
        const double fp = n.u[1] / r;
        rs.push_back(r);
        us.push_back({f, fp});
        dus.push_back({fp, (f * f * f - f) / (r * r)});
    }
    auto tr = PlaneTrajectory::from_samples(rs, us, dus);
    tr.termination = tx.termination;
    for (const auto& h : tx.events) {
        const double r = std::exp(h.t);
        tr.events.push_back({h.label, r, {h.u[0], h.u[1] / r}});
    }
    return tr;
}

// Inverse map x = log r, y = f, y' = r f'.
inline PlaneTrajectory transform_to_x(const PlaneTrajectory& tr) {
    std::vector<double> xs;
    std::vector<std::array<double, 2>> us, dus;
    xs.reserve(tr.nodes.size());
    for (const auto& n : tr.nodes) {
        const double x = std::log(n.t);
        const double y = n.u[0];
        const double yp = n.u[1] * n.t;
        xs.push_back(x);
        us.push_back({y, yp});
        dus.push_back({yp, yp + y * y * y - y});
    }
    auto tx = PlaneTrajectory::from_samples(xs, us, dus);
    tx.termination = tr.termination;
    for (const auto& h : tr.events) {
        tx.events.push_back({h.label, std::log(h.t), {h.u[0], h.u[1] * h.t}});
    }
    return tx;
}

}  // namespace wuyang
