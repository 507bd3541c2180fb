#pragma once

// Embedded Dormand-Prince 5(4) pair with the free 4th-order continuous
// extension, FSAL step reuse, and event localization on the dense output.
// The problem family integrated here is smooth and non-stiff on the whole
// working range, so an explicit pair meets the tolerance contract.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "wuyang/trajectory.hpp"
#include "wuyang/types.hpp"

namespace wuyang {
namespace detail {

// Dormand-Prince coefficients.
inline constexpr double A21 = 1.0 / 5;
inline constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
inline constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
inline constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                        A54 = -212.0 / 729;
inline constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                        A64 = 49.0 / 176, A65 = -5103.0 / 18656;
inline constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192,
                        B5 = -2187.0 / 6784, B6 = 11.0 / 84;
// 5th-order minus embedded 4th-order weights (error estimator).
inline constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                        E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;
inline constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
// Continuous-extension weights.
inline constexpr double D1 = -12715105075.0 / 11282082432.0;
inline constexpr double D3 = 87487479700.0 / 32700410799.0;
inline constexpr double D4 = -10690763975.0 / 1880347072.0;
inline constexpr double D5 = 701980252875.0 / 199316789632.0;
inline constexpr double D6 = -1453857185.0 / 822651844.0;
inline constexpr double D7 = 69997945.0 / 29380423.0;

inline constexpr double kMinStepScale = 1e-13;

inline bool direction_matches(double g0, double g1, EventDirection dir) {
    switch (dir) {
        case EventDirection::Rising:
            return g0 < 0.0 && g1 >= 0.0;
        case EventDirection::Falling:
            return g0 > 0.0 && g1 <= 0.0;
        case EventDirection::Any:
            return (g0 < 0.0 && g1 >= 0.0) || (g0 > 0.0 && g1 <= 0.0);
    }
    return false;
}

// Illinois-damped regula falsi; the bracket [ta, tb] carries a sign change.
template <class F>
double refine_root(F&& g, double ta, double tb, double ga, double gb) {
    const double tol = 1e-12 * std::max(1.0, std::max(std::fabs(ta), std::fabs(tb)));
    double side = 0.0;
    for (int it = 0; it < 128 && tb - ta > tol; ++it) {
        double tm = (gb - ga != 0.0) ? (ta * gb - tb * ga) / (gb - ga) : 0.5 * (ta + tb);
        if (!(tm > ta && tm < tb)) tm = 0.5 * (ta + tb);
        const double gm = g(tm);
        if (gm == 0.0) return tm;
        if ((ga < 0.0) == (gm < 0.0)) {
            ta = tm;
            ga = gm;
            if (side == -1.0) gb *= 0.5;
            side = -1.0;
        } else {
            tb = tm;
            gb = gm;
            if (side == 1.0) ga *= 0.5;
            side = 1.0;
        }
    }
    return 0.5 * (ta + tb);
}

}  // namespace detail

// Integrate du/dt = rhs(t, u) from (t0, u0) to t_max under adaptive error
// control. Terminates at the first applicable of: terminal event, blow-up
// guard on |u[0]|, t_max, step limit. Events are detected by sign change
// across accepted steps and refined on the dense output to relative 1e-12.
template <int N, class RHS>
Trajectory<N> integrate(double t0, const std::array<double, N>& u0, RHS&& rhs,
                        const StepControl& ctrl, std::span<const EventSpec<N>> events,
                        double t_max) {
    using Traj = Trajectory<N>;
    using State = std::array<double, N>;
    ctrl.validate();
    if (!(t_max > t0)) throw std::invalid_argument("integrate: t_max must exceed t0");
    for (double v : u0)
        if (!std::isfinite(v)) throw std::invalid_argument("integrate: non-finite initial state");

    Traj tr;
    tr.nodes.push_back({t0, u0});

    State u = u0;
    double t = t0;
    State k1;
    rhs(t, u, k1);
    for (double v : k1)
        if (!std::isfinite(v)) throw std::invalid_argument("integrate: non-finite rhs at start");

    std::vector<double> g_prev(events.size());
    for (std::size_t i = 0; i < events.size(); ++i) g_prev[i] = events[i].value(t, u);

    double h = std::min({ctrl.h_init, ctrl.h_max, t_max - t0});
    long steps = 0;

    State k2, k3, k4, k5, k6, k7, utmp, u1;

    while (t < t_max) {
        if (++steps > ctrl.max_steps) {
            tr.termination = Termination::StepLimit;
            return tr;
        }
        if (h < detail::kMinStepScale * std::max(1.0, std::fabs(t)))
            throw StiffnessSuspected("integrate: step size underflow at t = " + std::to_string(t));
        bool last = false;
        if (t + h >= t_max) {
            h = t_max - t;
            last = true;
        }

        auto stage = [&](const State& base, State& out, double tc) {
            rhs(tc, base, out);
        };
        for (int i = 0; i < N; ++i) utmp[i] = u[i] + h * detail::A21 * k1[i];
        stage(utmp, k2, t + detail::C2 * h);
        for (int i = 0; i < N; ++i) utmp[i] = u[i] + h * (detail::A31 * k1[i] + detail::A32 * k2[i]);
        stage(utmp, k3, t + detail::C3 * h);
        for (int i = 0; i < N; ++i)
            utmp[i] = u[i] + h * (detail::A41 * k1[i] + detail::A42 * k2[i] + detail::A43 * k3[i]);
        stage(utmp, k4, t + detail::C4 * h);
        for (int i = 0; i < N; ++i)
            utmp[i] = u[i] + h * (detail::A51 * k1[i] + detail::A52 * k2[i] + detail::A53 * k3[i] +
                                  detail::A54 * k4[i]);
        stage(utmp, k5, t + detail::C5 * h);
        for (int i = 0; i < N; ++i)
            utmp[i] = u[i] + h * (detail::A61 * k1[i] + detail::A62 * k2[i] + detail::A63 * k3[i] +
                                  detail::A64 * k4[i] + detail::A65 * k5[i]);
        stage(utmp, k6, t + h);
        for (int i = 0; i < N; ++i)
            u1[i] = u[i] + h * (detail::B1 * k1[i] + detail::B3 * k3[i] + detail::B4 * k4[i] +
                                detail::B5 * k5[i] + detail::B6 * k6[i]);
        stage(u1, k7, t + h);

        double err = 0.0;
        bool finite = true;
        for (int i = 0; i < N; ++i) {
            if (!std::isfinite(u1[i])) {
                finite = false;
                break;
            }
            const double e = h * (detail::E1 * k1[i] + detail::E3 * k3[i] + detail::E4 * k4[i] +
                                  detail::E5 * k5[i] + detail::E6 * k6[i] + detail::E7 * k7[i]);
            const double sc = ctrl.atol + ctrl.rtol * std::max(std::fabs(u[i]), std::fabs(u1[i]));
            err += (e / sc) * (e / sc);
        }
        err = finite ? std::sqrt(err / N) : std::numeric_limits<double>::infinity();

        if (!(err <= 1.0)) {
            const double fac = std::isfinite(err) ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.2;
            h *= fac;
            continue;
        }

        // Accepted: build the continuous-extension segment.
        typename Traj::Segment seg;
        seg.t0 = t;
        seg.h = h;
        for (int i = 0; i < N; ++i) {
            const double d = u1[i] - u[i];
            seg.c[0][i] = u[i];
            seg.c[1][i] = d;
            seg.c[2][i] = h * k1[i] - d;
            seg.c[3][i] = d - h * k7[i] - seg.c[2][i];
            seg.c[4][i] = h * (detail::D1 * k1[i] + detail::D3 * k3[i] + detail::D4 * k4[i] +
                               detail::D5 * k5[i] + detail::D6 * k6[i] + detail::D7 * k7[i]);
        }

        const double t1 = t + h;

        // Event scan over the accepted step.
        double first_terminal = std::numeric_limits<double>::infinity();
        std::vector<typename Traj::EventHit> step_hits;
        for (std::size_t ie = 0; ie < events.size(); ++ie) {
            const double g1 = events[ie].value(t1, u1);
            if (detail::direction_matches(g_prev[ie], g1, events[ie].direction)) {
                auto gfun = [&](double tt) {
                    return events[ie].value(tt, Traj::eval_segment(seg, tt));
                };
                const double troot = (g1 == 0.0)
                                         ? t1
                                         : detail::refine_root(gfun, t, t1, g_prev[ie], g1);
                typename Traj::EventHit hit{events[ie].label, troot, Traj::eval_segment(seg, troot)};
                step_hits.push_back(std::move(hit));
                if (events[ie].terminal) first_terminal = std::min(first_terminal, troot);
            }
            g_prev[ie] = g1;
        }
        std::sort(step_hits.begin(), step_hits.end(),
                  [](const auto& a, const auto& b) { return a.t < b.t; });

        if (first_terminal < std::numeric_limits<double>::infinity()) {
            // Keep every hit localized in this step (ties are the caller's
            // concern), but end the trajectory at the first terminal root.
            for (auto& hit : step_hits) tr.events.push_back(std::move(hit));
            tr.segments.push_back(seg);
            State uend = Traj::eval_segment(seg, first_terminal);
            if (first_terminal > t) {
                tr.nodes.push_back({first_terminal, uend});
            } else {
                // Root collapsed onto the left node: replace the pending step.
                tr.segments.pop_back();
            }
            tr.termination = Termination::Event;
            return tr;
        }
        for (auto& hit : step_hits) tr.events.push_back(std::move(hit));

        tr.segments.push_back(seg);
        tr.nodes.push_back({t1, u1});
        t = t1;
        u = u1;
        k1 = k7;  // FSAL

        if (std::fabs(u[0]) > ctrl.blowup_bound) {
            tr.termination = Termination::Blowup;
            return tr;
        }
        if (last || t >= t_max) {
            tr.termination = Termination::ReachedEnd;
            return tr;
        }
        h = std::min({h * std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0),
                      ctrl.h_max});
    }
    tr.termination = Termination::ReachedEnd;
    return tr;
}

}  // namespace wuyang
