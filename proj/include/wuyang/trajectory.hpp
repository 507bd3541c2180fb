#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wuyang {

enum class Termination {
    Event,       // a terminal event was localized
    ReachedEnd,  // integration reached t_max
    Blowup,      // |u0| exceeded the blow-up bound
    StepLimit,   // step budget exhausted
};

enum class EventDirection { Any, Rising, Falling };

template <int N>
struct EventSpec {
    std::string label;
    std::function<double(double, const std::array<double, N>&)> value;
    EventDirection direction = EventDirection::Any;
    bool terminal = true;
};

// Record of an adaptive integration: states at accepted steps, a quartic
// dense-output segment per step, and localized event hits.
//
// Each segment is evaluated at th = (t - t0)/h as
//   u(th) = c1 + th*(c2 + (1-th)*(c3 + th*(c4 + (1-th)*c5)))
// which reproduces the stored node states exactly at th = 0 and th = 1.
template <int N>
struct Trajectory {
    using State = std::array<double, N>;

    struct Node {
        double t;
        State u;
    };

    struct Segment {
        double t0;
        double h;
        std::array<State, 5> c;
    };

    struct EventHit {
        std::string label;
        double t;
        State u;
    };

    std::vector<Node> nodes;
    std::vector<Segment> segments;  // segments.size() == nodes.size() - 1
    std::vector<EventHit> events;
    Termination termination = Termination::ReachedEnd;

    double t_front() const { return nodes.front().t; }
    double t_back() const { return nodes.back().t; }

    static State eval_segment(const Segment& s, double t) {
        const double th = (t - s.t0) / s.h;
        State out;
        for (int i = 0; i < N; ++i) {
            out[i] = s.c[0][i] +
                     th * (s.c[1][i] + (1.0 - th) * (s.c[2][i] + th * (s.c[3][i] + (1.0 - th) * s.c[4][i])));
        }
        return out;
    }

    // Dense sample at any t within the covered range.
    State sample(double t) const {
        if (nodes.empty()) throw std::logic_error("Trajectory::sample on empty trajectory");
        if (t < t_front() || t > t_back())
            throw std::out_of_range("Trajectory::sample outside [" + std::to_string(t_front()) + ", " +
                                    std::to_string(t_back()) + "]");
        if (t == nodes.front().t) return nodes.front().u;
        auto it = std::upper_bound(nodes.begin(), nodes.end(), t,
                                   [](double v, const Node& n) { return v < n.t; });
        std::size_t idx = static_cast<std::size_t>(it - nodes.begin());
        if (idx >= nodes.size()) return nodes.back().u;  // t == t_back
        return eval_segment(segments[idx - 1], t);
    }

    // Build a trajectory from sampled values and slopes (cubic Hermite
    // segments, c5 = 0). Used by the coordinate transforms and by tests
    // that need synthetic trajectories.
    static Trajectory from_samples(const std::vector<double>& ts, const std::vector<State>& us,
                                   const std::vector<State>& dus) {
        if (ts.size() != us.size() || ts.size() != dus.size() || ts.size() < 2)
            throw std::invalid_argument("from_samples: need >= 2 consistent samples");
        Trajectory tr;
        tr.nodes.reserve(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i) {
            if (i > 0 && !(ts[i] > ts[i - 1]))
                throw std::invalid_argument("from_samples: abscissae must be strictly increasing");
            tr.nodes.push_back({ts[i], us[i]});
        }
        tr.segments.reserve(ts.size() - 1);
        for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
            Segment s;
            s.t0 = ts[i];
            s.h = ts[i + 1] - ts[i];
            for (int k = 0; k < N; ++k) {
                const double d = us[i + 1][k] - us[i][k];
                s.c[0][k] = us[i][k];
                s.c[1][k] = d;
                s.c[2][k] = s.h * dus[i][k] - d;
                s.c[3][k] = d - s.h * dus[i + 1][k] - s.c[2][k];
                s.c[4][k] = 0.0;
            }
            tr.segments.push_back(s);
        }
        tr.termination = Termination::ReachedEnd;
        return tr;
    }
};

}  // namespace wuyang
