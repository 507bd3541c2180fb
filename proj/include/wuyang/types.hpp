#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wuyang {

// Phase-space point in the transformed coordinate x = log r.
struct XState {
    double x;   // transformed coordinate
    double y;   // field value
    double yp;  // dy/dx
};

// Phase-space point in the radial coordinate, r >= 1 throughout.
struct RState {
    double r;
    double f;
    double fp;  // df/dr
};

// Adaptive step-size control for the embedded RK pair.
struct StepControl {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_init = 1e-3;
    double h_max = 0.1;
    long max_steps = 1000000;
    double blowup_bound = 10.0;  // stop once |u0| exceeds this

    void validate() const {
        auto tol_ok = [](double t) { return t >= 1e-14 && t < 1e-2; };
        if (!tol_ok(rtol) || !tol_ok(atol))
            throw std::invalid_argument("StepControl: rtol/atol outside [1e-14, 1e-2)");
        if (!(h_init > 0.0) || !(h_max > 0.0))
            throw std::invalid_argument("StepControl: step sizes must be positive");
        if (max_steps <= 0)
            throw std::invalid_argument("StepControl: max_steps must be positive");
        if (!(blowup_bound > 1.0))
            throw std::invalid_argument("StepControl: blowup_bound must exceed 1");
    }
};

class IntegratorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Step budget exhausted before any terminal condition.
class StepLimitExceeded : public IntegratorError {
public:
    using IntegratorError::IntegratorError;
};

// Step size collapsed below 1e-13; the problem is not expected to be stiff,
// so this signals a misconfiguration rather than a property of the equation.
class StiffnessSuspected : public IntegratorError {
public:
    using IntegratorError::IntegratorError;
};

class SeedFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotInSPlus : public std::runtime_error {
public:
    explicit NotInSPlus(double a)
        : std::runtime_error("no crossing of 1 for a = " + std::to_string(a)), a_value(a) {}
    double a_value;
};

class ProbeOutOfRange : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class WindowTooShort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Outcome of one named verification check; cmd_verify aggregates these.
struct CheckReport {
    std::string name;
    bool passed = false;
    std::string detail;
    std::vector<std::pair<std::string, double>> values;
};

}  // namespace wuyang
