#ifndef DUALAVG_SCHEDULES_HPP
#define DUALAVG_SCHEDULES_HPP

#include <string>

#include "dualavg/vec.hpp"

namespace dualavg {

enum class ScheduleKind { linear, constant };

std::string to_string(ScheduleKind kind);
ScheduleKind schedule_from_string(const std::string& name);

/// Weight sequences a_t, gamma_t with running sums A_t, Gamma_t.
/// linear: a_t = gamma_t = t; constant: a_t = gamma_t = 1.
/// A fresh accumulator sits at t = 0 with all weights and sums zero;
/// weights exist only after the first advance().
struct ScheduleAccumulator {
    ScheduleKind kind = ScheduleKind::linear;
    long t = 0;
    double a = 0.0;
    double gamma = 0.0;
    double A = 0.0;
    double Gamma = 0.0;

    explicit ScheduleAccumulator(ScheduleKind k = ScheduleKind::linear) : kind(k) {}

    void advance() {
        ++t;
        double w = (kind == ScheduleKind::linear) ? static_cast<double>(t) : 1.0;
        a = w;
        gamma = w;
        A += a;
        Gamma += gamma;
    }

    // a_t / (mu * gamma_t); equals 1/mu for both built-in kinds.
    double step_size(double mu) const {
        require(t >= 1, "step_size: schedule not advanced (t = 0)");
        require(mu > 0.0, "step_size: mu must be positive");
        return a / (mu * gamma);
    }
};

}  // namespace dualavg

#endif
