#include "dualavg/schedules.hpp"

namespace dualavg {

std::string to_string(ScheduleKind kind) {
    return kind == ScheduleKind::linear ? "linear" : "constant";
}

ScheduleKind schedule_from_string(const std::string& name) {
    if (name == "linear") return ScheduleKind::linear;
    if (name == "constant") return ScheduleKind::constant;
    throw std::invalid_argument("unknown schedule kind: " + name);
}

}  // namespace dualavg
