#ifndef DUALAVG_PROJECTIONS_HPP
#define DUALAVG_PROJECTIONS_HPP

#include "dualavg/vec.hpp"

namespace dualavg {

/// Closed convex feasible domain with a Euclidean projection operator.
struct FeasibleSet {
    enum class Kind { whole_space, l2_ball, box };

    Kind kind = Kind::whole_space;
    double radius = 0.0;  // l2_ball only
    Vec lower, upper;     // box only, elementwise lower <= upper

    static FeasibleSet whole_space();
    static FeasibleSet l2_ball(double radius);
    static FeasibleSet box(Vec lower, Vec upper);
};

/// Euclidean projection of v onto the set. Idempotent; returns v unchanged
/// when v is already feasible (including points exactly on the ball boundary).
Vec project(const FeasibleSet& set, const Vec& v);

/// Membership test: Euclidean tolerance for the ball, per-coordinate for the box.
bool contains(const FeasibleSet& set, const Vec& v, double tol);

}  // namespace dualavg

#endif
