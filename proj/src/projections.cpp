#include "dualavg/projections.hpp"

#include <algorithm>

namespace dualavg {

FeasibleSet FeasibleSet::whole_space() { return FeasibleSet{}; }

FeasibleSet FeasibleSet::l2_ball(double radius) {
    require(radius > 0.0 && std::isfinite(radius), "l2_ball: radius must be positive");
    FeasibleSet s;
    s.kind = Kind::l2_ball;
    s.radius = radius;
    return s;
}

FeasibleSet FeasibleSet::box(Vec lower, Vec upper) {
    require(lower.size() == upper.size(), "box: bound dimension mismatch");
    require(all_finite(lower) && all_finite(upper), "box: bounds must be finite");
    for (std::size_t i = 0; i < lower.size(); ++i)
        require(lower[i] <= upper[i], "box: lower > upper at coordinate " + std::to_string(i));
    FeasibleSet s;
    s.kind = Kind::box;
    s.lower = std::move(lower);
    s.upper = std::move(upper);
    return s;
}

Vec project(const FeasibleSet& set, const Vec& v) {
    require(all_finite(v), "project: non-finite input");
    switch (set.kind) {
        case FeasibleSet::Kind::whole_space:
            return v;
        case FeasibleSet::Kind::l2_ball: {
            double n = norm(v);
            if (n <= set.radius) return v;
            Vec u = scaled(v, set.radius / n);
            // Rescaling can land a hair outside the ball; nudge until the
            // result is a fixed point so projection is exactly idempotent.
            for (int pass = 0; pass < 4 && norm(u) > set.radius; ++pass)
                u = scaled(u, set.radius / norm(u));
            return u;
        }
        case FeasibleSet::Kind::box: {
            require(v.size() == set.lower.size(), "project: dimension mismatch with box bounds");
            Vec u(v.size());
            for (std::size_t i = 0; i < v.size(); ++i)
                u[i] = std::clamp(v[i], set.lower[i], set.upper[i]);
            return u;
        }
    }
    throw std::logic_error("project: unknown set kind");
}

bool contains(const FeasibleSet& set, const Vec& v, double tol) {
    switch (set.kind) {
        case FeasibleSet::Kind::whole_space:
            return true;
        case FeasibleSet::Kind::l2_ball:
            return norm(v) <= set.radius + tol;
        case FeasibleSet::Kind::box: {
            if (v.size() != set.lower.size()) return false;
            for (std::size_t i = 0; i < v.size(); ++i)
                if (v[i] < set.lower[i] - tol || v[i] > set.upper[i] + tol) return false;
            return true;
        }
    }
    return false;
}

}  // namespace dualavg
