#ifndef DUALAVG_VEC_HPP
#define DUALAVG_VEC_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace dualavg {

using Vec = std::vector<double>;

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline double dot(const Vec& a, const Vec& b) {
    require(a.size() == b.size(), "dot: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(const Vec& a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(norm_sq(a)); }

// y += alpha * x
inline void axpy(double alpha, const Vec& x, Vec& y) {
    require(x.size() == y.size(), "axpy: dimension mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline Vec scaled(const Vec& a, double alpha) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = alpha * a[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    require(a.size() == b.size(), "sub: dimension mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline double dist_sq(const Vec& a, const Vec& b) {
    require(a.size() == b.size(), "dist_sq: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline bool all_finite(const Vec& a) {
    for (double x : a)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace dualavg

#endif
