#pragma once

#include <span>
#include <vector>

#include "hodokit/errors.hpp"

namespace hodokit {

struct Point2 {
    double x;
    double y;
};

struct CircleFit {
    Point2 center;
    double radius;
    double rms_residual;  ///< RMS of |p - center| - radius
};

/// Algebraic least-squares circle fit (Kasa): minimizes the sum of
/// (|p - center|^2 - radius^2)^2. Needs >= 3 non-collinear points.
CircleFit fit_circle(std::span<const Point2> points);

CircleFit fit_circle(const std::vector<Point2>& points);

}  // namespace hodokit
