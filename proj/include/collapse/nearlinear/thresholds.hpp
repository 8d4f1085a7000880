#pragma once

#include <array>
#include <complex>
#include <utility>

namespace collapse {

// Smallest -cos(theta) compatible with a nearly-linear collapse: 4 sqrt(r)/(1+r).
double existence_threshold(double r);
// Stability bound 2 r^(1/3) (1 + r^(1/3)) / (1 + r).
double stability_threshold(double r);

// Restitutions where each threshold reaches 1, found by bisection.
double critical_existence_restitution();
double critical_stability_restitution();

struct LimitMatrix2 {
    std::array<std::array<double, 2>, 2> a{};
    std::array<std::complex<double>, 2> eigenvalues{};
    double spectral_radius = 0.0;
    bool complex_branch = false;

    double det() const { return a[0][0] * a[1][1] - a[0][1] * a[1][0]; }
    double trace() const { return a[0][0] + a[1][1]; }
};

// A = [[0, -r], [1, -(1+r)/2 cos(theta_bar)]]
LimitMatrix2 limit_matrix(double r, double cos_theta_bar);

// F1(phi) = r / (alpha0 - phi)
double homography(double phi, double alpha0, double r);

// (phi-, phi+) = (alpha0 -+ sqrt(alpha0^2 - 4r)) / 2. Throws NoConstructionError when alpha0^2 <= 4r.
std::pair<double, double> homography_fixed_points(double alpha0, double r);

}  // namespace collapse
