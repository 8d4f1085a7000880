#include <collapse/nearlinear/thresholds.hpp>

#include <collapse/core/errors.hpp>

#include <cmath>
#include <functional>
#include <sstream>

namespace collapse {

double existence_threshold(double r) { return 4.0 * std::sqrt(r) / (1.0 + r); }

double stability_threshold(double r) {
    const double c = std::cbrt(r);
    return 2.0 * c * (1.0 + c) / (1.0 + r);
}

namespace {

// Both thresholds increase on (0,1) and start below 1.
double bisect_unit_crossing(const std::function<double(double)>& f) {
    double lo = 0.0, hi = 1.0;
    for (int k = 0; k < 200 && hi - lo > 1e-17; ++k) {
        double mid = 0.5 * (lo + hi);
        (f(mid) < 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double critical_existence_restitution() { return bisect_unit_crossing(existence_threshold); }
double critical_stability_restitution() { return bisect_unit_crossing(stability_threshold); }

LimitMatrix2 limit_matrix(double r, double cos_theta_bar) {
    LimitMatrix2 m;
    m.a = {{{0.0, -r}, {1.0, -(1.0 + r) / 2.0 * cos_theta_bar}}};
    const double tr = m.trace();
    const double disc = tr * tr - 4.0 * r;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        // stable pairing: larger-magnitude root first, partner from the product r
        const double big = tr >= 0.0 ? (tr + s) / 2.0 : (tr - s) / 2.0;
        const double small = big != 0.0 ? r / big : 0.0;
        m.eigenvalues = {std::complex<double>(big), std::complex<double>(small)};
        m.spectral_radius = std::max(std::fabs(big), std::fabs(small));
        m.complex_branch = false;
    } else {
        const double im = std::sqrt(-disc) / 2.0;
        m.eigenvalues = {std::complex<double>(tr / 2.0, im), std::complex<double>(tr / 2.0, -im)};
        m.spectral_radius = std::sqrt(r);
        m.complex_branch = true;
    }
    return m;
}

double homography(double phi, double alpha0, double r) { return r / (alpha0 - phi); }

std::pair<double, double> homography_fixed_points(double alpha0, double r) {
    const double disc = alpha0 * alpha0 - 4.0 * r;
    if (!(disc > 0.0)) {
        std::ostringstream os;
        os << "no construction: alpha0^2 > 4r fails (alpha0^2 = " << alpha0 * alpha0
           << ", 4r = " << 4.0 * r << ")";
        throw NoConstructionError(os.str());
    }
    const double s = std::sqrt(disc);
    const double plus = (alpha0 + s) / 2.0;
    return {r / plus, plus};
}

}  // namespace collapse
