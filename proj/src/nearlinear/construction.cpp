#include <collapse/nearlinear/construction.hpp>

#include <collapse/core/errors.hpp>
#include <collapse/nearlinear/thresholds.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace collapse {

double stability_critical_r() { return 9.0 - 4.0 * std::sqrt(5.0); }

double ZkConstruction::d_bar(double minus_eta_c0) const {
    double m = *std::min_element(d_bar_candidates.begin(), d_bar_candidates.end());
    return std::min(m, zeta_bar * minus_eta_c0 * minus_eta_c0 / (2.0 * V1));
}

ZkConstruction build_construction(double r, double cos_theta0, double delta_theta, double V0) {
    std::ostringstream why;
    if (!(r > 0.0 && r < stability_critical_r())) {
        why << "no construction: requires 0 < r < 9-4*sqrt(5) = " << stability_critical_r()
            << ", got r = " << r;
        throw NoConstructionError(why.str());
    }
    const double m = -cos_theta0;
    const double thr = stability_threshold(r);
    if (!(m > thr && m <= 1.0)) {
        why << "no construction: requires 2r^(1/3)(1+r^(1/3))/(1+r) < -cos(theta0) <= 1, i.e. " << thr
            << " < -cos(theta0) <= 1, got -cos(theta0) = " << m;
        throw NoConstructionError(why.str());
    }
    if (!(delta_theta > 0.0)) throw NoConstructionError("no construction: requires delta_theta > 0");
    if (!(V0 > 0.0)) throw NoConstructionError("no construction: requires V0 > 0");

    ZkConstruction z;
    z.r = r;
    z.cos_theta0 = cos_theta0;
    z.delta_theta = delta_theta;
    z.alpha0 = (1.0 + r) / 2.0 * m;
    std::tie(z.phi_minus, z.phi_plus) = homography_fixed_points(z.alpha0, r);

    const double a = z.alpha0;
    const double pm = z.phi_minus;
    const double gap = a - pm;  // equals phi_plus
    z.delta1 = a / 2.0 - pm;
    z.delta2 = gap / 2.0;
    z.delta3 = (1.0 - gap) / 2.0;
    z.C_eta = 1.0 - z.delta3;
    z.h4 = 0.5 * (1.0 - r / (gap * gap));
    // r / (gap - delta4)^2 = 1 - h4
    z.delta4 = gap - std::sqrt(r / (1.0 - z.h4));
    z.h5 = 0.5 * (1.0 - pm / (gap * gap));
    z.delta5 = gap - std::sqrt(pm / (1.0 - z.h5));
    z.V0 = V0;
    z.V1 = V0 * (1.0 - z.h5 / 2.0) / (1.0 - z.h5);

    z.delta_x = std::min({z.delta1, z.delta2, z.delta3, z.delta4, z.delta5});
    z.delta_y = z.delta_x;
    const double V1 = z.V1;
    z.x0_bound = std::min((1.0 - z.h4) * z.delta_x, (V0 / V1) * z.delta2 * z.delta2 * z.h5 / 12.0);
    z.dtheta_bound = std::min({std::fabs(cos_theta0) / 2.0, z.h4 * z.delta_x / 8.0, delta_theta});

    const double sV1 = std::sqrt(V1);
    const double s2 = std::sqrt(2.0) - 1.0;
    z.eta_bar = std::min({1.0, s2 / 16.0 * V0 / sV1, V0 / (33.0 * sV1) * z.dtheta_bound,
                          (1.0 - z.C_eta) * (V1 - V0) / (12.0 * (sV1 + 2.0)),
                          V0 / sV1 *
                              (2.0 / (15.0 * a) + z.h4 * z.delta2 / 6.0 + z.h4 / (12.0 * a) + z.h4 / 24.0) *
                              z.delta_x});
    z.zeta_bar = std::min({2.0 * s2, V0 * z.h5 / (3.0 * V1 * (a + 8.0 * V1 / V0)) * z.delta2 * z.delta2,
                           (1.0 + 4.0 * z.delta2 + V0 / V1) * z.h4 * z.delta_x / 16.0});
    z.d_bar_candidates = {s2 / 4.0, z.dtheta_bound / 3.0, (1.0 + z.delta2 * z.h4) * z.delta_x / 5.0,
                          (1.0 + 2.0 * z.delta2) * z.h4 * z.delta_x / 4.0};
    return z;
}

std::vector<std::string> audit_construction(const ZkConstruction& z) {
    std::vector<std::string> bad;
    auto need = [&](bool ok, const char* what) {
        if (!ok) bad.emplace_back(what);
    };
    need(0.0 < z.phi_minus && z.phi_minus < z.alpha0 / 2.0 && z.alpha0 / 2.0 < z.phi_plus,
         "0 < phi- < alpha0/2 < phi+");
    need(std::fabs(z.phi_minus * z.phi_plus - z.r) <= 1e-14, "phi- * phi+ = r");
    need(z.C_eta > 0.0 && z.C_eta < 1.0, "C_eta in (0,1)");
    need(std::fabs(z.C_eta - (1.0 - z.delta3)) <= 1e-15, "C_eta = 1 - delta3");
    need(std::fabs(z.V1 / z.V0 - (1.0 - z.h5 / 2.0) / (1.0 - z.h5)) <= 1e-12, "V1/V0 ratio");
    need(z.delta1 > 0 && z.delta2 > 0 && z.delta3 > 0 && z.delta4 > 0 && z.delta5 > 0, "deltas positive");
    need(z.h4 > 0 && z.h5 > 0, "h4, h5 positive");
    need(z.delta_x > 0 && z.x0_bound > 0 && z.dtheta_bound > 0, "derived bounds positive");
    need(z.eta_bar > 0 && z.zeta_bar > 0, "eta_bar, zeta_bar positive");
    for (double c : z.d_bar_candidates) need(c > 0, "d_bar candidates positive");
    return bad;
}

}  // namespace collapse
