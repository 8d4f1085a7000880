#pragma once

#include <array>
#include <string>
#include <vector>

namespace collapse {

// Constants of the explicit nearly-linear collapse construction.
struct ZkConstruction {
    double r = 0.0;
    double cos_theta0 = 0.0;
    double delta_theta = 0.0;

    double alpha0 = 0.0;
    double phi_minus = 0.0;
    double phi_plus = 0.0;
    double delta1 = 0.0, delta2 = 0.0, delta3 = 0.0, delta4 = 0.0, delta5 = 0.0;
    double h4 = 0.0, h5 = 0.0;
    double C_eta = 0.0;
    double V0 = 0.0, V1 = 0.0;
    double delta_x = 0.0, delta_y = 0.0;
    double x0_bound = 0.0;
    double dtheta_bound = 0.0;
    double eta_bar = 0.0;
    double zeta_bar = 0.0;
    // the four constant entries of the initial-gap bound
    std::array<double, 4> d_bar_candidates{};

    // min(d_bar_candidates, zeta_bar * eta_c0^2 / (2 V1))
    double d_bar(double minus_eta_c0) const;
};

// 9 - 4 sqrt(5)
double stability_critical_r();

// Throws NoConstructionError naming the violated inequality.
ZkConstruction build_construction(double r, double cos_theta0, double delta_theta, double V0 = 1.0);

// Names of the invariants that fail (empty when the construction is sound).
std::vector<std::string> audit_construction(const ZkConstruction& zk);

}  // namespace collapse
