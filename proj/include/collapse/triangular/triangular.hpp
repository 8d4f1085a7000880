#pragma once

#include <collapse/core/types.hpp>

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <vector>

namespace collapse {

// a: pair 0-1, b: pair 0-2, c: pair 1-2; acting on stacked (W1, W2).
enum class CollisionKind { a, b, c };

struct CollisionMatrix {
    CollisionKind kind;
    VecD omega;
    Eigen::MatrixXd m;  // 2 dim x 2 dim
};

CollisionMatrix collision_matrix(CollisionKind kind, const VecD& omega, double r);

// omega1 on the first axis, omega2 at angle pi/3 in the first coordinate
// plane, omega3 = omega2 - omega1. Perpendiculars are counter-clockwise
// rotations within that plane.
struct EquilateralFrame {
    VecD omega1, omega2, omega3;
    VecD omega1_perp, omega2_perp;
};

EquilateralFrame equilateral_frame(int dim);

// A_c(omega3) A_b(omega2) A_a(omega1) at the equilateral frame.
Eigen::MatrixXd limiting_matrix(double r, int dim);

struct RestrictedLimitMatrix {
    double r = 0.0;
    Eigen::Matrix4d m;  // basis (omega1,0), (omega1perp,0), (0,omega2), (0,omega2perp)
};

// Closed-form 4x4 entries.
RestrictedLimitMatrix restricted_matrix(double r);

// Coordinates of a full 2dim x 2dim matrix in the restricted basis.
Eigen::Matrix4d restrict_to_plane(const Eigen::MatrixXd& full, int dim);

struct CharacteristicPolynomial {
    std::array<double, 5> chi{};  // (lambda-1)Q(lambda): lambda^4 ... lambda^0
    std::array<double, 3> q{};    // monic Q: lambda^2, lambda^1, lambda^0 coefficients
};

CharacteristicPolynomial characteristic_polynomial(double r);
double q_value(double lambda, double r);
// Q'(lambda_c) at the critical point lambda_c = -q2/3 of Q'.
double q_derivative_minimum(double r);

struct SpectrumReport {
    double r = 0.0;
    double lambda0 = 0.0;
    std::complex<double> lambda_plus, lambda_minus;
    bool real_bounds_ok = false;     // -1 < -r < lambda0 < -r^3 < 0
    bool modulus_bounds_ok = false;  // |lambda0| < |lambda+-| < 1
    double viete_residual = 0.0;     // |(-lambda0)|lambda+-|^2 - r^3|
    double q_at_lambda0 = 0.0;

    bool bounds_ok() const { return real_bounds_ok && modulus_bounds_ok; }
};

SpectrumReport spectrum(double r);

struct ConeFlags {
    bool in_c1 = false;
    bool in_c2 = false;
};

ConeFlags cone_membership(double x, double y, double z, double t, double r);

struct ConeExitReport {
    std::vector<std::array<double, 4>> orbit;
    bool started_in_c2 = false;
    std::optional<long> exit_index;
    std::vector<double> distance_to_fixed_line;  // distance to span(0,1,0,1)
    std::optional<double> fitted_ratio;          // per-iteration contraction of that distance
};

ConeExitReport iterate_cone_exit(const std::array<double, 4>& x0, double r, long max_iter);

struct OrderSignEvidence {
    double lhs = 0.0;  // (1+d) eta2 + tau |W2|^2
    double rhs = 0.0;  // (1+d) sqrt(1-zeta) eta2
    double eta1_prime = 0.0;
};

OrderSignEvidence order_sign_identity(const RelativeConfig& cfg, const Restitution& r);

}  // namespace collapse
