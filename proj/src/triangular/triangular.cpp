#include <collapse/triangular/triangular.hpp>

#include <collapse/map/map.hpp>

#include <cmath>

namespace collapse {

namespace {

Eigen::MatrixXd outer(const VecD& w) {
    const int d = int(w.size());
    Eigen::MatrixXd p(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) p(i, j) = w[i] * w[j];
    return p;
}

Eigen::Vector4d as_eigen(const std::array<double, 4>& v) { return {v[0], v[1], v[2], v[3]}; }

std::array<double, 4> as_array(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }

}  // namespace

CollisionMatrix collision_matrix(CollisionKind kind, const VecD& omega, double r) {
    if (std::fabs(norm(omega) - 1.0) > tolerances.unit)
        throw InvalidArgument("collision matrix needs a unit omega");
    const int d = int(omega.size());
    const Eigen::MatrixXd P = outer(omega);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(d, d);
    const double h = (1.0 + r) / 2.0;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * d, 2 * d);
    switch (kind) {
        case CollisionKind::a:
            m.topLeftCorner(d, d) = I - (1.0 + r) * P;
            m.bottomLeftCorner(d, d) = -h * P;
            m.bottomRightCorner(d, d) = I;
            break;
        case CollisionKind::b:
            m.topLeftCorner(d, d) = I;
            m.topRightCorner(d, d) = -h * P;
            m.bottomRightCorner(d, d) = I - (1.0 + r) * P;
            break;
        case CollisionKind::c:
            m.topLeftCorner(d, d) = I - h * P;
            m.topRightCorner(d, d) = h * P;
            m.bottomLeftCorner(d, d) = h * P;
            m.bottomRightCorner(d, d) = I - h * P;
            break;
    }
    return {kind, omega, m};
}

EquilateralFrame equilateral_frame(int dim) {
    if (dim < 2) throw InvalidArgument("dimension must be at least 2");
    const double s = std::sqrt(3.0) / 2.0;
    EquilateralFrame f;
    f.omega1 = VecD::axis(dim, 0);
    f.omega2 = 0.5 * VecD::axis(dim, 0) + s * VecD::axis(dim, 1);
    f.omega3 = f.omega2 - f.omega1;
    f.omega1_perp = VecD::axis(dim, 1);
    f.omega2_perp = -s * VecD::axis(dim, 0) + 0.5 * VecD::axis(dim, 1);
    return f;
}

Eigen::MatrixXd limiting_matrix(double r, int dim) {
    const auto f = equilateral_frame(dim);
    return collision_matrix(CollisionKind::c, f.omega3, r).m * collision_matrix(CollisionKind::b, f.omega2, r).m *
           collision_matrix(CollisionKind::a, f.omega1, r).m;
}

RestrictedLimitMatrix restricted_matrix(double r) {
    const double s3 = std::sqrt(3.0);
    const double r2 = r * r, r3 = r2 * r;
    RestrictedLimitMatrix out;
    out.r = r;
    out.m << (-r3 + 5 * r2 - 59 * r - 1) / 64, s3 * (r + 1) / 8, (r2 - 4 * r - 5) / 16, -s3 * (r + 1) / 8,
        s3 * (r3 + 3 * r2 + 11 * r + 9) / 64, (5 - 3 * r) / 8, -s3 * (r2 + 4 * r + 3) / 16, (3 * r + 3) / 8,
        (-r3 + 17 * r2 + 13 * r - 5) / 64, s3 * (r + 1) / 8, (r2 - 16 * r - 1) / 16, -s3 * (r + 1) / 8,
        s3 * (-r3 + r2 + 13 * r + 11) / 64, (3 * r + 3) / 8, s3 * (r2 - 1) / 16, (5 - 3 * r) / 8;
    return out;
}

Eigen::Matrix4d restrict_to_plane(const Eigen::MatrixXd& full, int dim) {
    const auto f = equilateral_frame(dim);
    std::array<Eigen::VectorXd, 4> basis;
    for (auto& b : basis) b = Eigen::VectorXd::Zero(2 * dim);
    for (int k = 0; k < dim; ++k) {
        basis[0][k] = f.omega1[k];
        basis[1][k] = f.omega1_perp[k];
        basis[2][dim + k] = f.omega2[k];
        basis[3][dim + k] = f.omega2_perp[k];
    }
    Eigen::Matrix4d m;
    for (int j = 0; j < 4; ++j) {
        Eigen::VectorXd image = full * basis[j];
        for (int i = 0; i < 4; ++i) m(i, j) = basis[i].dot(image);
    }
    return m;
}

CharacteristicPolynomial characteristic_polynomial(double r) {
    const double r2 = r * r, r3 = r2 * r;
    CharacteristicPolynomial p;
    p.q = {(r3 - 9 * r2 + 171 * r - 11) / 64, (-11 * r3 + 171 * r2 - 9 * r + 1) / 64, r3};
    // (lambda - 1)(lambda^3 + q2 lambda^2 + q1 lambda + q0)
    p.chi = {1.0, p.q[0] - 1.0, p.q[1] - p.q[0], p.q[2] - p.q[1], -p.q[2]};
    return p;
}

double q_value(double lambda, double r) {
    const auto p = characteristic_polynomial(r);
    return ((lambda + p.q[0]) * lambda + p.q[1]) * lambda + p.q[2];
}

double q_derivative_minimum(double r) {
    const auto p = characteristic_polynomial(r);
    const double lc = -p.q[0] / 3.0;
    return 3 * lc * lc + 2 * p.q[0] * lc + p.q[1];
}

SpectrumReport spectrum(double r) {
    SpectrumReport rep;
    rep.r = r;
    const double r3 = r * r * r;
    double lo = -r, hi = -r3;  // Q(lo) < 0 < Q(hi)
    for (int k = 0; k < 200; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (q_value(mid, r) < 0.0 ? lo : hi) = mid;
    }
    const double l0 = 0.5 * (lo + hi);
    rep.lambda0 = l0;
    rep.q_at_lambda0 = q_value(l0, r);

    const auto p = characteristic_polynomial(r);
    const double b = p.q[0] + l0;      // deflated: lambda^2 + b lambda + c
    const double c = p.q[1] + l0 * b;
    const double disc = b * b - 4.0 * c;
    if (disc < 0.0) {
        rep.lambda_plus = {-b / 2.0, std::sqrt(-disc) / 2.0};
        rep.lambda_minus = std::conj(rep.lambda_plus);
    } else {
        const double s = std::sqrt(disc);
        rep.lambda_plus = {(-b + s) / 2.0, 0.0};
        rep.lambda_minus = {(-b - s) / 2.0, 0.0};
    }
    const double mod2 = std::norm(rep.lambda_plus);
    rep.viete_residual = std::fabs(-l0 * mod2 - r3);
    rep.real_bounds_ok = -1.0 < -r && -r < l0 && l0 < -r3 && -r3 < 0.0;
    const double mp = std::abs(rep.lambda_plus), mm = std::abs(rep.lambda_minus);
    rep.modulus_bounds_ok = disc < 0.0 && std::fabs(l0) < mp && std::fabs(l0) < mm && mp < 1.0 && mm < 1.0;
    return rep;
}

ConeFlags cone_membership(double x, double y, double z, double t, double r) {
    ConeFlags f;
    f.in_c1 = x < 0.0 && z < (1.0 + r) / 4.0 * x;
    f.in_c2 = f.in_c1 && y < t;
    return f;
}

ConeExitReport iterate_cone_exit(const std::array<double, 4>& x0, double r, long max_iter) {
    const Eigen::Matrix4d m = restricted_matrix(r).m;
    const Eigen::Vector4d u = Eigen::Vector4d(0, 1, 0, 1) / std::sqrt(2.0);
    ConeExitReport rep;
    Eigen::Vector4d x = as_eigen(x0);
    auto record = [&](const Eigen::Vector4d& v) {
        rep.orbit.push_back(as_array(v));
        rep.distance_to_fixed_line.push_back((v - u.dot(v) * u).norm());
    };
    record(x);
    rep.started_in_c2 = cone_membership(x[0], x[1], x[2], x[3], r).in_c2;
    for (long n = 1; n <= max_iter; ++n) {
        x = m * x;
        record(x);
        if (rep.started_in_c2 && !rep.exit_index && !cone_membership(x[0], x[1], x[2], x[3], r).in_c2)
            rep.exit_index = n;
    }

    // fit over the resolvable part of the decay, trailing half
    const double floor = 1e-12 * std::max(1.0, as_eigen(x0).norm());
    std::vector<double> logs;
    for (double d : rep.distance_to_fixed_line) {
        if (d <= floor) break;
        logs.push_back(std::log(d));
    }
    if (logs.size() >= 8) {
        const std::size_t from = logs.size() / 2;
        const std::size_t n = logs.size() - from;
        double mx = 0, my = 0;
        for (std::size_t k = 0; k < n; ++k) {
            mx += double(k);
            my += logs[from + k];
        }
        mx /= double(n);
        my /= double(n);
        double sxy = 0, sxx = 0;
        for (std::size_t k = 0; k < n; ++k) {
            sxy += (double(k) - mx) * (logs[from + k] - my);
            sxx += (double(k) - mx) * (double(k) - mx);
        }
        rep.fitted_ratio = std::exp(sxy / sxx);
    }
    return rep;
}

OrderSignEvidence order_sign_identity(const RelativeConfig& cfg, const Restitution& r) {
    if (std::fabs(dot(cfg.omega1, cfg.omega2) - 0.5) > 0.1)
        throw MapDomainError("order sign identity needs omega1.omega2 within 0.1 of 1/2");
    const MapStep step = apply_map(cfg, r);  // throws MapDomainError outside the domain
    const double eta1 = dot(cfg.w1, cfg.omega1);
    const double eta2 = dot(cfg.w2, cfg.omega2);
    const double one_d = 1.0 + cfg.gap;
    const double zeta = zk_parameter(cfg).zeta;
    const double root = one_d * std::sqrt(1.0 - zeta) * eta2;

    OrderSignEvidence ev;
    ev.lhs = one_d * eta2 + step.tau * norm2(cfg.w2);
    ev.rhs = root;
    const double one_dp = 1.0 + step.output.gap;
    ev.eta1_prime = eta1 / one_dp + step.tau * norm2(cfg.w1) / one_dp +
                    (1.0 + r.value()) / 2.0 * (-root) * step.cos_angle_post;
    return ev;
}

}  // namespace collapse
