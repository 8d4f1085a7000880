#include <doctest.h>

#include <support/generators.hpp>

#include <collapse/triangular/triangular.hpp>

using namespace collapse;

namespace {

std::vector<double> r_grid() {
    std::vector<double> g;
    for (int k = 1; k <= 99; ++k) g.push_back(k / 100.0);
    return g;
}

Eigen::VectorXd stack(const VecD& a, const VecD& b) {
    const int d = int(a.size());
    Eigen::VectorXd v(2 * d);
    for (int k = 0; k < d; ++k) {
        v[k] = a[k];
        v[d + k] = b[k];
    }
    return v;
}

}  // namespace

TEST_CASE("collision matrices: kernels") {
    const double r = 0.3;
    VecD omega{0.6, 0.8, 0.0};
    auto a = collision_matrix(CollisionKind::a, omega, r);
    VecD t{-0.8, 0.6, 0.0};
    VecD w2{0.1, -0.2, 0.3};
    Eigen::VectorXd x = stack(2.0 * t, w2);
    CHECK((a.m * x - x).norm() < 1e-15);

    auto c = collision_matrix(CollisionKind::c, omega, r);
    Eigen::VectorXd same = stack(w2, w2);
    CHECK((c.m * same - same).norm() < 1e-15);

    CHECK_THROWS_AS(collision_matrix(CollisionKind::b, VecD{1.0, 0.1}, r), InvalidArgument);
}

TEST_CASE("collision matrices agree with the engine in the particle-0 frame") {
    std::mt19937_64 g(23);
    const std::array<std::pair<CollisionKind, Pair>, 3> kinds{
        {{CollisionKind::a, Pair::p01}, {CollisionKind::b, Pair::p02}, {CollisionKind::c, Pair::p12}}};
    for (int n = 0; n < 300; ++n) {
        const int dim = 2 + n % 3;
        const double r = testsupport::uniform(g, 0.01, 0.99);
        auto [kind, pair] = kinds[n % 3];
        auto s = testsupport::random_contact_state(g, dim, pair);
        auto [i, j] = pair_particles(pair);
        VecD omega = (s.x[j] - s.x[i]) / norm(s.x[j] - s.x[i]);
        auto t = apply_collision(s, pair, Restitution(r));
        Eigen::VectorXd before = stack(s.v[1] - s.v[0], s.v[2] - s.v[0]);
        Eigen::VectorXd after = stack(t.v[1] - t.v[0], t.v[2] - t.v[0]);
        auto m = collision_matrix(kind, omega, r);
        CHECK((m.m * before - after).norm() <= 1e-12 * (1.0 + before.norm()));
    }
}

TEST_CASE("restricted matrix: closed form equals the projected product on a 99-point grid") {
    double worst = 0.0;
    for (double r : r_grid()) {
        Eigen::Matrix4d numeric = restrict_to_plane(limiting_matrix(r, 2), 2);
        worst = std::max(worst, (numeric - restricted_matrix(r).m).cwiseAbs().maxCoeff());
        Eigen::Matrix4d numeric3 = restrict_to_plane(limiting_matrix(r, 3), 3);
        worst = std::max(worst, (numeric3 - restricted_matrix(r).m).cwiseAbs().maxCoeff());
    }
    CHECK(worst <= 1e-12);
    CHECK(restricted_matrix(0.5).m(1, 1) == doctest::Approx(0.4375).epsilon(1e-15));
}

TEST_CASE("limiting matrix is the identity on the orthogonal complement") {
    const double r = 0.37;
    auto full = limiting_matrix(r, 3);
    Eigen::VectorXd e3 = Eigen::VectorXd::Zero(6);
    e3[2] = 1.3;
    e3[5] = -0.4;
    CHECK((full * e3 - e3).norm() <= 1e-13);
}

TEST_CASE("restricted matrix fixes (0,1,0,1)") {
    for (double r : r_grid()) {
        Eigen::Vector4d v(0, 1, 0, 1);
        CHECK((restricted_matrix(r).m * v - v).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("characteristic polynomial") {
    CHECK(characteristic_polynomial(0.2).q[2] == doctest::Approx(0.008).epsilon(1e-15));
    for (double r : r_grid()) {
        auto p = characteristic_polynomial(r);
        auto numeric = testsupport::characteristic_coefficients(restricted_matrix(r).m);
        for (int k = 0; k < 5; ++k) CHECK(std::fabs(numeric[k] - p.chi[k]) <= 1e-10);
        double chi1 = 0.0;
        for (double c : p.chi) chi1 += c;
        CHECK(std::fabs(chi1) <= 1e-14);
        // a1(1/r) = a2(r)/r^3
        auto inv = characteristic_polynomial(1.0 / r);
        CHECK(std::fabs(inv.q[1] - p.q[0] / (r * r * r)) <= 1e-12 * std::max(1.0, std::fabs(inv.q[1])));
        CHECK(q_derivative_minimum(r) > 0.0);
    }
}

TEST_CASE("spectrum: bounds, bracket and Viete on the grid") {
    for (double r : r_grid()) {
        auto s = spectrum(r);
        INFO("r=" << r);
        CHECK(s.bounds_ok());
        CHECK(s.viete_residual <= 1e-12);
        CHECK(std::fabs(s.q_at_lambda0) <= 1e-12);
        CHECK(std::fabs(std::norm(s.lambda_plus) - r * r * r / std::fabs(s.lambda0)) <= 1e-12);
        // product of eigenvalues (with lambda = 1) equals the determinant
        const double det = restricted_matrix(r).m.determinant();
        CHECK(std::fabs(s.lambda0 * std::norm(s.lambda_plus) - det) <= 1e-10);
        // eigen-solver cross-check
        Eigen::EigenSolver<Eigen::Matrix4d> es(restricted_matrix(r).m);
        double best = 1e300;
        for (int k = 0; k < 4; ++k) best = std::min(best, std::abs(es.eigenvalues()[k] - s.lambda0));
        CHECK(best <= 1e-10);
    }
    CHECK(q_value(-0.5, 0.5) < 0.0);
    CHECK(q_value(-0.125, 0.5) > 0.0);
    auto h = spectrum(0.5);
    CHECK(h.lambda0 > -0.5);
    CHECK(h.lambda0 < -0.125);
    CHECK(spectrum(0.999).bounds_ok());
}

TEST_CASE("cone membership") {
    auto a = cone_membership(-1, 0, -1, 1, 0.1);
    CHECK(a.in_c1);
    CHECK(a.in_c2);
    CHECK_FALSE(cone_membership(0, 0, -1, 1, 0.1).in_c1);
    auto b = cone_membership(-1, 1, -1, 0, 0.1);
    CHECK(b.in_c1);
    CHECK_FALSE(b.in_c2);
}

TEST_CASE("cone exit iteration") {
    const double r = 0.05;
    auto rep = iterate_cone_exit({-1.0, 0.0, -1.0, 1.0}, r, 500);
    CHECK(rep.started_in_c2);
    CHECK(rep.exit_index.has_value());
    REQUIRE(rep.fitted_ratio);
    const double mod = std::abs(spectrum(r).lambda_plus);
    CHECK(std::fabs(*rep.fitted_ratio - mod) <= 0.05 * mod);

    auto fixed = iterate_cone_exit({0.0, 1.0, 0.0, 1.0}, r, 50);
    CHECK_FALSE(fixed.started_in_c2);
    CHECK_FALSE(fixed.exit_index.has_value());
    for (const auto& p : fixed.orbit) {
        CHECK(std::fabs(p[1] - 1.0) <= 1e-12);
        CHECK(std::fabs(p[0]) <= 1e-12);
    }
}

TEST_CASE("order sign identity") {
    std::mt19937_64 g(29);
    for (int n = 0; n < 1000; ++n) {
        auto c = testsupport::random_near_equilateral_config(g, 2 + n % 3);
        const double r = testsupport::uniform(g, 0.01, 0.99);
        auto ev = order_sign_identity(c, Restitution(r));
        CHECK(std::fabs(ev.lhs - ev.rhs) <= 1e-12);
        CHECK(ev.eta1_prime > 0.0);
        auto step = apply_map(c, Restitution(r));
        CHECK(std::fabs(ev.eta1_prime - step.eta1_post) <= 1e-12);
    }
    std::mt19937_64 h(30);
    auto far = testsupport::random_domain_config(h, 2);
    while (std::fabs(dot(far.omega1, far.omega2) - 0.5) <= 0.1) far = testsupport::random_domain_config(h, 2);
    CHECK_THROWS_AS(order_sign_identity(far, Restitution(0.5)), MapDomainError);
}

TEST_CASE("order sign identity: purely normal near-equilateral configuration") {
    RelativeConfig c;
    c.dim = 2;
    c.omega1 = VecD{1.0, 0.0};
    c.omega2 = VecD{0.5, std::sqrt(3.0) / 2};
    c.gap = 0.05;
    c.w1 = 0.2 * c.omega1;
    c.w2 = -0.8 * c.omega2;
    const double r = 0.3;
    auto ev = order_sign_identity(c, Restitution(r));
    auto step = apply_map(c, Restitution(r));
    const double zeta = zk_parameter(c).zeta;
    const double term = (0.2 + step.tau * 0.04) / (1 + step.output.gap) +
                        (1 + r) / 2 * (1 + c.gap) * std::sqrt(1 - zeta) * 0.8 * step.cos_angle_post;
    CHECK(ev.eta1_prime == doctest::Approx(term).epsilon(1e-12));
    CHECK(ev.eta1_prime > 0.0);
}
