#include <doctest.h>

#include <support/generators.hpp>

#include <collapse/nearlinear/certificate.hpp>
#include <collapse/nearlinear/sampler.hpp>
#include <collapse/nearlinear/thresholds.hpp>

#include <algorithm>

using namespace collapse;

namespace {

// Re-derives every line of the initial-datum description from raw positions and velocities.
std::vector<std::string> check_initial_datum(const SystemState& s, const ZkConstruction& zk) {
    std::vector<std::string> bad;
    auto need = [&](bool ok, const char* what) {
        if (!ok) bad.emplace_back(what);
    };
    VecD rs = s.x[1] - s.x[0], rc = s.x[2] - s.x[0];
    VecD ws = s.v[1] - s.v[0], wc = s.v[2] - s.v[0];
    const double ds = norm(rs), dc = norm(rc);
    VecD os = rs / ds, oc = rc / dc;
    const double eta_s = dot(ws, os), eta_c = dot(wc, oc);
    const double gap = dc - 1.0;
    need(std::fabs(ds - 1.0) <= 1e-12, "0-1 in contact");
    need(eta_s > 0.0, "0-1 post-collisional");
    need(eta_c < 0.0 && -eta_c <= zk.eta_bar, "0 < -eta_c <= eta_bar");
    need(std::fabs(eta_s / -eta_c - zk.phi_minus) <= zk.x0_bound, "|eta_s/(-eta_c) - phi-| <= x0");
    need(gap > 0.0 && gap <= zk.d_bar(-eta_c), "0 < gap <= d_bar");
    const double lo = zk.V0 + (zk.V1 - zk.V0) / 3.0, hi = zk.V1 - (zk.V1 - zk.V0) / 3.0;
    need(norm2(wc) >= lo - 1e-12 && norm2(wc) <= hi + 1e-12, "|W_c|^2 in the middle third");
    need(norm2(ws) >= lo - 1e-12 && norm2(ws) <= hi + 1e-12, "|W_s|^2 in the middle third");
    need(std::fabs(dot(os, oc) - zk.cos_theta0) <= 1e-14, "omega_c.omega_s = cos theta0");
    return bad;
}

}  // namespace

TEST_CASE("thresholds: closed forms and critical restitutions") {
    CHECK(critical_existence_restitution() == doctest::Approx(7.0 - 4.0 * std::sqrt(3.0)).epsilon(1e-12));
    CHECK(critical_stability_restitution() == doctest::Approx(9.0 - 4.0 * std::sqrt(5.0)).epsilon(1e-12));
    CHECK(std::fabs(critical_existence_restitution() - 0.07179677) < 1e-8);
    CHECK(std::fabs(critical_stability_restitution() - 0.05572809) < 1e-8);
    CHECK(existence_threshold(1e-12) < 1e-5);
    CHECK(stability_threshold(1e-12) < 1e-3);
    CHECK(existence_threshold(0.25) == doctest::Approx(4.0 * 0.5 / 1.25));
}

TEST_CASE("stability threshold increases on (0,1)") {
    double prev = stability_threshold(1e-3);
    for (int k = 2; k <= 1000; ++k) {
        double cur = stability_threshold(k * 1e-3 * 0.999);
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("limit_matrix") {
    auto c = limit_matrix(0.5, -0.1);
    CHECK(c.complex_branch);
    CHECK(std::abs(c.eigenvalues[0]) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(c.spectral_radius == doctest::Approx(std::sqrt(0.5)));

    auto re = limit_matrix(0.01, -1.0);
    CHECK_FALSE(re.complex_branch);
    CHECK(re.spectral_radius <= std::fabs(re.trace()) + 1e-15);
    CHECK(std::fabs(re.trace()) == doctest::Approx(0.505));

    for (double r : {0.01, 0.2, 0.5, 0.9})
        for (double cb : {-1.0, -0.6, -0.1}) {
            auto m = limit_matrix(r, cb);
            CHECK(std::fabs(m.det() - r) <= 1e-14);
            Eigen::Matrix2cd a;
            a << m.a[0][0], m.a[0][1], m.a[1][0], m.a[1][1];
            for (auto lambda : m.eigenvalues) {
                // eigenvector of [[0,-r],[1,t]]: (-r, lambda)
                Eigen::Vector2cd v(-r, lambda);
                CHECK((a * v - lambda * v).norm() <= 1e-12);
            }
        }
}

TEST_CASE("homography fixed points") {
    const double r = 0.02, alpha0 = 1.02 / 2 * 0.85;
    auto [pm, pp] = homography_fixed_points(alpha0, r);
    CHECK(std::fabs(pm * pp - r) <= 1e-14);
    CHECK(std::fabs(homography(pm, alpha0, r) - pm) <= 1e-13);
    CHECK(std::fabs(homography(pp, alpha0, r) - pp) <= 1e-13);
    // |F1'(phi-)| = r/(alpha0-phi-)^2 < 1 < |F1'(phi+)|
    CHECK(r / ((alpha0 - pm) * (alpha0 - pm)) < 1.0);
    CHECK(r / ((alpha0 - pp) * (alpha0 - pp)) > 1.0);

    // bisection oracle on F1(phi) - phi over (0, alpha0/2)
    double lo = 0.0, hi = alpha0 / 2;
    for (int k = 0; k < 200; ++k) {
        double mid = 0.5 * (lo + hi);
        ((homography(mid, alpha0, r) - mid) > 0 ? lo : hi) = mid;
    }
    CHECK(std::fabs(0.5 * (lo + hi) - pm) <= 1e-14);

    CHECK_THROWS_AS(homography_fixed_points(0.255, 0.02), NoConstructionError);
}

TEST_CASE("build_construction: invariants at the reference point") {
    auto zk = build_construction(0.02, -0.85, 0.05);
    CHECK(audit_construction(zk).empty());
    CHECK(zk.phi_minus > 0.0);
    CHECK(zk.phi_minus < zk.alpha0 / 2);
    CHECK(std::fabs(zk.V1 / zk.V0 - (1 - zk.h5 / 2) / (1 - zk.h5)) <= 1e-12);
    // closed-form delta4, delta5 satisfy their implicit equations
    const double gap = zk.alpha0 - zk.phi_minus;
    CHECK(std::fabs(0.02 / std::pow(gap - zk.delta4, 2) - (1 - zk.h4)) <= 1e-12);
    CHECK(std::fabs(zk.phi_minus / std::pow(gap - zk.delta5, 2) - (1 - zk.h5)) <= 1e-12);
}

TEST_CASE("build_construction: inadmissible inputs name the inequality") {
    // alpha0^2 < 4r at cos(theta0) = -0.5, r = 0.02
    try {
        build_construction(0.02, -0.5, 0.05);
        FAIL("expected NoConstructionError");
    } catch (const NoConstructionError& e) {
        CHECK(std::string(e.what()).find("-cos(theta0)") != std::string::npos);
    }
    try {
        build_construction(0.5, -0.9, 0.05);
        FAIL("expected NoConstructionError");
    } catch (const NoConstructionError& e) {
        CHECK(std::string(e.what()).find("9-4*sqrt(5)") != std::string::npos);
    }
    CHECK_THROWS_AS(build_construction(0.02, -0.9, 0.0), NoConstructionError);
}

TEST_CASE("build_construction: boundary probe") {
    const double r = stability_critical_r() * (1 - 1e-6);
    const double m = stability_threshold(r) + 1e-9;  // just on the admissible side
    REQUIRE(m <= 1.0);
    auto zk = build_construction(r, -m, 0.05);
    CHECK(audit_construction(zk).empty());
    CHECK(zk.delta_x < 1e-3);
    CHECK_THROWS_AS(build_construction(r, -(stability_threshold(r) - 1e-9), 0.05), NoConstructionError);
}

TEST_CASE("build_construction: 20x20 admissible grid") {
    int built = 0;
    for (int i = 1; i <= 20; ++i) {
        const double r = stability_critical_r() * i / 21.0;
        for (int j = 1; j <= 20; ++j) {
            const double m = j / 20.0;
            if (!(m > stability_threshold(r))) {
                CHECK_THROWS_AS(build_construction(r, -m, 0.05), NoConstructionError);
                continue;
            }
            auto zk = build_construction(r, -m, 0.05);
            auto bad = audit_construction(zk);
            INFO("r=" << r << " -cos=" << m);
            CHECK(bad.empty());
            ++built;
        }
    }
    CHECK(built > 100);
}

TEST_CASE("sampler: independent checker, dims 2 and 3, determinism") {
    auto zk = build_construction(0.02, -0.85, 0.05);
    for (int dim : {2, 3, 4})
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            auto s = sample_initial_configuration<double>(zk, seed, dim);
            auto bad = check_initial_datum(s, zk);
            INFO("dim=" << dim << " seed=" << seed << " first failure: " << (bad.empty() ? "" : bad[0]));
            CHECK(bad.empty());
        }
    auto a = sample_initial_configuration<double>(zk, 9, 3);
    auto b = sample_initial_configuration<double>(zk, 9, 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(a.x[i] == b.x[i]);
        CHECK(a.v[i] == b.v[i]);
    }
    auto c = sample_initial_configuration<double>(zk, 10, 3);
    CHECK_FALSE(a.v[2] == c.v[2]);

    auto h = sample_initial_configuration<HighPrecision>(zk, 9, 3);
    CHECK(std::fabs(to_double(h.v[2][0]) - a.v[2][0]) < 1e-14);
}

TEST_CASE("verify_recursion: clean certificate on a constructed run") {
    auto zk = build_construction(0.02, -0.85, 0.05);
    auto s = sample_initial_configuration<HighPrecision>(zk, 3);
    RunLimits lim;
    lim.max_collisions = 2000;
    lim.collapse.min_events = 500;
    lim.record_trajectory = true;
    auto out = run(s, Restitution(0.02), lim);
    REQUIRE(out.events.size() >= 500);
    auto cert = verify_recursion(out, zk);
    CHECK(cert.flags.size() == out.events.size());
    CHECK_FALSE(cert.first_violation.has_value());
    CHECK(cert.final_angle_ok);
    CHECK(cert.clean());
    for (double x : cert.x) CHECK(std::fabs(x) <= zk.delta_x);
}

TEST_CASE("verify_recursion: perturbed datum fails Cnd2 at index 0") {
    auto zk = build_construction(0.02, -0.85, 0.05);
    auto s = sample_initial_configuration<HighPrecision>(zk, 4);
    // rescale the normal part of W_c so that eta_c,0 = -2 eta_bar
    BasicVec<HighPrecision> oc = s.x[2] / norm(s.x[2]);
    HighPrecision eta = dot(s.v[2], oc);
    s.v[2].add_scaled(HighPrecision(-2 * zk.eta_bar) - eta, oc);
    RunLimits lim;
    lim.max_collisions = 50;
    lim.record_trajectory = true;
    auto out = run(s, Restitution(0.02), lim);
    auto cert = verify_recursion(out, zk);
    REQUIRE(cert.first_violation);
    CHECK(cert.first_violation->first == 0);
    CHECK(cert.first_violation->second == Condition::cnd2);
    CHECK(condition_label(Condition::cnd2) == "Cnd2");
}

TEST_CASE("verify_recursion needs a recorded trajectory") {
    auto zk = build_construction(0.02, -0.85, 0.05);
    RunLimits lim;
    lim.max_collisions = 4;
    auto out = run(sample_initial_configuration<double>(zk, 1), Restitution(0.02), lim);
    CHECK_THROWS_AS(verify_recursion(out, zk), PreconditionError);
}
