#include <doctest.h>

#include <support/generators.hpp>

#include <collapse/core/frame.hpp>

using namespace collapse;

TEST_CASE("decompose: parallel and orthogonal vectors") {
    VecD omega{0.6, 0.8};
    auto p = decompose(omega, omega);
    CHECK(p.eta == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(norm(p.w_perp) < 1e-15);

    VecD w{-0.8, 0.6};
    auto o = decompose(w, omega);
    CHECK(std::fabs(o.eta) < 1e-15);
    CHECK(norm(o.w_perp - w) < 1e-15);
}

TEST_CASE("decompose: reconstruction in dims 2..5") {
    std::mt19937_64 g(42);
    double worst = 0.0;
    for (int n = 0; n < 10000; ++n) {
        int dim = 2 + n % 4;
        VecD w = testsupport::gaussian(g, dim, 3.0);
        VecD omega = testsupport::unit(g, dim);
        auto d = decompose(w, omega);
        worst = std::max(worst, norm(d.eta * omega + d.w_perp - w));
        CHECK(std::fabs(dot(d.w_perp, omega)) < 1e-12);
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("decompose: seed 42 in dim 3 reconstructs to 1e-14") {
    std::mt19937_64 g(42);
    VecD w = testsupport::gaussian(g, 3);
    VecD omega = testsupport::unit(g, 3);
    auto d = decompose(w, omega);
    CHECK(norm(d.eta * omega + d.w_perp - w) < 1e-14);
}

TEST_CASE("decompose rejects non-unit omega") {
    CHECK_THROWS_AS(decompose(VecD{1.0, 0.0}, VecD{1.0, 1e-3}), InvalidArgument);
}

TEST_CASE("to_relative_frame: collinear state") {
    auto s = SystemState::at_rest(2);
    s.x[1] = VecD{1.0, 0.0};
    s.x[2] = VecD{2.5, 0.0};
    auto c = to_relative_frame(s, 0, 1, 2);
    CHECK(c.gap == doctest::Approx(1.5));
    CHECK(norm(c.omega1 - VecD{1.0, 0.0}) < 1e-15);
    CHECK(norm(c.omega2 - VecD{1.0, 0.0}) < 1e-15);
}

TEST_CASE("to_relative_frame: errors") {
    auto s = SystemState::at_rest(2);
    s.x[1] = VecD{1.2, 0.0};
    s.x[2] = VecD{0.0, 3.0};
    CHECK_THROWS_AS(to_relative_frame(s, 0, 1, 2), FrameError);

    auto o = SystemState::at_rest(2);
    o.x[1] = VecD{1.0, 0.0};
    o.x[2] = VecD{1.5, 0.0};  // overlaps 1
    CHECK_THROWS_AS(to_relative_frame(o, 0, 1, 2), InvalidState);
}

TEST_CASE("to_relative_frame: Galilean invariance") {
    std::mt19937_64 g(9);
    for (int n = 0; n < 200; ++n) {
        int dim = 2 + n % 3;
        auto s = testsupport::random_contact_state(g, dim, Pair::p01);
        auto c = to_relative_frame(s, 0, 1, 2);
        VecD u = testsupport::gaussian(g, dim, 5.0);
        auto shifted = s;
        for (int i = 0; i < 3; ++i) shifted.v[i] += u;
        auto d = to_relative_frame(shifted, 0, 1, 2);
        CHECK(norm(c.w1 - d.w1) <= 1e-13 * (1.0 + norm(u)));
        CHECK(norm(c.w2 - d.w2) <= 1e-13 * (1.0 + norm(u)));
        CHECK(c.gap == d.gap);
    }
}

TEST_CASE("relative frame round trip, seed 7") {
    std::mt19937_64 g(7);
    for (int n = 0; n < 100; ++n) {
        int dim = 2 + n % 3;
        auto s = testsupport::random_contact_state(g, dim, Pair::p01);
        auto c = to_relative_frame(s, 0, 1, 2);
        auto back = from_relative_frame(c);
        for (int i = 1; i < 3; ++i) {
            CHECK(norm((back.x[i] - back.x[0]) - (s.x[i] - s.x[0])) < 1e-12);
            CHECK(norm((back.v[i] - back.v[0]) - (s.v[i] - s.v[0])) < 1e-12);
        }
    }
}

TEST_CASE("restitution and state validation") {
    CHECK_THROWS_AS(Restitution(0.0), InvalidArgument);
    CHECK_THROWS_AS(Restitution(1.0), InvalidArgument);
    CHECK(Restitution(0.3).value() == 0.3);

    auto s = SystemState::at_rest(3);
    s.x[1] = VecD{0.5, 0.0, 0.0};
    s.x[2] = VecD{0.0, 4.0, 0.0};
    CHECK_THROWS_AS(validate_state(s), InvalidState);
    CHECK_THROWS_AS(VecD(2) + VecD(3), InvalidArgument);
}

TEST_CASE("high precision formatting and logs") {
    HighPrecision tiny = pow(HighPrecision(10), -650);
    CHECK(log10_abs(tiny) == doctest::Approx(-650.0));
    CHECK(format17(tiny) == "1e-650");
    CHECK(format17(0.1) == "0.10000000000000001");
}
