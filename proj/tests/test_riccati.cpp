#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "causal_horizon/errors.hpp"
#include "causal_horizon/riccati.hpp"

using namespace ch;

namespace {

RiccatiConfig cfg(int n, double th0, double forcing, double dt = 1e-4, double tmax = 1.0) {
    RiccatiConfig c;
    c.n = n;
    c.theta0 = th0;
    c.curvature_forcing = forcing;
    c.dt = dt;
    c.t_max = tmax;
    return c;
}

}  // namespace

TEST_CASE("euclidean blow-up at n/lambda0") {
    auto tr = integrate_riccati(cfg(2, -4, 0));
    REQUIRE(tr.blew_up);
    CHECK(std::abs(*tr.blowup_time - 0.5) < 1e-3);
}

TEST_CASE("focusing blow-up at pi/2") {
    auto tr = integrate_riccati(cfg(2, 0, -2, 1e-4, 2.0));
    REQUIRE(tr.blew_up);
    CHECK(std::abs(*tr.blowup_time - std::numbers::pi / 2) < 1e-3);
}

TEST_CASE("positive forcing relaxes to the stable equilibrium") {
    auto tr = integrate_riccati(cfg(2, 1, 2));
    CHECK_FALSE(tr.blew_up);
    CHECK(tr.times.back() == doctest::Approx(1.0));
    // Exact solution 2 tanh(t + atanh(1/2)).
    CHECK(std::abs(tr.theta.back() - 2 * std::tanh(1 + std::atanh(0.5))) < 1e-3);
    auto longer = integrate_riccati(cfg(2, 1, 2, 1e-4, 6.0));
    CHECK(std::abs(longer.theta.back() - 2.0) < 1e-3);
}

TEST_CASE("analytic_reference examples") {
    auto v = analytic_reference(AnalyticKind::euclidean, 2, 4, 0.25);
    CHECK(v.J == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(v.theta == doctest::Approx(-8));
    auto z = analytic_reference(AnalyticKind::euclidean, 5, 3.5, 0);
    CHECK(z.theta == -3.5);
    CHECK(z.J == 1.0);
    CHECK(analytic_reference(AnalyticKind::euclidean, 3, 3, 1 - 1e-6).J < 1e-15);
    CHECK_THROWS_AS(analytic_reference(AnalyticKind::euclidean, 3, 3, 1.0), DomainError);
    auto f = analytic_reference(AnalyticKind::focusing, 2, 2, 0.5);
    CHECK(f.theta == doctest::Approx(-2 * std::tan(0.5)));
    CHECK_THROWS_AS(analytic_reference(AnalyticKind::focusing, 2, 2, std::numbers::pi / 2), DomainError);
}

TEST_CASE("trace invariants") {
    auto tr = integrate_riccati(cfg(3, -6, 0.5));
    REQUIRE(tr.blew_up);
    CHECK(tr.logJ.front() == 0.0);
    for (std::size_t i = 1; i < tr.times.size(); ++i) {
        double trap = 0.5 * (tr.theta[i] + tr.theta[i - 1]) * (tr.times[i] - tr.times[i - 1]);
        CHECK(std::abs(tr.logJ[i] - tr.logJ[i - 1] - trap) < 1e-10 * (1 + std::abs(trap)));
    }
    CHECK(tr.theta.back() <= -1e6);
    CHECK(*tr.blowup_time == tr.times.back());
    std::size_t start = tr.times.size() - tr.times.size() / 10;
    for (std::size_t i = start + 1; i < tr.times.size(); ++i) CHECK(tr.logJ[i] < tr.logJ[i - 1]);
}

TEST_CASE("config validation and instability error") {
    auto c = cfg(2, -1, 0);
    c.dt = 0;
    CHECK_THROWS_AS(integrate_riccati(c), DomainError);
    c = cfg(2, -1, 0);
    c.shear = [](double t) { return t > 0.2 ? NAN : 0.0; };
    try {
        integrate_riccati(c);
        FAIL("expected instability error");
    } catch (const NumericalInstabilityError& e) {
        CHECK(e.partial.times.size() > 1);
        CHECK(e.partial.times.back() <= 0.2001);
    }
}

TEST_CASE("property: oracle agreement over random (n, lambda0)") {
    std::mt19937_64 g(21);
    std::uniform_real_distribution<double> ul(0.5, 50.0);
    for (int i = 0; i < 100; ++i) {
        int n = 1 + static_cast<int>(g() % 100);
        double lam = ul(g);
        double tc = n / lam;
        auto tr = integrate_riccati(cfg(n, -lam, 0, tc / 2000, 2 * tc));
        REQUIRE(tr.blew_up);
        CHECK(std::abs(*tr.blowup_time - tc) / tc < 1e-2);
    }
}

TEST_CASE("property: shear strictly accelerates collapse") {
    std::mt19937_64 g(22);
    std::uniform_real_distribution<double> u(0.5, 5.0);
    for (int i = 0; i < 20; ++i) {
        int n = 1 + static_cast<int>(g() % 5);
        double th0 = -u(g) * n, f = u(g) - 2.5, s = u(g);
        auto c = cfg(n, th0, f, 1e-4, 10.0);
        auto a = integrate_riccati(c);
        if (!a.blew_up) continue;
        c.shear = [s](double) { return s; };
        auto b = integrate_riccati(c);
        REQUIRE(b.blew_up);
        CHECK(*b.blowup_time < *a.blowup_time);
    }
}

TEST_CASE("property: positive forcing buffers collapse") {
    double prev = 0;
    for (double f : {0.0, 0.5, 1.0, 2.0, 4.0, 7.9}) {
        auto tr = integrate_riccati(cfg(2, -4, f, 1e-4, 5.0));
        double t = tr.blew_up ? *tr.blowup_time : INFINITY;
        CHECK(t >= prev);
        prev = t;
    }
    CHECK_FALSE(integrate_riccati(cfg(2, -4, 8.5, 1e-4, 5.0)).blew_up);
}

TEST_CASE("property: exp(logJ) tracks the euclidean Jacobian") {
    for (auto [n, lam] : {std::pair{2, 4.0}, {5, 2.0}, {10, 30.0}}) {
        double tc = static_cast<double>(n) / lam;
        auto tr = integrate_riccati(cfg(n, -lam, 0, tc / 20000, tc));
        for (std::size_t i = 0; i < tr.times.size(); ++i) {
            if (tr.times[i] > 0.9 * tc) break;
            double J = analytic_reference(AnalyticKind::euclidean, n, lam, tr.times[i]).J;
            CHECK(std::abs(std::exp(tr.logJ[i]) - J) <= 0.01 * J);
        }
    }
}

TEST_CASE("constant-forcing closed form matches integration") {
    for (double b : {-3.0, -1.0, 0.0, 1.0, 3.0}) {
        auto exact = constant_forcing_blowup(2, -4, b);
        auto tr = integrate_riccati(cfg(2, -4, b, 1e-5, 3.0));
        REQUIRE(exact.has_value() == tr.blew_up);
        if (exact) CHECK(std::abs(*tr.blowup_time - *exact) < 1e-3);
    }
    CHECK_FALSE(constant_forcing_blowup(2, -1, 1.0).has_value());
    CHECK_FALSE(constant_forcing_blowup(2, 0.5, 0.0).has_value());
}
