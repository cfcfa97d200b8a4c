#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "causal_horizon/bounds.hpp"
#include "causal_horizon/errors.hpp"
#include "causal_horizon/riccati.hpp"

using namespace ch;

namespace {

// Oracle evaluations in long double, independent of the library's expressions.
long double ln(long double x) { return std::log(x); }
const long double kPi = 3.141592653589793238462643383279502884L;
const long double kE = 2.718281828459045235360287471352662498L;

bool sig6(double got, long double want) {
    if (want == 0) return std::abs(got) < 1e-12;
    return std::abs(got - want) <= 5e-7L * std::abs(want);
}

GeometryParams base() {
    GeometryParams p;
    p.n = 2;
    p.sigma = 0.1;
    p.Delta = 1.0;
    p.density_ratio = 1.0;
    return p;
}

}  // namespace

TEST_CASE("mollified_entropy examples") {
    CHECK(sig6(mollified_entropy(1, 1.0), 0.5L * ln(2 * kPi * kE)));
    CHECK(mollified_entropy(1, 1.0) == doctest::Approx(1.41894).epsilon(5e-6));
    CHECK(sig6(mollified_entropy(2, 1.0), ln(2 * kPi * kE)));
    CHECK(mollified_entropy(2, 1.0) == doctest::Approx(2.83788).epsilon(5e-6));
    CHECK(sig6(mollified_entropy(2, 0.1), 2 * ln(0.1L) + ln(2 * kPi * kE)));
    CHECK_THROWS_AS(mollified_entropy(2, 0.0), DomainError);
    CHECK_THROWS_AS(mollified_entropy(0, 1.0), DomainError);
}

TEST_CASE("horizon_energy_lower_bound examples") {
    GeometryParams p = base();
    p.C_V = 1;
    p.n = 1;
    p.sigma = 1;
    p.D = 0;
    CHECK(horizon_energy_lower_bound(p, 1.0) == 0.0);
    p.n = 2;
    p.sigma = 0.1;
    p.D = 3;
    CHECK(sig6(horizon_energy_lower_bound(p, 0.5), 18.0L + 4 * ln(10.0L)));
    CHECK(horizon_energy_lower_bound(p, 0.5) == doctest::Approx(27.2103).epsilon(5e-6));
    p.D = 6;
    CHECK(sig6(horizon_energy_lower_bound(p, 0.5), 72.0L + 4 * ln(10.0L)));
    CHECK(horizon_energy_lower_bound(p, 0.5) == doctest::Approx(81.2103).epsilon(5e-6));
    CHECK_THROWS_AS(horizon_energy_lower_bound(p, 0.0), DomainError);
}

TEST_CASE("initial_contraction_bound examples") {
    GeometryParams p = base();
    CHECK(sig6(initial_contraction_bound(p), 1.9L));
    p.sigma = p.Delta = 0.7;
    CHECK(initial_contraction_bound(p) == doctest::Approx(1.0).epsilon(1e-15));
    p = base();
    p.kappa = 1;
    p.D = 1;
    long double coth1 = std::cosh(1.0L) / std::sinh(1.0L);
    CHECK(sig6(initial_contraction_bound(p), 0.9L + coth1));
    CHECK(initial_contraction_bound(p) == doctest::Approx(2.21303).epsilon(5e-6));
}

TEST_CASE("tearing_time_bound examples") {
    auto a = tearing_time_bound(2, 0, 0, 4);
    REQUIRE(a.has_value());
    CHECK(a.value == 0.5);

    auto b = tearing_time_bound(2, 1, 2, 5);
    REQUIRE(b.has_value());
    long double s = std::sqrt(2.0L) * 2;
    long double oracle = (2 / s) * std::atanh(s / 5.0L);  // arccoth(z) = atanh(1/z)
    CHECK(sig6(b.value, oracle));

    // This expression is the blow-up time of theta' = -theta^2/n + K D^2.
    RiccatiConfig rc;
    rc.n = 2;
    rc.theta0 = -5;
    rc.curvature_forcing = 1.0 * 2 * 2;
    rc.dt = 1e-5;
    auto tr = integrate_riccati(rc);
    REQUIRE(tr.blew_up);
    CHECK(std::abs(*tr.blowup_time - b.value) < 1e-3);

    CHECK(tearing_time_bound(2, 1, 2, 2).status == BoundResult::Status::no_guarantee);
    CHECK_THROWS_AS(tearing_time_bound(2, 0, 0, 0), DomainError);
}

TEST_CASE("conjugate_point_distance examples") {
    CHECK(sig6(conjugate_point_distance(1).value, kPi));
    CHECK(sig6(conjugate_point_distance(4).value, kPi / 2));
    CHECK(conjugate_point_distance(0).status == BoundResult::Status::unbounded);
    CHECK_THROWS_AS(conjugate_point_distance(-1), DomainError);
}

TEST_CASE("required_viscosity examples") {
    CHECK(required_viscosity(1, 1, 0, 6).value == 6.0);
    CHECK(required_viscosity(2, 1, 0.5, 4).value == 16.0);
    CHECK(required_viscosity(1, 2.67, 0.1403, 3).status == BoundResult::Status::impossible);
    CHECK(required_viscosity(1, 2.67, 0.1403, 0).status == BoundResult::Status::impossible);
}

TEST_CASE("identity_entropy_bound examples") {
    CHECK(std::abs(identity_entropy_bound(2, 1.0 / (4 * std::numbers::pi * std::numbers::e))) < 1e-14);
    CHECK(sig6(identity_entropy_bound(2, 1), ln(4 * kPi * kE)));
    CHECK(identity_entropy_bound(2, 1) == doctest::Approx(3.53102).epsilon(5e-6));
    CHECK(sig6(identity_entropy_bound(4, 1), 2 * ln(4 * kPi * kE)));
    CHECK(identity_entropy_bound(4, 1) == doctest::Approx(7.06205).epsilon(5e-6));
    CHECK_THROWS_AS(identity_entropy_bound(2, 0), DomainError);
}

TEST_CASE("shock_thickness examples") {
    CHECK(shock_thickness(1, 2) == 0.5);
    CHECK(shock_thickness(0, 5) == 0.0);
    CHECK(shock_thickness(6, 6) == 1.0);
    CHECK_THROWS_AS(shock_thickness(1, 0), DomainError);
}

TEST_CASE("geometry params invariants") {
    GeometryParams p = base();
    CHECK_NOTHROW(p.validate());
    p.kappa = 1;
    p.K_pos = 1;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = base();
    p.sigma = 0;
    CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("property: energy increasing in D, decreasing in epsilon") {
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> u(0.05, 5.0);
    for (int i = 0; i < 200; ++i) {
        GeometryParams p = base();
        p.n = 1 + static_cast<int>(g() % 10);
        p.C_V = u(g);
        p.sigma = std::min(u(g), 0.99);
        p.D = u(g);
        double e = u(g);
        double E = horizon_energy_lower_bound(p, e);
        GeometryParams q = p;
        q.D += 0.1;
        CHECK(horizon_energy_lower_bound(q, e) > E);
        CHECK(horizon_energy_lower_bound(p, e * 1.1) < E);
    }
}

TEST_CASE("property: tearing bound identities") {
    std::mt19937_64 g(12);
    std::uniform_real_distribution<double> u(0.5, 50.0);
    for (int i = 0; i < 100; ++i) {
        int n = 1 + static_cast<int>(g() % 100);
        double lam = u(g);
        double D = u(g) / 10;
        CHECK(tearing_time_bound(n, 0, D, lam).value * lam == doctest::Approx(n).epsilon(1e-14));
        auto lim = tearing_time_bound(n, 1e-8, D, lam);
        REQUIRE(lim.has_value());
        CHECK(std::abs(lim.value - n / lam) / (n / lam) < 1e-3);
    }
}

TEST_CASE("property: required viscosity scaling and synthesis with identity bound") {
    std::mt19937_64 g(13);
    std::uniform_real_distribution<double> u(0.1, 3.0);
    for (int i = 0; i < 100; ++i) {
        double C0 = u(g), Delta = u(g), D = u(g);
        double km = 0.9 / (Delta * Delta) * (u(g) / 3.0);
        double base_v = required_viscosity(C0, Delta, km, D).value;
        CHECK(required_viscosity(C0, Delta, km, 2 * D).value == doctest::Approx(2 * base_v));
        CHECK(required_viscosity(3 * C0, Delta, km, D).value == doctest::Approx(3 * base_v));
        double h1 = identity_entropy_bound(2, base_v);
        double h2 = identity_entropy_bound(2, required_viscosity(C0, Delta, km, D * 1.5).value);
        CHECK(h2 > h1);
    }
}

TEST_CASE("property: x coth x never below one") {
    CHECK(x_coth_x(0) == 1.0);
    for (double x = 0; x < 20; x += 0.013) CHECK(x_coth_x(x) >= 1.0);
    CHECK(x_coth_x(1e-9) == 1.0);
}
