#include <doctest.h>

#include <cmath>
#include <random>

#include "causal_horizon/errors.hpp"
#include "causal_horizon/hutchinson.hpp"

using namespace ch;

namespace {

Mat random_symmetric(int n, std::mt19937_64& g) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Mat A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) A(i, j) = A(j, i) = nd(g);
    return A;
}

// Sample variance of single-probe estimates z^T A z.
double mc_variance(const Mat& A, int draws, Rng& rng) {
    const int n = static_cast<int>(A.rows());
    Vec z(n);
    double s = 0, s2 = 0;
    for (int k = 0; k < draws; ++k) {
        for (int i = 0; i < n; ++i) z[i] = rademacher(rng);
        double q = z.dot(A * z);
        s += q;
        s2 += q * q;
    }
    double m = s / draws;
    return (s2 - draws * m * m) / (draws - 1);
}

}  // namespace

TEST_CASE("diagonal and identity fields are estimated exactly") {
    Mat A = Mat::Zero(2, 2);
    A(0, 0) = -1.5;
    A(1, 1) = 4.25;
    LinearField f(A);
    Rng rng(1);
    auto e = estimate_divergence(f, Vec::Ones(2), 0, 5, rng);
    CHECK(e.mean == 2.75);
    REQUIRE(e.sample_std);
    CHECK(*e.sample_std == 0.0);
    Rng r1(2);
    CHECK_FALSE(estimate_divergence(f, Vec::Ones(2), 0, 1, r1).sample_std.has_value());

    LinearField id(Mat::Identity(7, 7));
    Rng r2(3);
    CHECK(estimate_divergence(id, Vec::Zero(7), 0, 3, r2).mean == 7.0);
    CHECK_THROWS_AS(estimate_divergence(id, Vec::Zero(7), 0, 0, r2), DomainError);
}

TEST_CASE("many probes on a random 5x5 linear field") {
    std::mt19937_64 g(41);
    Mat A = Mat::Random(5, 5) + 5.0 * Mat::Identity(5, 5);
    LinearField f(A);
    Rng rng(42);
    auto e = estimate_divergence(f, Vec::Zero(5), 0, 100000, rng);
    CHECK(std::abs(e.mean - A.trace()) < 0.01 * std::abs(A.trace()));
}

TEST_CASE("determinism given the probe stream") {
    LinearField f(Mat::Random(6, 6));
    Rng a = make_stream(9, 3, Lane::probes), b = make_stream(9, 3, Lane::probes);
    CHECK(estimate_divergence(f, Vec::Zero(6), 0, 4, a).mean == estimate_divergence(f, Vec::Zero(6), 0, 4, b).mean);
}

TEST_CASE("estimator_variance examples") {
    Mat D = Mat::Zero(3, 3);
    D.diagonal() << 1, -2, 3;
    CHECK(estimator_variance(D).variance == 0.0);
    CHECK(estimator_variance(Mat::Identity(3, 3)).variance == 0.0);
    Mat S(2, 2);
    S << 0, 1, 1, 0;
    CHECK(estimator_variance(S).variance == 4.0);
    Rng rng(43);
    CHECK(std::abs(mc_variance(S, 1000000, rng) - 4.0) < 0.08);

    Mat N(2, 2);
    N << 0, 2, 0, 0;
    auto r = estimator_variance(N);
    CHECK(r.asymmetric);
    CHECK(r.variance == 4.0);  // symmetric part [[0,1],[1,0]]
    Rng r2(44);
    CHECK(std::abs(mc_variance(N, 200000, r2) - 4.0) < 0.1);
}

TEST_CASE("property: single-probe estimates are unbiased") {
    std::mt19937_64 g(45);
    Mat A = Mat::Random(6, 6);
    LinearField f(A);
    Rng rng = make_stream(45, 0, Lane::probes);
    const int N = 10000;
    double s = 0, s2 = 0;
    for (int i = 0; i < N; ++i) {
        double q = estimate_divergence(f, Vec::Zero(6), 0, 1, rng).mean;
        s += q;
        s2 += q * q;
    }
    double mean = s / N, se = std::sqrt((s2 / N - mean * mean) / N);
    CHECK(std::abs(mean - A.trace()) < 3 * se);
}

TEST_CASE("property: Monte Carlo variance matches the closed form") {
    std::mt19937_64 g(46);
    for (int k = 0; k < 20; ++k) {
        int n = 2 + static_cast<int>(g() % 9);
        Mat A = random_symmetric(n, g);
        double formula = estimator_variance(A).variance;
        Rng rng = make_stream(46, k, Lane::probes);
        double mc = mc_variance(A, 200000, rng);
        CHECK(std::abs(mc - formula) < 0.05 * formula);
    }
}

TEST_CASE("property: signal-to-noise grows toward the tearing singularity") {
    auto tear = make_tearing_rate(2, 10.0, 0.0);
    Mat B(2, 2);
    B << 0, 0.7, 0.7, 0;
    SumField f(tear, std::make_shared<LinearField>(B));
    Vec x = Vec::Zero(2);
    double tc = tear->critical_time(), prev = 0;
    for (double t = 0; t <= 0.9 * tc; t += tc / 200) {
        double var = estimator_variance(f.jacobian(x, t)).variance;
        double snr = std::abs(f.divergence(x, t)) / std::sqrt(var);
        CHECK(snr > prev);
        prev = snr;
    }
}
