#include "fdrift/dgp.hpp"
#include "fdrift/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace fdrift {
namespace {

TEST(Dgp, Mu1Branches) {
    for (double s : {0.0, 0.2, 0.5, 0.9}) EXPECT_EQ(mu1(0.0, s), s * (1.0 - s));
    EXPECT_NEAR(mu1(0.75, 0.5), 2.25, 1e-15);
    EXPECT_NEAR(mu1(0.3, 0.4), 0.24 + 2.0 * std::sin(std::numbers::pi * 0.05), 1e-15);
}

TEST(Dgp, Mu1JumpAtFiveEighths) {
    // The printed third branch adds -2s(1-s)(t-3/4), which is s(1-s)/4 at t = 5/8.
    for (double s : {0.1, 0.3, 0.5, 0.8}) {
        const double left = mu1(0.625, s);
        const double right = mu1(std::nextafter(0.625, 1.0), s);
        EXPECT_NEAR(right - left, s * (1.0 - s) / 4.0, 1e-12) << s;
    }
}

TEST(Dgp, Mu2Profile) {
    EXPECT_EQ(mu2_profile(1.0), 1.0);
    EXPECT_EQ(mu2_profile(0.5), 0.5);
    EXPECT_EQ(mu2_profile(0.0), 0.0);
    for (double s : {0.2, 0.5, 0.7}) {
        EXPECT_NEAR(mu2(0.25, s), 4.0 + mu2_profile(s) + 3.0 / 16.0, 1e-15);
        EXPECT_NEAR(mu2(std::nextafter(0.25, 0.0), s), 4.0 + mu2_profile(s) + 3.0 / 16.0, 1e-12);
    }
}

TEST(Dgp, Mu2BenchmarkIntegral) {
    // Composite Simpson on [0, 1/4] against 4 + f(s) + 5/48.
    for (double s : {0.3, 1.0}) {
        const int panels = 400;
        const double h = 0.25 / panels;
        double acc = mu2(0.0, s) + mu2(std::nextafter(0.25, 0.0), s);
        for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * mu2(i * h, s);
        EXPECT_NEAR(4.0 * acc * h / 3.0, 4.0 + mu2_profile(s) + 5.0 / 48.0, 1e-10);
    }
}

TEST(Dgp, DeviationOracles) {
    // Grid maxima of the population deviations.
    double mu1_sup = 0.0;
    for (int a = 0; a <= 2000; ++a) {
        const double t = a / 2000.0;
        for (int b = 0; b <= 200; ++b) {
            const double s = b / 200.0;
            mu1_sup = std::max(mu1_sup, std::abs(mu1(t, s) - mu1(0.0, s)));
        }
    }
    // Maximiser of 2 sin(pi(t - 1/4)) - (t - 3/4)/2 on (5/8, 1], frozen from a
    // bounded scalar minimisation at s = 1/2.
    EXPECT_NEAR(mu1_sup, 2.0063357212544530, 1e-9);

    double mu2_sup = 0.0;
    for (int a = 0; a <= 1500; ++a) {
        const double t = 0.25 + 0.75 * a / 1500.0;
        for (int b = 0; b <= 200; ++b) {
            const double s = b / 200.0;
            mu2_sup = std::max(mu2_sup, std::abs(mu2(t, s) - (4.0 + mu2_profile(s) + 5.0 / 48.0)));
        }
    }
    EXPECT_NEAR(mu2_sup, 22.0 / 48.0, 1e-12);
    EXPECT_NEAR(mu2_sup, 0.4585, 2e-3);
}

TEST(Dgp, BridgeEndpointsExact) {
    const CounterRng rng(3);
    const auto grid = uniform_grid(51);
    std::vector<double> b(51);
    for (std::uint64_t k = 0; k < 50; ++k) {
        brownian_bridge(rng, k, grid, b);
        EXPECT_EQ(b.front(), 0.0);
        EXPECT_EQ(b.back(), 0.0);
    }
}

TEST(Dgp, BridgeCovariance) {
    const CounterRng rng(19);
    const auto grid = uniform_grid(5);  // 0, 0.25, 0.5, 0.75, 1
    std::vector<double> b(5);
    const std::size_t reps = 100000;
    double sx = 0, sy = 0, sxy = 0, sm = 0, smm = 0;
    std::vector<double> prod(reps);
    for (std::size_t k = 0; k < reps; ++k) {
        brownian_bridge(rng, k, grid, b);
        sx += b[1];
        sy += b[3];
        sxy += b[1] * b[3];
        prod[k] = b[1] * b[3];
        sm += b[2];
        smm += b[2] * b[2];
    }
    const double n = static_cast<double>(reps);
    const double cov = sxy / n - (sx / n) * (sy / n);
    double var_prod = 0.0;
    for (double p : prod) var_prod += (p - sxy / n) * (p - sxy / n);
    const double se = std::sqrt(var_prod / (n - 1) / n);
    EXPECT_NEAR(cov, 0.25 * (1.0 - 0.75), 3.0 * se);
    // Var B(1/2) = 1/4 with standard error sqrt(2) * 1/4 / sqrt(n).
    EXPECT_NEAR(smm / n - (sm / n) * (sm / n), 0.25, 3.0 * std::sqrt(2.0) * 0.25 / std::sqrt(n));
}

TEST(Dgp, ErrorVarianceAtMidpoint) {
    for (auto errors : {ErrorModel::IidBridge, ErrorModel::MaBridge}) {
        const std::size_t n = 100000;
        const auto series = simulate_series({.mean = MeanModel::Custom,
                                             .custom = [](double, double) { return 0.0; },
                                             .errors = errors,
                                             .n = n,
                                             .points = 3,
                                             .seed = 101});
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double e = series.values()(j, 1);
            s1 += e;
            s2 += e * e;
        }
        const double var = s2 / n - (s1 / n) * (s1 / n);
        // Var = 1/16; MA rows are 1-dependent, so widen the iid standard error by sqrt(2).
        const double se = std::sqrt(2.0) * (1.0 / 16.0) / std::sqrt(static_cast<double>(n));
        EXPECT_NEAR(var, 1.0 / 16.0, 3.0 * std::sqrt(2.0) * se) << to_string(errors);
    }
}

TEST(Dgp, MaLagOneCorrelation) {
    const std::size_t n = 100000;
    const auto series = simulate_series({.mean = MeanModel::Custom,
                                         .custom = [](double, double) { return 0.0; },
                                         .errors = ErrorModel::MaBridge,
                                         .n = n,
                                         .points = 3,
                                         .seed = 55});
    double acc = 0.0;
    for (std::size_t j = 1; j < n; ++j) acc += series.values()(j, 1) * series.values()(j - 1, 1);
    // Cov(eps_j, eps_{j-1}) = (1/2)(1/5) Var B(1/2) = 1/40.
    EXPECT_NEAR(acc / (n - 1), 1.0 / 40.0, 4.0 * 0.0625 * 1.2 / std::sqrt(static_cast<double>(n)));
}

TEST(Dgp, SeriesShapeAndMean) {
    const auto series = simulate_series({.n = 40, .points = 11, .seed = 1});
    EXPECT_EQ(series.curves(), 40u);
    EXPECT_EQ(series.points(), 11u);
    EXPECT_EQ(series.s_grid().front(), 0.0);
    EXPECT_EQ(series.s_grid().back(), 1.0);
    // Bridge noise vanishes at the ends, leaving the mean exactly.
    for (std::size_t j = 0; j < 40; ++j) {
        EXPECT_EQ(series.values()(j, 0), mu1((j + 1) / 40.0, 0.0));
        EXPECT_EQ(series.values()(j, 10), mu1((j + 1) / 40.0, 1.0));
    }
}

TEST(Dgp, Validation) {
    EXPECT_THROW((void)simulate_series({.n = 15}), Error);
    EXPECT_THROW((void)simulate_series({.n = 20, .points = 1}), Error);
    EXPECT_THROW((void)simulate_series({.mean = MeanModel::Custom, .n = 20}), Error);
}

TEST(Dgp, StudyDeterministicAndPerRepReproducible) {
    DgpSpec spec{.n = 100, .points = 11};
    TestConfig base = study_config(MeanModel::Mu1);
    base.bandwidth = 0.2;
    const std::vector<double> deltas{1.0, 2.0, 10.0};
    const auto a = rejection_study(spec, deltas, 0.1, 6, 50, 7, base, 1);
    const auto b = rejection_study(spec, deltas, 0.1, 6, 50, 7, base, 3);
    EXPECT_EQ(study_csv(a.rows), study_csv(b.rows));
    EXPECT_EQ(a.rejected, b.rejected);
    EXPECT_EQ(a.rows[2].rejection_rate, 0.0);

    // Rep 4 alone.
    DgpSpec rep = spec;
    rep.seed = study_rep_seed(7, 4);
    TestConfig c = base;
    c.seed = rep.seed;
    c.bootstrap_reps = 50;
    const auto r = run_test(simulate_series(rep), 1.0, 0.1, c);
    EXPECT_EQ(r.d_inf_hat, a.d_inf_hat[4]);
    EXPECT_EQ(r.reject, a.rejected[0][4] != 0);
}

TEST(Dgp, StudyCsvHeader) {
    const std::vector<StudyRow> rows{{"mu1", "iid", 500, 2.0, 0.1, 10, 200, 0.3}};
    EXPECT_EQ(study_csv(rows),
              "mean,errors,n,delta,alpha,reps,bootstrap_B,rejection_rate\nmu1,iid,500,2,0.1,10,200,0.3\n");
}

}  // namespace
}  // namespace fdrift
