#include "doctest.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "haar/channels.hpp"
#include "haar/montecarlo.hpp"
#include "haar/rng.hpp"
#include "haar/weingarten.hpp"

using namespace haar;

namespace {

bool within_4se(const McEstimate& e, double target) {
    return std::abs(e.mean - target) <= 4.0 * e.std_error + 1e-12;
}

ChannelModel make(ModelKind kind, long n, long k, double t = 0.5) {
    ChannelModel m;
    m.kind = kind;
    m.n = n;
    m.k = k;
    m.t = t;
    return m;
}

}  // namespace

TEST_CASE("estimates are reproducible and shards concatenate") {
    ChannelModel m = make(ModelKind::conjugate, 3, 2);
    RngConfig cfg{101, 0};
    McEstimate a = mc_channel_moment(m, 2, 300, cfg);
    McEstimate b = mc_channel_moment(m, 2, 300, cfg);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(a.samples == 300);

    // two half-runs on adjacent stream windows average to the full run
    McEstimate lo = mc_channel_moment(m, 2, 150, RngConfig{101, 0});
    McEstimate hi = mc_channel_moment(m, 2, 150, RngConfig{101, 150});
    CHECK(std::abs((lo.mean + hi.mean) / 2 - a.mean) < 1e-12);
}

TEST_CASE("sampler statistics match first-moment facts") {
    MonomialSpec one_entry;
    one_entry.n = 3;
    one_entry.i = {0};
    one_entry.j = {0};
    McComplexEstimate odd = mc_monomial_integral(one_entry, 5000, RngConfig{7, 0});
    CHECK(within_4se(odd.re, 0.0));
    CHECK(within_4se(odd.im, 0.0));

    MonomialSpec abs_sq;
    abs_sq.n = 3;
    abs_sq.i = {0};
    abs_sq.j = {0};
    abs_sq.ip = {0};
    abs_sq.jp = {0};
    McComplexEstimate sq = mc_monomial_integral(abs_sq, 10000, RngConfig{8, 0});
    CHECK(within_4se(sq.re, rat_double(monomial_integral(abs_sq))));
    CHECK(rat_double(monomial_integral(abs_sq)) == doctest::Approx(1.0 / 3));
    CHECK(within_4se(sq.im, 0.0));
}

TEST_CASE("degree-4 entry products land on their exact values") {
    // diagonal pattern |U11|^2 |U22|^2
    MonomialSpec diag;
    diag.n = 2;
    diag.i = {0, 1};
    diag.j = {0, 1};
    diag.ip = {0, 1};
    diag.jp = {0, 1};
    Rational diag_exact = monomial_integral(diag);
    CHECK(diag_exact == Rational(1, 3));
    McComplexEstimate de = mc_monomial_integral(diag, 20000, RngConfig{9, 0});
    CHECK(within_4se(de.re, rat_double(diag_exact)));
    CHECK(within_4se(de.im, 0.0));

    // shared-row pattern |U11|^2 |U12|^2
    MonomialSpec row;
    row.n = 2;
    row.i = {0, 0};
    row.j = {0, 1};
    row.ip = {0, 0};
    row.jp = {0, 1};
    Rational row_exact = monomial_integral(row);
    CHECK(row_exact == Rational(1, 6));
    McComplexEstimate re = mc_monomial_integral(row, 20000, RngConfig{10, 0});
    CHECK(within_4se(re.re, rat_double(row_exact)));

    // degree mismatch averages to zero
    MonomialSpec odd;
    odd.n = 2;
    odd.i = {0, 0};
    odd.j = {0, 0};
    odd.ip = {0};
    odd.jp = {0};
    CHECK(monomial_integral(odd) == Rational(0));
    McComplexEstimate oe = mc_monomial_integral(odd, 10000, RngConfig{11, 0});
    CHECK(within_4se(oe.re, 0.0));
    CHECK(within_4se(oe.im, 0.0));
}

TEST_CASE("left multiplication by a fixed unitary leaves statistics alone") {
    long d = 3;
    long samples = 4000;
    auto vrng = Xoshiro256::for_stream(999, 0);
    Eigen::MatrixXcd v = sample_haar(static_cast<int>(d), vrng);

    std::vector<double> plain(static_cast<size_t>(samples)), rotated(static_cast<size_t>(samples));
    for (long s = 0; s < samples; ++s) {
        auto rng = Xoshiro256::for_stream(12, static_cast<uint64_t>(s));
        Eigen::MatrixXcd u = sample_haar(static_cast<int>(d), rng);
        plain[static_cast<size_t>(s)] = std::norm(u(0, 0));
        rotated[static_cast<size_t>(s)] = std::norm((v * u)(0, 0));
    }
    auto stats = [&](const std::vector<double>& xs) {
        double mean = 0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double ss = 0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        return std::pair<double, double>(
            mean, std::sqrt(ss / static_cast<double>(xs.size() - 1) /
                            static_cast<double>(xs.size())));
    };
    auto [m1, se1] = stats(plain);
    auto [m2, se2] = stats(rotated);
    CHECK(std::abs(m1 - m2) <= 4.0 * std::sqrt(se1 * se1 + se2 * se2));
    CHECK(std::abs(m1 - 1.0 / d) <= 4.0 * se1);
}

TEST_CASE("every sampled matrix is unitary to machine precision") {
    for (int d : {1, 2, 5, 9})
        for (uint64_t s = 0; s < 5; ++s) {
            auto rng = Xoshiro256::for_stream(13, s);
            CHECK(unitarity_residual(sample_haar(d, rng)) < 1e-12);
        }
}

TEST_CASE("first channel moments are deterministic ones") {
    for (ModelKind kind : {ModelKind::rotated, ModelKind::independent, ModelKind::conjugate,
                           ModelKind::generalized}) {
        McEstimate e = mc_channel_moment(make(kind, 3, 2, 0.5), 1, 50, RngConfig{14, 0});
        CHECK(std::abs(e.mean - 1.0) < 1e-10);
        CHECK(e.std_error < 1e-12);
    }
}

TEST_CASE("channel moment estimates straddle the exact kernels") {
    McEstimate rot = mc_channel_moment(make(ModelKind::rotated, 2, 2), 2, 4000, RngConfig{15, 0});
    CHECK(within_4se(rot, rat_double(exact_moment_rotated_rank_one(2, 2, 2))));

    McEstimate ind = mc_channel_moment(make(ModelKind::independent, 2, 2), 2, 4000,
                                       RngConfig{16, 0});
    CHECK(within_4se(ind, rat_double(exact_moment_independent(2, 2, 2))));

    McEstimate con = mc_channel_moment(make(ModelKind::conjugate, 3, 2), 2, 4000,
                                       RngConfig{17, 0});
    CHECK(within_4se(con, rat_double(exact_moment_conjugate(3, 2, 2))));

    McEstimate con3 = mc_channel_moment(make(ModelKind::conjugate, 2, 2), 3, 4000,
                                        RngConfig{18, 0});
    CHECK(within_4se(con3, rat_double(exact_moment_conjugate(2, 2, 3))));
}

TEST_CASE("spectrum statistics agree with a direct per-sample reconstruction") {
    // small output: eigenvalues come straight from the output state
    ChannelModel m = make(ModelKind::conjugate, 3, 2);
    long samples = 60;
    SpectrumStats st = mc_spectrum(m, samples, RngConfig{19, 0});
    REQUIRE(st.mean.size() == 9);

    std::vector<double> acc(9, 0.0);
    for (long i = 0; i < samples; ++i) {
        auto rng = Xoshiro256::for_stream(19, static_cast<uint64_t>(i));
        Eigen::MatrixXcd u = sample_haar(6, rng);
        Eigen::MatrixXcd z = pair_output(u, u.conjugate(), 3, 2, bell_input_columns(3, 2));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(z);
        std::vector<double> e(es.eigenvalues().data(), es.eigenvalues().data() + 9);
        std::sort(e.begin(), e.end(), std::greater<double>());
        for (int r = 0; r < 9; ++r) acc[static_cast<size_t>(r)] += e[static_cast<size_t>(r)];
    }
    for (int r = 0; r < 9; ++r)
        CHECK(st.mean[static_cast<size_t>(r)] ==
              doctest::Approx(acc[static_cast<size_t>(r)] / samples).epsilon(1e-10));

    CHECK(st.max_nonzero <= 4);
    double total = 0;
    for (double v : st.mean) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("large outputs switch to the gram route without changing values") {
    ChannelModel m = make(ModelKind::conjugate, 7, 2);   // 49 > 36 forces the gram path
    long samples = 40;
    SpectrumStats st = mc_spectrum(m, samples, RngConfig{20, 0});
    REQUIRE(st.mean.size() == 49);

    std::vector<double> acc(49, 0.0);
    for (long i = 0; i < samples; ++i) {
        auto rng = Xoshiro256::for_stream(20, static_cast<uint64_t>(i));
        Eigen::MatrixXcd u = sample_haar(14, rng);
        Eigen::MatrixXcd z = pair_output(u, u.conjugate(), 7, 2, bell_input_columns(7, 2));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(z);
        std::vector<double> e(es.eigenvalues().data(), es.eigenvalues().data() + 49);
        std::sort(e.begin(), e.end(), std::greater<double>());
        for (int r = 0; r < 49; ++r) acc[static_cast<size_t>(r)] += e[static_cast<size_t>(r)];
    }
    for (int r = 0; r < 49; ++r) {
        double direct = acc[static_cast<size_t>(r)] / samples;
        CHECK(std::abs(st.mean[static_cast<size_t>(r)] - direct) < 1e-9);
    }
    CHECK(st.max_nonzero <= 4);
}

TEST_CASE("rotated spectra have rank at most min(n, k)") {
    SpectrumStats st = mc_spectrum(make(ModelKind::rotated, 4, 2), 50, RngConfig{21, 0});
    REQUIRE(st.mean.size() == 4);
    CHECK(st.max_nonzero <= 2);
    double total = 0;
    for (double v : st.mean) total += v;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("variance of the first moment vanishes") {
    VarianceDecay vd = mc_variance_decay(make(ModelKind::conjugate, 2, 2), 1, {4, 8}, 100,
                                         RngConfig{22, 0});
    CHECK(vd.variance[0] < 1e-20);
    CHECK(vd.variance[1] < 1e-20);
    CHECK_FALSE(vd.has_slope);
}

TEST_CASE("variance of higher moments decays with n") {
    VarianceDecay vd = mc_variance_decay(make(ModelKind::conjugate, 2, 2), 2, {8, 16, 32}, 400,
                                         RngConfig{23, 0});
    REQUIRE(vd.has_slope);
    CHECK(vd.variance[0] > vd.variance[1]);
    CHECK(vd.variance[1] > vd.variance[2]);
    CHECK(vd.slope < -1.0);
}

TEST_CASE("monte carlo interfaces validate their arguments") {
    MonomialSpec bad;
    bad.n = 2;
    bad.i = {0};
    bad.j = {};
    CHECK_THROWS_AS(mc_monomial_integral(bad, 200, RngConfig{1, 0}), std::invalid_argument);
    MonomialSpec oob;
    oob.n = 2;
    oob.i = {2};
    oob.j = {0};
    CHECK_THROWS_AS(mc_monomial_integral(oob, 200, RngConfig{1, 0}), std::invalid_argument);
    MonomialSpec fine;
    fine.n = 2;
    CHECK_THROWS_AS(mc_monomial_integral(fine, 1, RngConfig{1, 0}), std::invalid_argument);

    CHECK_THROWS_AS(mc_channel_moment(make(ModelKind::conjugate, 2, 2), 0, 100, RngConfig{1, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        mc_variance_decay(make(ModelKind::conjugate, 2, 2), 2, {8, 8}, 100, RngConfig{1, 0}),
        std::invalid_argument);
    CHECK_THROWS_AS(
        mc_variance_decay(make(ModelKind::conjugate, 2, 2), 2, {}, 100, RngConfig{1, 0}),
        std::invalid_argument);
}
