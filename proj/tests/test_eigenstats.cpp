// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "afcap/eigenstats.hpp"
#include "afcap/mcoracle.hpp"
#include "afcap/specfun.hpp"
#include "oracles.hpp"
#include "series_cdf.hpp"

using namespace afcap;

TEST_SUITE_BEGIN("eigenstats");

namespace {

double single_antenna_pdf(double lambda, double alpha, double rho) {
    const double a = alpha / (1.0 + rho);
    const double r = std::sqrt(lambda);
    // scaled Bessel values carry e^{2 sqrt(lambda)}
    const double k1 = std::exp(-2.0 * r) * bessel_k_scaled(1, 2.0 * r);
    const double k0 = std::exp(-2.0 * r) * bessel_k_scaled(0, 2.0 * r);
    return 2.0 * std::exp(-lambda * a) * (a * r * k1 + k0);
}

}  // namespace

TEST_CASE("(1,1,1) series collapses to the closed form") {
    const SystemConfig cfg(1, 1, 1, 2.0, 1.5);
    const BesselTermSeries s = unordered_pdf(cfg);
    for (int i = 1; i <= 50; ++i) {
        const double lam = 0.02 * i * i;  // covers (0.02, 50]
        const double want = single_antenna_pdf(lam, cfg.alpha, cfg.rho);
        CHECK(pdf_eval(s, lam) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("pdf_eval direct substitution at lambda = 1") {
    const SystemConfig cfg(1, 1, 1, 2.0, 1.0);  // a = 1
    const BesselTermSeries s = unordered_pdf(cfg);
    const double want = 2.0 * std::exp(-1.0) *
                        (std::exp(-2.0) * bessel_k_scaled(1, 2.0) +
                         std::exp(-2.0) * bessel_k_scaled(0, 2.0));
    CHECK(pdf_eval(s, 1.0) == doctest::Approx(want).epsilon(1e-13));
    CHECK_THROWS_AS(pdf_eval(s, 0.0), std::domain_error);
}

TEST_CASE("pdf normalization and nonnegativity") {
    for (const SystemConfig& cfg :
         {SystemConfig(2, 3, 4, 2.0, 3.0), SystemConfig(4, 2, 3, 1.0, 2.0),
          SystemConfig(3, 5, 2, 4.0, 0.5), SystemConfig(6, 4, 5, 2.0, 8.0)}) {
        const BesselTermSeries s = unordered_pdf(cfg);
        CHECK(series_mass(s) == doctest::Approx(1.0).epsilon(1e-6));
        for (int i = 0; i <= 200; ++i) {
            const double lam = std::pow(10.0, -4.0 + 7.0 * i / 200.0);
            CHECK(pdf_eval(s, lam) >= 0.0);  // clamp admits only > -1e-9 excursions
        }
    }
}

TEST_CASE("pdf_eval matches extended-precision re-summation") {
    const SystemConfig cfg(4, 2, 4, 2.0, 1.0);
    const BesselTermSeries s = unordered_pdf(cfg);
    for (int i = 1; i <= 20; ++i) {
        const double lam = 0.4 * i;
        long double acc = 0.0L;
        for (const BesselTerm& t : s.terms) {
            const LogScaled k = bessel_k_scaled_log(t.bessel_order, 2.0 * std::sqrt(lam));
            const long double lt = (long double)t.coeff.log_mag +
                                   0.5L * t.half_power * std::log((long double)lam) -
                                   (long double)s.decay_rate * lam +
                                   (long double)k.log_mag - 2.0L * std::sqrt((long double)lam);
            acc += t.coeff.sign * std::exp(lt);
        }
        CHECK(pdf_eval(s, lam) == doctest::Approx(static_cast<double>(acc)).epsilon(1e-9));
    }
}

TEST_CASE("eigenvalue samples follow the analytic density") {
    const SystemConfig cfg(2, 3, 4, 2.0, 3.0);
    const testutil::SeriesCdf cdf(unordered_pdf(cfg), 400.0);
    CHECK(cdf.total() == doctest::Approx(1.0).epsilon(1e-6));
    const auto samples = mc_cascade_eigenvalues(cfg, 20000, {101, 0});
    CHECK(ks_statistic(samples, [&](double x) { return cdf(x); }) < 0.02);
}

TEST_CASE("rayleigh product density") {
    const BesselTermSeries s111 = rayleigh_product_pdf(1, 1, 1);
    for (double lam : {0.2, 1.0, 4.0}) {
        const double want =
            2.0 * std::exp(-2.0 * std::sqrt(lam)) * bessel_k_scaled(0, 2.0 * std::sqrt(lam));
        CHECK(pdf_eval(s111, lam) == doctest::Approx(want).epsilon(1e-13));
    }
    CHECK(series_mass(rayleigh_product_pdf(2, 3, 4)) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("small-gain limit approaches the rayleigh product density") {
    const SystemConfig tiny(2, 3, 4, 3e-8, 0.0);  // a = 1e-8
    const BesselTermSeries lim = unordered_pdf(tiny);
    const BesselTermSeries ray = rayleigh_product_pdf(2, 3, 4);
    for (double lam : {0.5, 1.0, 2.0, 5.0})
        CHECK(pdf_eval(lim, lam) == doctest::Approx(pdf_eval(ray, lam)).epsilon(1e-4));
}

TEST_CASE("unordered beta density: scalar case, mass, sampled spectra") {
    const SystemConfig c11(3, 1, 1, 2.0, 1.0);  // q = p = 1, a = 2/2 = 1
    const double a = c11.a();
    for (double b : {0.1, 0.4, 0.8}) {
        const double w = 1.0 - a * b;
        CHECK(unordered_beta_pdf(b, c11) ==
              doctest::Approx(std::exp(-b / w) / (w * w)).epsilon(1e-13));
    }
    CHECK(unordered_beta_pdf(2.0, c11) == 0.0);  // beyond 1/a
    CHECK_THROWS_AS(unordered_beta_pdf(-0.1, c11), std::domain_error);

    const SystemConfig cfg(2, 3, 4, 2.0, 1.0);
    const double mass = oracle::adaptive_simpson(
        [&](double b) { return unordered_beta_pdf(b, cfg); }, 0.0,
        1.0 / cfg.a() - 1e-12, 1e-11);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));

    // beta samples from second-hop spectra
    Rng rng({77, 0});
    std::vector<double> samples;
    const long trials = 100000;
    samples.reserve(trials * cfg.q());
    for (long t = 0; t < trials; ++t) {
        ComplexMatrix h2(cfg.n_d, cfg.n_r);
        for (int r = 0; r < cfg.n_d; ++r)
            for (int c = 0; c < cfg.n_r; ++c) h2(r, c) = rng.next_cgauss();
        for (double v : hermitian_eigenvalues(gram_ata(h2)))
            samples.push_back(v / (1.0 + cfg.a() * v));
    }
    const testutil::GridCdf cdf([&](double b) { return unordered_beta_pdf(b, cfg); },
                                1.0 / cfg.a());
    CHECK(ks_statistic(samples, [&](double x) { return cdf(x); }) < 0.01);
}

TEST_CASE("conditional eigenvalue density") {
    // q = 1 reduces to a chi-square-type law
    const std::vector<double> one{0.7};
    for (double lam : {0.1, 0.5, 1.0, 3.0}) {
        const double want = std::pow(lam, 2) * std::exp(-lam / 0.7) /
                            (2.0 * std::pow(0.7, 3));  // n_s = 3
        CHECK(conditional_unordered_pdf(one, 3, lam) == doctest::Approx(want).epsilon(1e-12));
    }
    // normalization at q = 3, n_s = 2
    const std::vector<double> betas{0.2, 0.5, 1.3};
    const double mass = oracle::adaptive_simpson(
        [&](double lam) { return lam <= 0.0 ? 0.0 : conditional_unordered_pdf(betas, 2, lam); },
        0.0, 80.0, 1e-11);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    // law of total probability: marginal samples against the unconditional law
    const SystemConfig cfg(2, 3, 4, 2.0, 3.0);
    const testutil::SeriesCdf cdf(unordered_pdf(cfg), 400.0);
    const auto samples = mc_cascade_eigenvalues(cfg, 10000, {55, 0});
    CHECK(ks_statistic(samples, [&](double x) { return cdf(x); }) < 0.02);
    // degenerate spectra are rejected
    const std::vector<double> bad{0.3, 0.3 + 1e-12};
    CHECK_THROWS_AS(conditional_unordered_pdf(bad, 2, 1.0), degenerate_spectrum_error);
}

TEST_CASE("Laplace cofactor identity on the moment matrix") {
    // the q x q matrix of moment integrals behind the density assembly
    const SystemConfig cfg(2, 3, 4, 2.0, 3.0);
    const int q = cfg.q(), p = cfg.p();
    LogMatrix g(q, q);
    for (int m = 1; m <= q; ++m)
        for (int n = 1; n <= q; ++n)
            g(m - 1, n - 1) = moment_integral(p - q + m + n - 2, 2 * q - m - n, cfg.a());
    const LogScaled det = det_scaled(g);
    for (int row = 0; row < q; ++row) {
        LogSum acc;
        for (int k = 0; k < q; ++k) acc.add(g(row, k) * cofactor_scaled(g, row, k));
        const LogScaled sum = acc.total();
        CHECK(sum.sign == det.sign);
        CHECK(sum.log_mag == doctest::Approx(det.log_mag).epsilon(1e-10));
    }
}

TEST_CASE("tower property: conditional statistics average to the unconditional ones") {
    const SystemConfig cfg(2, 3, 4, 2.0, 4.0);
    const double c = cfg.rho * cfg.a() / cfg.n_s;
    Rng rng({123, 9});
    double det_sum = 0.0, log_sum = 0.0;
    const int n = 20000;
    for (int t = 0; t < n; ++t) {
        ComplexMatrix h2(cfg.n_d, cfg.n_r);
        for (int r = 0; r < cfg.n_d; ++r)
            for (int cc = 0; cc < cfg.n_r; ++cc) h2(r, cc) = rng.next_cgauss();
        auto betas = hermitian_eigenvalues(gram_ata(h2));
        for (double& v : betas) v = v / (1.0 + cfg.a() * v);
        det_sum += conditional_expected_det(betas, cfg.n_s, c);
        log_sum += conditional_expected_logdet(betas, cfg.n_s);
    }
    CHECK(det_sum / n == doctest::Approx(expected_det(cfg)).epsilon(5e-3));
    CHECK(log_sum / n == doctest::Approx(expected_logdet(cfg)).epsilon(5e-3));
}

TEST_CASE("expected determinant") {
    CHECK(expected_det(SystemConfig(2, 3, 4, 2.0, 0.0)) == 1.0);
    // q = 1: must equal 2^(2 C_U) from the closed-form upper bound
    const SystemConfig c1(2, 1, 4, 2.0, 10.0);
    const double want = 1.0 + 10.0 * 4 * expint_scaled(5, 11.0 / 2.0);
    CHECK(expected_det(c1) == doctest::Approx(want).epsilon(1e-10));
    // strictly increasing in rho
    double prev = 1.0;
    for (double rho : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double v = expected_det(SystemConfig(2, 3, 4, 2.0, rho));
        CHECK(v > prev);
        prev = v;
    }
    // Monte Carlo bracket, both case splits
    for (const SystemConfig& cfg :
         {SystemConfig(2, 3, 4, 2.0, 4.0), SystemConfig(4, 2, 3, 1.0, 2.0)}) {
        const McEstimate mc = mc_expected_det(cfg, 200000, {31, 0});
        CHECK(std::fabs(expected_det(cfg) - mc.mean) < 4.0 * mc.stderr_);
    }
}

TEST_CASE("conditional expected determinant") {
    const std::vector<double> one{0.6};
    CHECK(conditional_expected_det(one, 3, 0.8) == doctest::Approx(1.0 + 0.8 * 0.6 * 3).epsilon(1e-13));
    const std::vector<double> two{0.3, 0.7};
    CHECK(conditional_expected_det(two, 3, 0.0) == doctest::Approx(1.0).epsilon(1e-13));
    // against a dedicated Gaussian-draw average (q = 2 < n_s = 3 footnote branch)
    Rng rng({99, 1});
    double sum = 0.0;
    const int n = 300000;
    for (int t = 0; t < n; ++t) {
        ComplexMatrix h(2, 3);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 3; ++c) h(r, c) = rng.next_cgauss();
        ComplexMatrix m(3, 3);
        const double l[2] = {0.3, 0.7};
        for (int r = 0; r < 3; ++r)
            for (int c = r; c < 3; ++c) {
                std::complex<double> s{};
                for (int i = 0; i < 2; ++i) s += l[i] * std::conj(h(i, r)) * h(i, c);
                m(r, c) = 0.5 * s;
                if (r == c) m(r, c) += 1.0;
                if (r != c) m(c, r) = std::conj(m(r, c));
            }
        sum += std::exp(ln_det_hpd(m));
    }
    CHECK(conditional_expected_det(two, 3, 0.5) == doctest::Approx(sum / n).epsilon(4e-3));
}

TEST_CASE("expected log determinant") {
    // the two closed forms agree when q = s
    for (double a : {0.25, 0.5, 1.0, 2.0}) {
        const double f1 = expected_logdet_parts(4, 2, 3, a);
        const double f2 = expected_logdet_qs_form(4, 2, 3, a);
        CHECK(f1 == doctest::Approx(f2).epsilon(1e-8));
    }
    // (1,1,1): psi(1) + E ln beta via quadrature of the beta density
    const SystemConfig c111(1, 1, 1, 2.0, 1.0);
    const double quad = oracle::adaptive_simpson(
        [&](double b) {
            return b <= 0.0 ? 0.0 : unordered_beta_pdf(b, c111) * std::log(b);
        },
        0.0, 1.0 / c111.a() - 1e-13, 1e-11);
    CHECK(expected_logdet(c111) == doctest::Approx(digamma(1.0) + quad).epsilon(1e-6));
    // Monte Carlo bracket, both case splits
    for (const SystemConfig& cfg :
         {SystemConfig(1, 1, 1, 2.0, 1.0), SystemConfig(2, 3, 4, 2.0, 4.0),
          SystemConfig(4, 2, 3, 1.0, 2.0)}) {
        const McEstimate mc = mc_expected_logdet(cfg, 200000, {32, 0});
        CHECK(std::fabs(expected_logdet(cfg) - mc.mean) < 4.0 * mc.stderr_);
    }
}

TEST_CASE("conditional expected log determinant") {
    const std::vector<double> two{0.3, 0.7};
    CHECK(conditional_expected_logdet(two, 3) ==
          doctest::Approx(digamma(2.0) + digamma(3.0) + std::log(0.3) + std::log(0.7))
              .epsilon(1e-12));
    const std::vector<double> one{0.6};
    CHECK(conditional_expected_logdet(one, 3) ==
          doctest::Approx(digamma(3.0) + std::log(0.6)).epsilon(1e-12));
    // q = 3 >= n_s = 2: Phi = H' L H is the full-rank n_s x n_s form
    const std::vector<double> three{0.2, 0.5, 1.3};
    Rng rng({44, 4});
    double sum = 0.0;
    const int n = 200000;
    for (int t = 0; t < n; ++t) {
        ComplexMatrix h(3, 2);
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 2; ++c) h(r, c) = rng.next_cgauss();
        ComplexMatrix m(2, 2);
        for (int r = 0; r < 2; ++r)
            for (int c = r; c < 2; ++c) {
                std::complex<double> s{};
                for (int i = 0; i < 3; ++i) s += three[i] * std::conj(h(i, r)) * h(i, c);
                m(r, c) = s;
                if (r != c) m(c, r) = std::conj(s);
            }
        sum += ln_det_hpd(m);
    }
    CHECK(conditional_expected_logdet(three, 2) == doctest::Approx(sum / n).epsilon(2e-3));
    const std::vector<double> bad{0.3, 0.3};
    CHECK_THROWS_AS(conditional_expected_logdet(bad, 2), degenerate_spectrum_error);
}

TEST_SUITE_END();
