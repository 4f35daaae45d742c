// SPDX-License-Identifier: Apache-2.0
// Part of afcap, an ergodic-capacity analysis toolkit for amplify-and-forward
// MIMO dual-hop relay channels.

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "afcap/matrix.hpp"
#include "afcap/system_config.hpp"

namespace afcap {

/// Identifies a reproducible random stream. The pair (seed, stream_id) fully
/// determines every sample an oracle draws; distinct stream ids give
/// statistically independent streams.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

/// xoshiro256++ generator seeded through splitmix64 from an RngStream.
/// Gaussian variates come from the polar method, so the sequence is a pure
/// function of the stream and reproduces bit-for-bit across runs.
class Rng {
public:
    explicit Rng(RngStream stream);

    std::uint64_t next_u64();
    double next_uniform();   // [0, 1), 53-bit
    double next_gaussian();  // standard normal
    std::complex<double> next_cgauss();  // complex, unit total variance

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Monte Carlo estimate with its standard error (sample std / sqrt(n)).
struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    long n_trials = 0;
};

/// Draw the two hop matrices: H1 is n_r x n_s, H2 is n_d x n_r, entries
/// iid complex Gaussian with unit variance.
std::pair<ComplexMatrix, ComplexMatrix> sample_channels(const SystemConfig& cfg,
                                                        RngStream stream);
void sample_channels_into(const SystemConfig& cfg, Rng& rng, ComplexMatrix& h1,
                          ComplexMatrix& h2);

/// Brute-force ergodic capacity: per trial
/// (1/2) log2 det(I + (rho a / n_s) H1' H2' Rn^{-1} H2 H1), Rn = I + a H2 H2'.
McEstimate mc_capacity(const SystemConfig& cfg, long n_trials, RngStream stream);

/// One channel draw evaluated through both determinant routes:
/// first through the n_s x n_s whitened form, second through
/// ln det(Rn + Rs) - ln det(Rn). The two agree per draw by det(I+AB)=det(I+BA).
std::pair<double, double> capacity_draw_two_routes(const SystemConfig& cfg, Rng& rng);

/// Pooled samples of the s largest eigenvalues of the cascaded matrix
/// Htilde' L Htilde across n_trials draws (n_trials * s values).
std::vector<double> mc_cascade_eigenvalues(const SystemConfig& cfg, long n_trials,
                                           RngStream stream);

/// Sample mean of det(I + (rho a / n_s) Htilde' L Htilde).
McEstimate mc_expected_det(const SystemConfig& cfg, long n_trials, RngStream stream);

/// Sample mean of ln det Phi with the q >= n_s / q < n_s case split.
McEstimate mc_expected_logdet(const SystemConfig& cfg, long n_trials, RngStream stream);

/// Single-hop MIMO ergodic capacity E log2 det(I + (snr/n_t) H H').
McEstimate mc_single_hop_capacity(int n_t, int n_r, double snr, long n_trials,
                                  RngStream stream);

/// Kolmogorov-Smirnov statistic between samples and an analytic CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Worker cap for sharded Monte Carlo runs; reads AFCAP_MAX_WORKERS.
int mc_worker_count();

}  // namespace afcap
