// SPDX-License-Identifier: Apache-2.0
// Part of afcap, an ergodic-capacity analysis toolkit for amplify-and-forward
// MIMO dual-hop relay channels.

#pragma once

#include <optional>
#include <utility>

#include "afcap/eigenstats.hpp"
#include "afcap/mcoracle.hpp"
#include "afcap/quadrature.hpp"
#include "afcap/system_config.hpp"

namespace afcap {

enum class Method { exact, upper, lower, high_snr_affine, fixed_alpha_limit, monte_carlo };

/// One (rho, value) capacity evaluation in bits/s/Hz.
struct CapacityPoint {
    double rho = 0.0;
    double value = 0.0;
    Method method = Method::exact;
    std::optional<double> std_error;  // present iff method == monte_carlo
};

/// High-SNR slope (bits/s/Hz per 3 dB) and power offset. The offset is
/// stored in 3-dB units; offset_db() applies the dB conversion used by the
/// reference tables.
struct HighSnrChar {
    double slope = 0.0;
    double offset_3db = 0.0;
    double beta = 1.0;  // alpha / rho coupling
    double offset_db() const;
};

/// dB value of one 3-dB unit as used when reporting offsets in dB.
double three_db_unit_in_db();

/// Exact ergodic capacity (s/2) integral of log2(1 + rho a lambda / n_s)
/// against the unordered eigenvalue density, term-by-term under lambda = u^2.
CapacityPoint exact_capacity(const SystemConfig& cfg, const QuadratureSpec& quad = {});

/// Slope s/2 and power offset for alpha, rho -> infinity with alpha/rho = beta.
/// When q = s the quadruple-sum form is evaluated as well and the two are
/// required to agree to 1e-6.
HighSnrChar high_snr_char(int n_s, int n_r, int n_d, double beta);

/// Affine expansion slope * (log2 rho - offset), floored at zero.
CapacityPoint high_snr_affine(const HighSnrChar& ch, double rho);

/// Offset reduction, in dB, from adding k destination antennas to a
/// (1, 1, n_d) system. Always negative.
double offset_shift_db(int n_d, int k, double beta);

/// Capacity limit for rho -> infinity at fixed relay gain alpha.
CapacityPoint fixed_alpha_limit(const SystemConfig& cfg, const QuadratureSpec& quad = {});

/// Jensen upper bound (1/2) log2 E det(I + (rho a / n_s) Htilde' L Htilde).
CapacityPoint upper_bound(const SystemConfig& cfg);
/// Closed form of the upper bound for n_r = 1.
CapacityPoint upper_bound_nr1(int n_s, int n_d, double alpha, double rho);
/// rho -> infinity limit of the upper bound at fixed alpha.
CapacityPoint upper_bound_highsnr(const SystemConfig& cfg);

/// Exponential-of-expected-log lower bound.
CapacityPoint lower_bound(const SystemConfig& cfg);
/// Closed form of the lower bound for n_r = 1.
CapacityPoint lower_bound_nr1(int n_s, int n_d, double alpha, double rho);
/// rho -> infinity limit of the lower bound at fixed alpha.
CapacityPoint lower_bound_highsnr(const SystemConfig& cfg);

enum class AsymptoticRegime { nr_large, ns_large, nd_large, alpha_large };

/// Evaluates the dual-hop capacity next to the single-hop capacity it should
/// approach in the given asymptotic regime. The dual-hop side uses the exact
/// series for q <= 8 and Monte Carlo beyond; the single-hop side always comes
/// from the Monte Carlo oracle with the regime's SNR mapping.
std::pair<CapacityPoint, CapacityPoint> analogy_check(const SystemConfig& cfg,
                                                      AsymptoticRegime regime,
                                                      long n_trials, RngStream stream);

}  // namespace afcap
