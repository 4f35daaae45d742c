// SPDX-License-Identifier: Apache-2.0
// Part of afcap, an ergodic-capacity analysis toolkit for amplify-and-forward
// MIMO dual-hop relay channels.

#include "afcap/mcoracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace afcap {

namespace {

constexpr long kBlockTrials = 8192;

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

/// Stream used by shard k of a sharded run.
RngStream shard_stream(RngStream base, std::uint64_t k) {
    std::uint64_t x = base.stream_id;
    return {base.seed, splitmix64(x) + k};
}

void require_trials(long n) {
    if (n < 100) throw std::invalid_argument("Monte Carlo ops need n_trials >= 100");
}

// Neumaier-compensated scalar sum; merging blocks in index order keeps the
// result independent of the worker count.
struct CompSum {
    double s = 0.0, c = 0.0;
    void add(double v) {
        const double t = s + v;
        if (std::fabs(s) >= std::fabs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    void merge(const CompSum& o) {
        add(o.s);
        add(o.c);
    }
    double total() const { return s + c; }
};

struct MomentBlock {
    CompSum sum, sumsq;
    long n = 0, skipped = 0;
    void add(double v) {
        sum.add(v);
        sumsq.add(v * v);
        ++n;
    }
};

/// Runs `fn(block_index, first_trial, n_trials_in_block, rng)` over all blocks,
/// at most mc_worker_count() at a time, storing results per block index.
template <typename Block, typename Fn>
std::vector<Block> run_blocks(long n_trials, RngStream stream, Fn&& fn) {
    const long n_blocks = (n_trials + kBlockTrials - 1) / kBlockTrials;
    std::vector<Block> blocks(static_cast<size_t>(n_blocks));
    const int workers = std::min<long>(mc_worker_count(), n_blocks);
    std::atomic<long> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    auto work = [&] {
        for (;;) {
            const long b = next.fetch_add(1);
            if (b >= n_blocks) return;
            try {
                const long lo = b * kBlockTrials;
                const long cnt = std::min(kBlockTrials, n_trials - lo);
                Rng rng(shard_stream(stream, static_cast<std::uint64_t>(b)));
                fn(blocks[static_cast<size_t>(b)], cnt, rng);
            } catch (...) {
                std::lock_guard<std::mutex> lk(err_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return blocks;
}

McEstimate merge_moments(const std::vector<MomentBlock>& blocks) {
    CompSum sum, sumsq;
    long n = 0;
    for (const MomentBlock& b : blocks) {
        sum.merge(b.sum);
        sumsq.merge(b.sumsq);
        n += b.n;
    }
    McEstimate est;
    est.n_trials = n;
    est.mean = sum.total() / n;
    const double var = std::max(0.0, (sumsq.total() - n * est.mean * est.mean) / (n - 1.0));
    est.stderr_ = std::sqrt(var / n);
    return est;
}

ComplexMatrix draw_matrix(Rng& rng, int rows, int cols) {
    ComplexMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = rng.next_cgauss();
    return m;
}

// The diagonal of L: lambda_i^2 / (1 + a lambda_i^2) for the q eigenvalues of
// the second-hop Gram matrix, ascending.
std::vector<double> draw_l_diag(const SystemConfig& cfg, Rng& rng) {
    const ComplexMatrix h2 = draw_matrix(rng, cfg.n_d, cfg.n_r);
    const ComplexMatrix w = (cfg.n_r <= cfg.n_d) ? gram_ata(h2) : gram_aat(h2);
    std::vector<double> ev = hermitian_eigenvalues(w);
    const double a = cfg.a();
    for (double& v : ev) {
        v = std::max(v, 0.0);
        v = v / (1.0 + a * v);
    }
    return ev;
}

// Htilde' L Htilde with Htilde q x n_s.
ComplexMatrix cascade_matrix(const std::vector<double>& l_diag, const ComplexMatrix& h) {
    const int q = h.rows(), ns = h.cols();
    ComplexMatrix out(ns, ns);
    for (int r = 0; r < ns; ++r)
        for (int c = r; c < ns; ++c) {
            std::complex<double> s = 0.0;
            for (int i = 0; i < q; ++i) s += l_diag[i] * std::conj(h(i, r)) * h(i, c);
            out(r, c) = s;
            out(c, r) = std::conj(s);
        }
    return out;
}

}  // namespace

Rng::Rng(RngStream stream) {
    std::uint64_t x = stream.seed ^ (0x632BE59BD9B4E019ULL +
                                     0x9E3779B97F4A7C15ULL * (stream.stream_id + 1));
    for (auto& w : s_) w = splitmix64(x);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::next_uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

double Rng::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, r2;
    do {
        u = 2.0 * next_uniform() - 1.0;
        v = 2.0 * next_uniform() - 1.0;
        r2 = u * u + v * v;
    } while (r2 >= 1.0 || r2 == 0.0);
    const double m = std::sqrt(-2.0 * std::log(r2) / r2);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
}

std::complex<double> Rng::next_cgauss() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

void sample_channels_into(const SystemConfig& cfg, Rng& rng, ComplexMatrix& h1,
                          ComplexMatrix& h2) {
    h1 = draw_matrix(rng, cfg.n_r, cfg.n_s);
    h2 = draw_matrix(rng, cfg.n_d, cfg.n_r);
}

std::pair<ComplexMatrix, ComplexMatrix> sample_channels(const SystemConfig& cfg,
                                                        RngStream stream) {
    cfg.validate();
    Rng rng(stream);
    ComplexMatrix h1, h2;
    sample_channels_into(cfg, rng, h1, h2);
    return {std::move(h1), std::move(h2)};
}

namespace {

double capacity_one_draw(const SystemConfig& cfg, Rng& rng) {
    const double a = cfg.a();
    const double c = cfg.rho * a / cfg.n_s;
    ComplexMatrix h1, h2;
    sample_channels_into(cfg, rng, h1, h2);
    ComplexMatrix rn = gram_aat(h2);
    for (int i = 0; i < rn.rows(); ++i)
        for (int j = 0; j < rn.cols(); ++j) rn(i, j) = a * rn(i, j) + (i == j ? 1.0 : 0.0);
    if (!cholesky_in_place(rn))
        throw std::runtime_error("mc_capacity: R_n factorization failed");
    ComplexMatrix y = multiply(h2, h1);
    forward_solve_in_place(rn, y);
    ComplexMatrix inner = gram_ata(y);
    for (int i = 0; i < inner.rows(); ++i)
        for (int j = 0; j < inner.cols(); ++j)
            inner(i, j) = c * inner(i, j) + (i == j ? 1.0 : 0.0);
    return 0.5 * ln_det_hpd(std::move(inner)) / std::numbers::ln2;
}

}  // namespace

McEstimate mc_capacity(const SystemConfig& cfg, long n_trials, RngStream stream) {
    cfg.validate();
    require_trials(n_trials);
    auto blocks = run_blocks<MomentBlock>(n_trials, stream, [&](MomentBlock& b, long cnt, Rng& rng) {
        for (long t = 0; t < cnt; ++t) b.add(capacity_one_draw(cfg, rng));
    });
    return merge_moments(blocks);
}

std::pair<double, double> capacity_draw_two_routes(const SystemConfig& cfg, Rng& rng) {
    const double a = cfg.a();
    const double c = cfg.rho * a / cfg.n_s;
    ComplexMatrix h1, h2;
    sample_channels_into(cfg, rng, h1, h2);
    const ComplexMatrix m = multiply(h2, h1);

    ComplexMatrix rn = gram_aat(h2);
    for (int i = 0; i < rn.rows(); ++i)
        for (int j = 0; j < rn.cols(); ++j) rn(i, j) = a * rn(i, j) + (i == j ? 1.0 : 0.0);

    // route 1: n_s x n_s whitened form
    ComplexMatrix l = rn;
    if (!cholesky_in_place(l)) throw std::runtime_error("R_n factorization failed");
    ComplexMatrix y = m;
    forward_solve_in_place(l, y);
    ComplexMatrix inner = gram_ata(y);
    for (int i = 0; i < inner.rows(); ++i)
        for (int j = 0; j < inner.cols(); ++j)
            inner(i, j) = c * inner(i, j) + (i == j ? 1.0 : 0.0);
    const double route1 = 0.5 * ln_det_hpd(std::move(inner)) / std::numbers::ln2;

    // route 2: ln det(R_n + R_s) - ln det(R_n) on the n_d x n_d side
    ComplexMatrix rs = gram_aat(m);
    ComplexMatrix both = rn;
    for (int i = 0; i < both.rows(); ++i)
        for (int j = 0; j < both.cols(); ++j) both(i, j) += c * rs(i, j);
    const double route2 =
        0.5 * (ln_det_hpd(std::move(both)) - ln_det_hpd(std::move(rn))) / std::numbers::ln2;
    return {route1, route2};
}

std::vector<double> mc_cascade_eigenvalues(const SystemConfig& cfg, long n_trials,
                                           RngStream stream) {
    cfg.validate();
    require_trials(n_trials);
    const int s = cfg.s();
    struct EigBlock {
        std::vector<double> samples;
    };
    auto blocks = run_blocks<EigBlock>(n_trials, stream, [&](EigBlock& b, long cnt, Rng& rng) {
        b.samples.reserve(static_cast<size_t>(cnt) * s);
        for (long t = 0; t < cnt; ++t) {
            const std::vector<double> l = draw_l_diag(cfg, rng);
            const ComplexMatrix h = draw_matrix(rng, cfg.q(), cfg.n_s);
            std::vector<double> ev = hermitian_eigenvalues(cascade_matrix(l, h));
            for (int i = cfg.n_s - s; i < cfg.n_s; ++i)
                b.samples.push_back(std::max(ev[static_cast<size_t>(i)], 0.0));
        }
    });
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n_trials) * s);
    for (auto& b : blocks) out.insert(out.end(), b.samples.begin(), b.samples.end());
    return out;
}

McEstimate mc_expected_det(const SystemConfig& cfg, long n_trials, RngStream stream) {
    cfg.validate();
    require_trials(n_trials);
    const double c = cfg.rho * cfg.a() / cfg.n_s;
    auto blocks = run_blocks<MomentBlock>(n_trials, stream, [&](MomentBlock& b, long cnt, Rng& rng) {
        for (long t = 0; t < cnt; ++t) {
            const std::vector<double> l = draw_l_diag(cfg, rng);
            const ComplexMatrix h = draw_matrix(rng, cfg.q(), cfg.n_s);
            ComplexMatrix m = cascade_matrix(l, h);
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j)
                    m(i, j) = c * m(i, j) + (i == j ? 1.0 : 0.0);
            b.add(std::exp(ln_det_hpd(std::move(m))));
        }
    });
    return merge_moments(blocks);
}

McEstimate mc_expected_logdet(const SystemConfig& cfg, long n_trials, RngStream stream) {
    cfg.validate();
    require_trials(n_trials);
    const bool wide = cfg.q() >= cfg.n_s;  // Phi = Htilde' L Htilde, else L Htilde Htilde'
    auto blocks = run_blocks<MomentBlock>(n_trials, stream, [&](MomentBlock& b, long cnt, Rng& rng) {
        for (long t = 0; t < cnt; ++t) {
            const std::vector<double> l = draw_l_diag(cfg, rng);
            const ComplexMatrix h = draw_matrix(rng, cfg.q(), cfg.n_s);
            try {
                double v;
                if (wide) {
                    v = ln_det_hpd(cascade_matrix(l, h));
                } else {
                    v = ln_det_hpd(gram_aat(h));
                    for (double li : l) v += std::log(li);
                }
                b.add(v);
            } catch (const std::runtime_error&) {
                ++b.skipped;  // singular draw has probability zero
            }
        }
    });
    return merge_moments(blocks);
}

McEstimate mc_single_hop_capacity(int n_t, int n_r, double snr, long n_trials,
                                  RngStream stream) {
    if (n_t < 1 || n_r < 1 || snr < 0.0)
        throw std::invalid_argument("mc_single_hop_capacity: invalid arguments");
    require_trials(n_trials);
    const double c = snr / n_t;
    auto blocks = run_blocks<MomentBlock>(n_trials, stream, [&](MomentBlock& b, long cnt, Rng& rng) {
        for (long t = 0; t < cnt; ++t) {
            const ComplexMatrix h = draw_matrix(rng, n_r, n_t);
            ComplexMatrix m = gram_aat(h);
            for (int i = 0; i < n_r; ++i)
                for (int j = 0; j < n_r; ++j) m(i, j) = c * m(i, j) + (i == j ? 1.0 : 0.0);
            b.add(ln_det_hpd(std::move(m)) / std::numbers::ln2);
        }
    });
    return merge_moments(blocks);
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.size() < 2)
        throw std::invalid_argument("ks_statistic: need at least two samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

int mc_worker_count() {
    if (const char* env = std::getenv("AFCAP_MAX_WORKERS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

}  // namespace afcap
