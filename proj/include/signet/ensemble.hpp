#ifndef SIGNET_ENSEMBLE_HPP
#define SIGNET_ENSEMBLE_HPP

#include "signet/spectral.hpp"

#include <boost/math/distributions/lognormal.hpp>
#include <boost/math/distributions/normal.hpp>

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace signet {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    return mix64(state);
}

/// Counter-derived stream: the draw sequence for sample i depends only on
/// (seed, i), never on which worker runs it. The stream id is avalanched
/// into the start state; deriving it additively would put every stream on
/// one shifted splitmix orbit.
class SampleRng {
public:
    SampleRng(std::uint64_t seed, std::uint64_t stream) {
        state_ = mix64(mix64(seed + 0x9E3779B97F4A7C15ull) ^
                       (0xD1342543DE82EF95ull * (stream + 1)));
    }
    double uniform01() {
        return static_cast<double>(splitmix64(state_) >> 11) * 0x1.0p-53;
    }
    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::uint64_t state_;
};

inline int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SIGNET_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace detail

/// Signed Erdos-Renyi ensemble: independent X_ij ~ Bern(p+), Y_ij ~ Bern(p-)
/// per unordered pair, weight gamma_ij = X_ij - Y_ij (pairs with gamma = 0
/// carry no edge).
struct EnsembleConfig {
    int n = 10;
    double p_plus = 0.5;
    double p_minus = 0.2;
    int samples = 1000;
    std::uint64_t seed = 0;
    enum class Method { Polynomial, Bisection } t_star_method = Method::Polynomial;
    int threads = 0; // 0: SIGNET_THREADS env or hardware concurrency

    bool valid() const {
        return n >= 2 && p_plus >= 0 && p_plus <= 1 && p_minus >= 0 && p_minus <= 1 && samples >= 1;
    }
};

struct EnsembleRecord {
    int sample = 0;
    bool accepted = false;
    enum class Rejection { None, PositivePartDisconnected, NegativePartEmpty } rejection =
        Rejection::None;
    double t_star = 0.0; // meaningful when accepted
};

struct DistributionSummary {
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation (n-1)
    int count = 0;
    std::vector<double> sorted_samples;
    std::vector<double> normalized; // (x - mean)/stddev, sorted
};

struct EnsembleResult {
    std::vector<EnsembleRecord> records;
    DistributionSummary summary;
};

template <class Config>
SignedGraph<Rational> sample_graph(const Config& config, int sample_index) {
    if (!config.valid()) throw PreconditionError("invalid ensemble configuration");
    detail::SampleRng rng(config.seed, static_cast<std::uint64_t>(sample_index));
    std::vector<SignedEdge<Rational>> edges;
    for (int i = 0; i < config.n; ++i) {
        for (int j = i + 1; j < config.n; ++j) {
            const int x = rng.bernoulli(config.p_plus) ? 1 : 0;
            const int y = rng.bernoulli(config.p_minus) ? 1 : 0;
            const int gamma = x - y;
            if (gamma != 0) edges.push_back({i, j, Rational(gamma)});
        }
    }
    return SignedGraph<Rational>::simple(config.n, std::move(edges));
}

inline DistributionSummary summarize(std::vector<double> samples) {
    DistributionSummary s;
    std::sort(samples.begin(), samples.end());
    s.count = static_cast<int>(samples.size());
    s.sorted_samples = std::move(samples);
    if (s.count == 0) return s;
    double sum = 0;
    for (double x : s.sorted_samples) sum += x;
    s.mean = sum / s.count;
    if (s.count > 1) {
        double ss = 0;
        for (double x : s.sorted_samples) ss += (x - s.mean) * (x - s.mean);
        s.stddev = std::sqrt(ss / (s.count - 1));
    }
    if (s.stddev > 0) {
        s.normalized.reserve(s.sorted_samples.size());
        for (double x : s.sorted_samples) s.normalized.push_back((x - s.mean) / s.stddev);
    }
    return s;
}

/// Samples, conditions on G+ connected and G- nonempty, and computes t* for
/// every accepted draw. Reproducible for a fixed (config, seed) no matter how
/// many workers run.
inline EnsembleResult run_ensemble(const EnsembleConfig& config) {
    if (!config.valid()) throw PreconditionError("invalid ensemble configuration");
    EnsembleResult result;
    result.records.assign(static_cast<std::size_t>(config.samples), {});

    const int n_threads = std::min(detail::resolve_thread_count(config.threads), config.samples);
    std::atomic<int> next{0};
    const auto worker = [&]() {
        while (true) {
            const int i = next.fetch_add(1);
            if (i >= config.samples) break;
            EnsembleRecord rec;
            rec.sample = i;
            const SignedGraph<Rational> g = sample_graph(config, i);
            if (components(positive_part(g)).n_components > 1) {
                rec.rejection = EnsembleRecord::Rejection::PositivePartDisconnected;
            } else if (!g.has_negative_edges()) {
                rec.rejection = EnsembleRecord::Rejection::NegativePartEmpty;
            } else {
                rec.accepted = true;
                rec.t_star = config.t_star_method == EnsembleConfig::Method::Polynomial
                                 ? t_star(g).value
                                 : t_star_bisection(to_real(g)).value;
            }
            result.records[static_cast<std::size_t>(i)] = rec;
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::vector<double> accepted;
    for (const auto& rec : result.records)
        if (rec.accepted) accepted.push_back(rec.t_star);
    result.summary = summarize(std::move(accepted));
    return result;
}

enum class QQReference { Normal, LogNormal };

/// Reference-vs-sample quantile pairs at plotting positions (i - 0.5)/n.
/// The reference is moment-matched (to the samples for Normal, to their logs
/// for LogNormal) so agreement shows up as a unit-slope line.
inline std::vector<std::pair<double, double>> qq_data(const DistributionSummary& summary,
                                                      QQReference reference) {
    if (summary.count < 10) throw TooFewSamplesError();
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(summary.sorted_samples.size());
    const int n = summary.count;
    if (reference == QQReference::Normal) {
        boost::math::normal_distribution<double> dist(summary.mean,
                                                      summary.stddev > 0 ? summary.stddev : 1.0);
        for (int i = 0; i < n; ++i) {
            const double p = (i + 0.5) / n;
            pairs.emplace_back(boost::math::quantile(dist, p),
                               summary.sorted_samples[static_cast<std::size_t>(i)]);
        }
        return pairs;
    }
    double log_mean = 0;
    for (double x : summary.sorted_samples) {
        if (x <= 0) throw PreconditionError("lognormal reference requires positive samples");
        log_mean += std::log(x);
    }
    log_mean /= n;
    double log_var = 0;
    for (double x : summary.sorted_samples) {
        const double d = std::log(x) - log_mean;
        log_var += d * d;
    }
    const double log_sd = n > 1 ? std::sqrt(log_var / (n - 1)) : 1.0;
    boost::math::lognormal_distribution<double> dist(log_mean, log_sd > 0 ? log_sd : 1.0);
    for (int i = 0; i < n; ++i) {
        const double p = (i + 0.5) / n;
        pairs.emplace_back(boost::math::quantile(dist, p),
                           summary.sorted_samples[static_cast<std::size_t>(i)]);
    }
    return pairs;
}

} // namespace signet

#endif // SIGNET_ENSEMBLE_HPP
