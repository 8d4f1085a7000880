#pragma once

#include <collapse/engine/engine.hpp>
#include <collapse/map/map.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace collapse {

enum class OrderKind { nearly_linear, triangular, finite, undetermined };
std::string order_kind_label(OrderKind k);

struct CollisionOrder {
    OrderKind kind = OrderKind::undetermined;
    std::optional<long> period_start_index;
    std::optional<int> central_particle;
};

struct PairCounting {
    Pair pair = Pair::p01;
    std::vector<long> indices;      // 1-based positions in the event sequence
    std::optional<long> max_gap;    // none with fewer than two collisions
    bool unbounded = false;         // trailing open gap already exceeds max_gap
};

struct GapReport {
    std::array<PairCounting, 3> per_pair;  // 01, 02, 12
};

struct ConvergenceReport {
    std::array<std::vector<double>, 3> eta_l2_partial_sums;    // per pair
    std::vector<double> tau_partial_sums;
    std::array<std::vector<double>, 3> omega_cauchy_residuals; // per pair, one per sample
    std::vector<double> gap_tail_log10;                        // log10 gap of the next colliding pair
    double tau_star_estimate = 0.0;
    std::optional<double> eta_decay_rate;
    bool finite_max_gaps = true;
};

struct ZkRegimeSample {
    double zeta;
    double phi1;  // eta1 / (-eta2)
    double phi2;  // gap / eta2^2
};

struct ZkRegimeReport {
    std::vector<ZkRegimeSample> samples;
    bool zeta_decreasing = true;
    double max_zeta_ratio = 0.0;  // max zeta_{n+1} / zeta_n
};

struct BoundedRatioReport {
    std::string name;
    std::vector<double> window_max;
    bool bounded = true;
};

GapReport counting_functions(const std::vector<Pair>& sequence);

template <class T>
GapReport counting_functions(const std::vector<BasicCollisionEvent<T>>& events);

// termination, when given, overrides pattern detection for runs that did
// not end in a detected collapse.
CollisionOrder classify_order(const std::vector<Pair>& sequence, int min_periods = 10,
                              std::optional<Termination> termination = std::nullopt);

template <class T>
CollisionOrder classify_order(const std::vector<BasicCollisionEvent<T>>& events, int min_periods = 10,
                              std::optional<Termination> termination = std::nullopt);

// Least squares slope of log|eta_pre| over the trailing half, as a ratio per event.
template <class T>
std::optional<double> fit_decay_rate(const std::vector<BasicCollisionEvent<T>>& events);

// trajectory: initial state then the state after each event (may be empty).
template <class T>
ConvergenceReport convergence_report(const std::vector<BasicCollisionEvent<T>>& events,
                                     const std::vector<BasicSystemState<T>>& trajectory,
                                     int tail_window = 64);

template <class T>
ZkRegimeReport zk_regime_report(const std::vector<BasicMapStep<T>>& steps);

BoundedRatioReport bounded_ratio(const std::string& name, const std::vector<double>& values,
                                 std::size_t window = 128, double growth = 0.05);

// The three single-step comparisons and the two non-vanishing-velocity ratios.
template <class T>
std::vector<BoundedRatioReport> asymptotic_diagnostics(const std::vector<BasicMapStep<T>>& steps,
                                                       std::size_t window = 128,
                                                       double growth = 0.05);

std::vector<Pair> pair_sequence_from_labels(const std::vector<std::string>& labels);

template <class T>
std::vector<Pair> pair_sequence(const std::vector<BasicCollisionEvent<T>>& events) {
    std::vector<Pair> out;
    out.reserve(events.size());
    for (const auto& e : events) out.push_back(e.pair);
    return out;
}

}  // namespace collapse
