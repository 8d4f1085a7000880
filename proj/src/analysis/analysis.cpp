#include <collapse/analysis/analysis.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace collapse {

std::string order_kind_label(OrderKind k) {
    switch (k) {
        case OrderKind::nearly_linear: return "nearly-linear";
        case OrderKind::triangular: return "triangular";
        case OrderKind::finite: return "finite";
        case OrderKind::undetermined: return "undetermined";
    }
    return "undetermined";
}

std::vector<Pair> pair_sequence_from_labels(const std::vector<std::string>& labels) {
    std::vector<Pair> out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(pair_from_label(l));
    return out;
}

GapReport counting_functions(const std::vector<Pair>& sequence) {
    GapReport rep;
    const Pair all[3] = {Pair::p01, Pair::p02, Pair::p12};
    for (int k = 0; k < 3; ++k) rep.per_pair[k].pair = all[k];
    for (std::size_t n = 0; n < sequence.size(); ++n)
        rep.per_pair[int(sequence[n])].indices.push_back(long(n) + 1);
    const long total = long(sequence.size());
    for (auto& pc : rep.per_pair) {
        for (std::size_t k = 1; k < pc.indices.size(); ++k) {
            long g = pc.indices[k] - pc.indices[k - 1];
            if (!pc.max_gap || g > *pc.max_gap) pc.max_gap = g;
        }
        if (pc.max_gap) pc.unbounded = (total + 1 - pc.indices.back()) > *pc.max_gap;
    }
    return rep;
}

template <class T>
GapReport counting_functions(const std::vector<BasicCollisionEvent<T>>& events) {
    return counting_functions(pair_sequence(events));
}

namespace {

int shared_particle(Pair a, Pair b) {
    auto pa = pair_particles(a);
    auto pb = pair_particles(b);
    for (int i : pa)
        for (int j : pb)
            if (i == j) return i;
    return -1;
}

// Start of the longest suffix with seq[k] == seq[k - p], or -1.
long periodic_start(const std::vector<Pair>& seq, int p) {
    const long n = long(seq.size());
    if (n < p) return -1;
    long k0 = n;
    while (k0 - 1 >= p && seq[k0 - 1] == seq[k0 - 1 - p]) --k0;
    return k0 - p;
}

}  // namespace

CollisionOrder classify_order(const std::vector<Pair>& sequence, int min_periods,
                              std::optional<Termination> termination) {
    CollisionOrder order;
    if (termination && *termination != Termination::collapse_detected) {
        order.kind = *termination == Termination::separation ? OrderKind::finite : OrderKind::undetermined;
        return order;
    }
    const long n = long(sequence.size());

    long s2 = periodic_start(sequence, 2);
    if (s2 >= 0 && sequence[s2] != sequence[s2 + 1] && n - s2 >= 2L * min_periods) {
        order.kind = OrderKind::nearly_linear;
        order.period_start_index = s2;
        order.central_particle = shared_particle(sequence[s2], sequence[s2 + 1]);
        return order;
    }
    long s3 = periodic_start(sequence, 3);
    if (s3 >= 0 && n - s3 >= 3L * min_periods) {
        Pair a = sequence[s3], b = sequence[s3 + 1], c = sequence[s3 + 2];
        if (a != b && b != c && a != c) {
            order.kind = OrderKind::triangular;
            order.period_start_index = s3;
            return order;
        }
    }
    order.kind = OrderKind::undetermined;
    return order;
}

template <class T>
CollisionOrder classify_order(const std::vector<BasicCollisionEvent<T>>& events, int min_periods,
                              std::optional<Termination> termination) {
    return classify_order(pair_sequence(events), min_periods, termination);
}

namespace {

std::optional<double> fit_slope(const std::vector<double>& ys) {
    const std::size_t n = ys.size();
    if (n < 2) return std::nullopt;
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += double(i);
        my += ys[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (double(i) - mx) * (ys[i] - my);
        sxx += (double(i) - mx) * (double(i) - mx);
    }
    return sxy / sxx;
}

}  // namespace

template <class T>
std::optional<double> fit_decay_rate(const std::vector<BasicCollisionEvent<T>>& events) {
    const std::size_t n = events.size();
    if (n < 4) return std::nullopt;
    std::vector<double> logs;
    for (std::size_t k = n / 2; k < n; ++k) {
        double l = log10_abs(events[k].eta_pre);
        if (!std::isfinite(l)) return std::nullopt;
        logs.push_back(l);
    }
    auto slope = fit_slope(logs);
    if (!slope) return std::nullopt;
    return std::pow(10.0, *slope);
}

template <class T>
ConvergenceReport convergence_report(const std::vector<BasicCollisionEvent<T>>& events,
                                     const std::vector<BasicSystemState<T>>& trajectory,
                                     int tail_window) {
    ConvergenceReport rep;
    std::array<T, 3> eta_sum{T(0), T(0), T(0)};
    T tau_sum(0);
    for (const auto& e : events) {
        int k = int(e.pair);
        eta_sum[k] += e.eta_pre * e.eta_pre;
        rep.eta_l2_partial_sums[k].push_back(to_double(eta_sum[k]));
        tau_sum += e.tau;
        rep.tau_partial_sums.push_back(to_double(tau_sum));
    }

    if (!trajectory.empty()) {
        const auto& last = trajectory.back();
        for (Pair p : {Pair::p01, Pair::p02, Pair::p12}) {
            auto [i, j] = pair_particles(p);
            BasicVec<T> wl = last.x[j] - last.x[i];
            wl /= norm(wl);
            for (const auto& s : trajectory) {
                BasicVec<T> w = s.x[j] - s.x[i];
                w /= norm(w);
                rep.omega_cauchy_residuals[int(p)].push_back(to_double(norm(w - wl)));
            }
        }
        const std::size_t m = std::min(events.size(), trajectory.size());
        const std::size_t from = m > 50 ? m - 50 : 0;
        for (std::size_t n = from; n < m; ++n) {
            auto [i, j] = pair_particles(events[n].pair);
            rep.gap_tail_log10.push_back(log10_abs(norm(trajectory[n].x[j] - trajectory[n].x[i]) - T(1)));
        }
    }

    // Geometric tail bound, tightened monotonically once the window engages.
    const long n = long(events.size());
    rep.tau_star_estimate = n ? to_double(events.back().time) : 0.0;
    std::optional<T> best;
    for (long k = tail_window; k < n; ++k) {
        T rho(0);
        bool ok = true;
        for (long m = k - tail_window + 1; m <= k; ++m) {
            T ratio = events[m].tau / events[m - 1].tau;
            if (!(ratio < 1)) {
                ok = false;
                break;
            }
            if (ratio > rho) rho = ratio;
        }
        if (!ok) continue;
        T est = events[k].time + events[k].tau * rho / (T(1) - rho);
        if (!best || est < *best) best = est;
    }
    if (best) rep.tau_star_estimate = to_double(*best);

    rep.eta_decay_rate = fit_decay_rate(events);
    auto gaps = counting_functions(events);
    for (const auto& pc : gaps.per_pair)
        if (pc.unbounded) rep.finite_max_gaps = false;
    return rep;
}

template <class T>
ZkRegimeReport zk_regime_report(const std::vector<BasicMapStep<T>>& steps) {
    ZkRegimeReport rep;
    for (const auto& st : steps) {
        const auto& c = st.input;
        T eta1 = dot(c.w1, c.omega1);
        T eta2 = dot(c.w2, c.omega2);
        T zeta = eta2 == 0 ? T(0) : zk_parameter(c).zeta;
        rep.samples.push_back({to_double(zeta), to_double(eta1 / -eta2), to_double(c.gap / (eta2 * eta2))});
    }
    for (std::size_t k = 1; k < rep.samples.size(); ++k) {
        double prev = rep.samples[k - 1].zeta, cur = rep.samples[k].zeta;
        if (!(cur < prev)) rep.zeta_decreasing = false;
        if (prev > 0) rep.max_zeta_ratio = std::max(rep.max_zeta_ratio, cur / prev);
    }
    return rep;
}

BoundedRatioReport bounded_ratio(const std::string& name, const std::vector<double>& values,
                                 std::size_t window, double growth) {
    BoundedRatioReport rep;
    rep.name = name;
    for (std::size_t start = 0; start + window <= values.size(); start += window) {
        double m = 0.0;
        for (std::size_t k = start; k < start + window; ++k) {
            if (!std::isfinite(values[k])) m = std::numeric_limits<double>::infinity();
            else m = std::max(m, std::fabs(values[k]));
        }
        rep.window_max.push_back(m);
    }
    if (rep.window_max.empty() && !values.empty()) {
        double m = 0.0;
        for (double v : values) m = std::max(m, std::fabs(v));
        rep.window_max.push_back(m);
    }
    for (double m : rep.window_max)
        if (!std::isfinite(m)) rep.bounded = false;
    for (std::size_t k = 1; k < rep.window_max.size(); ++k)
        if (rep.window_max[k] > (1.0 + growth) * rep.window_max[k - 1]) rep.bounded = false;
    return rep;
}

template <class T>
std::vector<BoundedRatioReport> asymptotic_diagnostics(const std::vector<BasicMapStep<T>>& steps,
                                                       std::size_t window, double growth) {
    std::vector<double> gap_ratio, omega_ratio, perp_ratio, tau_ratio, phi2;
    for (const auto& st : steps) {
        const auto& in = st.input;
        const auto& out = st.output;
        T eta1 = dot(in.w1, in.omega1);
        T eta2 = dot(in.w2, in.omega2);
        gap_ratio.push_back(to_double(out.gap / (st.tau * (eta1 + st.tau))));
        omega_ratio.push_back(to_double(norm(out.omega1 - in.omega1) / st.tau));
        BasicVec<T> perp = in.w2;
        perp.add_scaled(-eta2, in.omega2);
        BasicVec<T> perp_post = in.w2;
        perp_post.add_scaled(-dot(in.w2, out.omega2), out.omega2);
        perp_ratio.push_back(
            to_double(norm(perp_post - perp) / (st.tau * eta2 * eta2 + st.tau * norm2(perp))));
        tau_ratio.push_back(to_double(st.tau / -eta2));
        phi2.push_back(to_double(in.gap / (eta2 * eta2)));
    }
    return {bounded_ratio("gap_next/(tau*(eta1+tau))", gap_ratio, window, growth),
            bounded_ratio("|omega1_next-omega1|/tau", omega_ratio, window, growth),
            bounded_ratio("|W2perp_next-W2perp|/(tau*eta2^2+tau*|W2perp|^2)", perp_ratio, window, growth),
            bounded_ratio("tau/(-eta2)", tau_ratio, window, growth),
            bounded_ratio("gap/eta2^2", phi2, window, growth)};
}

#define COLLAPSE_INSTANTIATE(T)                                                                        \
    template GapReport counting_functions(const std::vector<BasicCollisionEvent<T>>&);                 \
    template CollisionOrder classify_order(const std::vector<BasicCollisionEvent<T>>&, int,            \
                                           std::optional<Termination>);                                \
    template std::optional<double> fit_decay_rate(const std::vector<BasicCollisionEvent<T>>&);         \
    template ConvergenceReport convergence_report(const std::vector<BasicCollisionEvent<T>>&,          \
                                                  const std::vector<BasicSystemState<T>>&, int);       \
    template ZkRegimeReport zk_regime_report(const std::vector<BasicMapStep<T>>&);                     \
    template std::vector<BoundedRatioReport> asymptotic_diagnostics(const std::vector<BasicMapStep<T>>&, \
                                                                    std::size_t, double);

COLLAPSE_INSTANTIATE(double)
COLLAPSE_INSTANTIATE(HighPrecision)

}  // namespace collapse
