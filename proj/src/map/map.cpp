#include <collapse/map/map.hpp>

#include <cmath>

namespace collapse {

template <class T>
ZkParameter<T> zk_parameter(const BasicRelativeConfig<T>& cfg) {
    T eta2 = dot(cfg.w2, cfg.omega2);
    if (eta2 == 0) throw UndefinedParameterError("zeta is undefined when eta2 = 0");
    T one_d = T(1) + cfg.gap;
    return {cfg.gap * (T(2) + cfg.gap) * norm2(cfg.w2) / (one_d * one_d * eta2 * eta2)};
}

template <class T>
T collision_time(const BasicRelativeConfig<T>& cfg) {
    using std::sqrt;
    T eta2 = dot(cfg.w2, cfg.omega2);
    if (!(eta2 < 0)) throw NoCollisionError("no collision: eta2 >= 0");
    T zeta = zk_parameter(cfg).zeta;
    if (!(zeta < 1)) throw NoCollisionError("no collision: zeta >= 1");
    // (1+d)(-eta2)/|W2|^2 * zeta = d(2+d)/((1+d)(-eta2))
    return cfg.gap * (T(2) + cfg.gap) / ((T(1) + cfg.gap) * (-eta2) * (T(1) + sqrt(T(1) - zeta)));
}

template <class T>
BasicMapStep<T> apply_map(const BasicRelativeConfig<T>& cfg, const Restitution& r) {
    using std::sqrt;
    const T eta1 = dot(cfg.w1, cfg.omega1);
    const T eta2 = dot(cfg.w2, cfg.omega2);
    if (!(eta1 > 0)) throw MapDomainError("map domain requires eta1 > 0");
    if (!(eta2 < 0)) throw MapDomainError("map domain requires eta2 < 0");
    if (!(zk_parameter(cfg).zeta < 1)) throw MapDomainError("map domain requires zeta < 1");

    const T rr(r.value());
    const T half = (T(1) + rr) / T(2);
    const T one_d = T(1) + cfg.gap;
    const T tau = collision_time(cfg);
    const T w1sq = norm2(cfg.w1);
    const T w2sq = norm2(cfg.w2);

    BasicVec<T> omega2p = one_d * cfg.omega2;
    omega2p.add_scaled(tau, cfg.w2);

    const T growth = T(2) * eta1 * tau + w1sq * tau * tau;
    const T gap_p = growth / (sqrt(T(1) + growth) + T(1));
    BasicVec<T> omega1p = cfg.omega1;
    omega1p.add_scaled(tau, cfg.w1);
    omega1p /= T(1) + gap_p;

    const T lambda = one_d * eta2 + tau * w2sq;  // W2 . omega2'
    BasicVec<T> w2p = cfg.w2;
    w2p.add_scaled(-(T(1) + rr) * lambda, omega2p);
    BasicVec<T> w1p = cfg.w1;
    w1p.add_scaled(-half * lambda, omega2p);

    const T cosp = dot(omega1p, omega2p);
    BasicMapStep<T> step;
    step.input = cfg;
    step.tau = tau;
    step.output = {cfg.dim, omega1p, w1p, gap_p, omega2p, w2p};
    step.eta1_post = (eta1 + tau * w1sq) / (T(1) + gap_p) - half * cosp * lambda;
    step.eta2_post = -rr * one_d * eta2 - rr * tau * w2sq;
    step.cos_angle_post = cosp;
    return step;
}

template <class T>
BasicRelativeConfig<T> swap_roles(const BasicRelativeConfig<T>& cfg) {
    return {cfg.dim, cfg.omega2, cfg.w2, cfg.gap, cfg.omega1, cfg.w1};
}

std::pair<double, double> flat_surface_step(double eta1, double eta2, double cos_theta_bar,
                                            const Restitution& r) {
    const double rr = r.value();
    return {eta1 - (1.0 + rr) / 2.0 * cos_theta_bar * eta2, -rr * eta2};
}

template <class T>
MapTrajectory<T> iterate_map(const BasicRelativeConfig<T>& cfg, const Restitution& r, long max_steps,
                             double degenerate_gap) {
    MapTrajectory<T> traj;
    BasicRelativeConfig<T> cur = cfg;
    const T floor = T(degenerate_gap) * machine_epsilon<T>();
    for (long n = 0; n < max_steps; ++n) {
        if (cur.gap < floor) {
            traj.end = MapIterationEnd::degenerate_gap;
            return traj;
        }
        try {
            traj.steps.push_back(apply_map(cur, r));
        } catch (const MapDomainError&) {
            traj.end = MapIterationEnd::left_domain;
            return traj;
        }
        cur = swap_roles(traj.steps.back().output);
    }
    traj.end = MapIterationEnd::completed;
    return traj;
}

#define COLLAPSE_INSTANTIATE(T)                                                                \
    template ZkParameter<T> zk_parameter(const BasicRelativeConfig<T>&);                       \
    template T collision_time(const BasicRelativeConfig<T>&);                                  \
    template BasicMapStep<T> apply_map(const BasicRelativeConfig<T>&, const Restitution&);     \
    template BasicRelativeConfig<T> swap_roles(const BasicRelativeConfig<T>&);                 \
    template MapTrajectory<T> iterate_map(const BasicRelativeConfig<T>&, const Restitution&, long, \
                                          double);

COLLAPSE_INSTANTIATE(double)
COLLAPSE_INSTANTIATE(HighPrecision)

}  // namespace collapse
