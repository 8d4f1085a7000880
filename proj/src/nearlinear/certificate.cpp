#include <collapse/nearlinear/certificate.hpp>

#include <algorithm>
#include <cmath>

namespace collapse {

std::string condition_label(Condition c) {
    switch (c) {
        case Condition::cnd1: return "Cnd1";
        case Condition::cnd2: return "Cnd2";
        case Condition::cnd3: return "Cnd3";
        case Condition::cnd4: return "Cnd4";
        case Condition::cndT: return "CndT";
        case Condition::cnd5: return "Cnd5";
        case Condition::cnd6: return "Cnd6";
        case Condition::cnd7: return "Cnd7";
        case Condition::cnd8: return "Cnd8";
        case Condition::cnd9: return "Cnd9";
        case Condition::cnd10: return "Cnd10";
        case Condition::zeta_contraction: return "zeta-contraction";
        case Condition::eta_contraction: return "eta-contraction";
        case Condition::alternation: return "alternation";
    }
    return "?";
}

bool ConditionFlags::all() const {
    return std::all_of(ok.begin(), ok.end(), [](bool b) { return b; });
}

namespace {

template <class T>
struct Snapshot {
    T gap;
    BasicVec<T> omega_s, omega_c, w_s, w_c;
    T eta_s, eta_c, zeta, cos_theta;
    T w1sq, w2sq;  // |v1 - v0|^2, |v2 - v0|^2
};

// Spectator s just collided with 0 at collision n; c collides next.
template <class T>
Snapshot<T> snapshot(const BasicSystemState<T>& st, long n) {
    const int s = n % 2 == 0 ? 1 : 2;
    const int c = 3 - s;
    Snapshot<T> q;
    BasicVec<T> rs = st.x[s] - st.x[0];
    BasicVec<T> rc = st.x[c] - st.x[0];
    T ns = norm(rs);
    T nc = norm(rc);
    q.gap = nc - T(1);
    q.omega_s = rs / ns;
    q.omega_c = rc / nc;
    q.w_s = st.v[s] - st.v[0];
    q.w_c = st.v[c] - st.v[0];
    q.eta_s = dot(q.w_s, q.omega_s);
    q.eta_c = dot(q.w_c, q.omega_c);
    T one_d = T(1) + q.gap;
    q.zeta = q.gap * (T(2) + q.gap) * norm2(q.w_c) / (one_d * one_d * q.eta_c * q.eta_c);
    q.cos_theta = dot(q.omega_c, q.omega_s);
    q.w1sq = norm2(st.v[1] - st.v[0]);
    q.w2sq = norm2(st.v[2] - st.v[0]);
    return q;
}

// min over t in [0, tau] of |a + t b|^2 > 1
template <class T>
bool spectators_stay_apart(const BasicVec<T>& a, const BasicVec<T>& b, const T& tau) {
    T bb = norm2(b);
    T t(0);
    if (bb > 0) {
        t = -dot(a, b) / bb;
        if (t < 0) t = T(0);
        if (t > tau) t = tau;
    }
    BasicVec<T> p = a;
    p.add_scaled(t, b);
    return norm2(p) > T(1);
}

}  // namespace

template <class T>
RecursionCertificate verify_recursion(const BasicSimulationOutcome<T>& run, const ZkConstruction& zk) {
    using std::abs;
    using std::sqrt;
    if (run.trajectory.size() != run.events.size() + 1)
        throw PreconditionError("verify_recursion needs the recorded trajectory of the run");

    RecursionCertificate cert;
    const long N = long(run.events.size());
    std::vector<Snapshot<T>> q;
    q.reserve(run.trajectory.size());
    for (long n = 0; n <= N; ++n) q.push_back(snapshot(run.trajectory[n], n));

    const T eta_bar(zk.eta_bar), zeta_bar(zk.zeta_bar), C(zk.C_eta);
    const T V0(zk.V0), V1(zk.V1), sV1 = sqrt(V1);
    const T phi(zk.phi_minus), alpha(zk.alpha0), dx(zk.delta_x), dy(zk.delta_y);
    const T h4(zk.h4), h5(zk.h5);
    const T minus_cos0 = -T(zk.cos_theta0);
    const T eta20 = -q[0].eta_c;
    const T d0 = q[0].gap;
    const T wc0 = norm2(q[0].w_c), ws0 = norm2(q[0].w_s);
    const T zeta_factor = T(1) - h5 / T(4);

    T sum_from0(0);  // sum_{k=0}^{n-1} C^k
    T sum_from1(0);  // sum_{k=1}^{n} C^k
    T power(1);      // C^n
    for (long n = 0; n < N; ++n) {
        const auto& a = q[n];
        const auto& b = q[n + 1];
        const T tau = run.events[n].tau;
        if (n > 0) sum_from1 += power * C;
        if (n > 0) power *= C;

        ConditionFlags f;
        f.n = n;
        auto set = [&](Condition c, bool v) { f.ok[std::size_t(c)] = v; };

        set(Condition::cnd1, a.eta_c < 0);
        bool c2 = abs(a.eta_c) <= eta_bar;
        if (n >= 1) c2 = c2 && abs(a.eta_c) <= C * abs(q[n - 1].eta_c);
        set(Condition::cnd2, c2);
        set(Condition::cnd3, a.zeta < 1);
        set(Condition::cnd4, a.zeta <= zeta_bar);

        const auto& st = run.trajectory[n];
        const int s = n % 2 == 0 ? 1 : 2;
        const int c = 3 - s;
        set(Condition::cndT, spectators_stay_apart(st.x[c] - st.x[s], st.v[c] - st.v[s], tau));

        set(Condition::cnd5, V0 <= a.w1sq && a.w1sq <= V1 && V0 <= a.w2sq && a.w2sq <= V1);

        const T envelope = T(4) * (sV1 + T(2)) * sum_from0 * eta20;
        const T wc = norm2(a.w_c), ws = norm2(a.w_s);
        if (n % 2 == 1) {
            set(Condition::cnd6, wc - ws0 <= envelope && ws - wc0 <= envelope);
            set(Condition::cnd7, true);
        } else {
            set(Condition::cnd6, true);
            set(Condition::cnd7, wc - wc0 <= envelope && ws - ws0 <= envelope);
        }

        const T angle_bound = d0 + T(11) * sV1 / V0 * eta20 +
                              sV1 / (V0 * C) * (T(3) + T(11) * C) * sum_from1 * eta20;
        set(Condition::cnd8, abs(-b.cos_theta - minus_cos0) <= angle_bound);

        const T xn = a.eta_s / (-a.eta_c) - phi;
        const T x_limit = n == 0 ? dx : (T(1) - h4 / T(2)) * dx;
        set(Condition::cnd9, abs(xn) <= x_limit);
        const T yn = (alpha - phi) - b.eta_c / a.eta_c;
        set(Condition::cnd10, abs(yn) <= dy);
        cert.x.push_back(to_double(xn));
        cert.y.push_back(to_double(yn));

        set(Condition::zeta_contraction, b.zeta <= zeta_factor * a.zeta);
        set(Condition::eta_contraction, abs(b.eta_c) <= C * abs(a.eta_c));
        set(Condition::alternation, run.events[n].pair == (n % 2 == 0 ? Pair::p02 : Pair::p01));

        if (!cert.first_violation)
            for (std::size_t k = 0; k < condition_count; ++k)
                if (!f.ok[k]) {
                    cert.first_violation = std::make_pair(n, Condition(k));
                    break;
                }
        cert.flags.push_back(f);
        sum_from0 += power;
    }

    const T final_cos = q.back().cos_theta;
    cert.final_cos_theta = to_double(final_cos);
    cert.final_angle_ok = abs(-final_cos - minus_cos0) <= T(zk.delta_theta);
    return cert;
}

template RecursionCertificate verify_recursion(const BasicSimulationOutcome<double>&, const ZkConstruction&);
template RecursionCertificate verify_recursion(const BasicSimulationOutcome<HighPrecision>&,
                                               const ZkConstruction&);

}  // namespace collapse
