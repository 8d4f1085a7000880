#include <collapse/engine/engine.hpp>

#include <collapse/core/frame.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace collapse {

std::array<int, 2> pair_particles(Pair p) {
    switch (p) {
        case Pair::p01: return {0, 1};
        case Pair::p02: return {0, 2};
        case Pair::p12: return {1, 2};
    }
    return {0, 1};
}

Pair pair_of(int i, int j) {
    if (i > j) std::swap(i, j);
    if (i == 0 && j == 1) return Pair::p01;
    if (i == 0 && j == 2) return Pair::p02;
    if (i == 1 && j == 2) return Pair::p12;
    throw InvalidArgument("not a particle pair");
}

std::string pair_label(Pair p) {
    auto [i, j] = pair_particles(p);
    return std::to_string(i) + std::to_string(j);
}

Pair pair_from_label(const std::string& label) {
    if (label == "01") return Pair::p01;
    if (label == "02") return Pair::p02;
    if (label == "12") return Pair::p12;
    throw InvalidArgument("unknown pair label '" + label + "'");
}

std::string termination_label(Termination t) {
    switch (t) {
        case Termination::max_collisions: return "max-collisions";
        case Termination::max_time: return "max-time";
        case Termination::collapse_detected: return "collapse-detected";
        case Termination::separation: return "separation";
        case Termination::triple_collision: return "triple-collision";
        case Termination::grazing: return "grazing";
        case Termination::precision_limit: return "precision-limit";
    }
    return "unknown";
}

namespace {

template <class T>
struct PairQuadratic {
    T a, b, c;  // a t^2 + 2 b t + c
};

template <class T>
PairQuadratic<T> pair_quadratic(const BasicSystemState<T>& s, int i, int j) {
    PairQuadratic<T> q{T(0), T(0), T(0)};
    for (int k = 0; k < s.dim; ++k) {
        T dx = s.x[j][k] - s.x[i][k];
        T dv = s.v[j][k] - s.v[i][k];
        q.a += dv * dv;
        q.b += dx * dv;
        q.c += dx * dx;
    }
    q.c -= T(1);
    return q;
}

}  // namespace

template <class T>
std::optional<CollisionHit<T>> next_collision(const BasicSystemState<T>& state) {
    using std::sqrt;
    std::vector<CollisionHit<T>> hits;
    std::vector<T> slack;  // discriminant over b^2, equals 1 - zeta
    for (Pair p : {Pair::p01, Pair::p02, Pair::p12}) {
        auto [i, j] = pair_particles(p);
        auto q = pair_quadratic(state, i, j);
        if (!(q.b < 0) || !(q.a > 0)) continue;
        T b2 = q.b * q.b;
        T disc = b2 - q.a * q.c;
        if (disc < 0) continue;
        T t = q.c / (-q.b + sqrt(disc));
        if (!(t > 0)) continue;
        hits.push_back({t, p, q.a * q.c / b2, q.c});
        slack.push_back(disc / b2);
    }
    if (hits.empty()) return std::nullopt;

    std::size_t best = 0;
    for (std::size_t k = 1; k < hits.size(); ++k)
        if (hits[k].time < hits[best].time) best = k;
    for (std::size_t k = 0; k < hits.size(); ++k) {
        if (k == best) continue;
        if (hits[k].time - hits[best].time <= T(tolerances.triple) * hits[k].time) {
            std::ostringstream os;
            os << "pairs " << pair_label(hits[best].pair) << " and " << pair_label(hits[k].pair)
               << " collide simultaneously";
            throw TripleCollisionError(os.str());
        }
    }
    if (slack[best] < T(tolerances.grazing))
        throw GrazingError("grazing collision for pair " + pair_label(hits[best].pair));
    return hits[best];
}

template <class T>
T pair_normal_component(const BasicSystemState<T>& state, Pair pair) {
    auto [i, j] = pair_particles(pair);
    BasicVec<T> dx = state.x[j] - state.x[i];
    return dot(state.v[j] - state.v[i], dx) / norm(dx);
}

namespace detail {

template <class T>
BasicSystemState<T> collide(const BasicSystemState<T>& state, Pair pair, double coefficient) {
    using std::abs;
    auto [i, j] = pair_particles(pair);
    BasicVec<T> omega = state.x[j] - state.x[i];
    T dist = norm(omega);
    if (abs(dist - T(1)) > T(tolerances.contact)) {
        std::ostringstream os;
        os << "pair " << pair_label(pair) << " is not in contact: distance " << to_double(dist);
        throw ContactError(os.str());
    }
    omega /= dist;
    T eta = dot(state.v[j] - state.v[i], omega);
    if (!(eta < 0)) throw PreconditionError("pair " + pair_label(pair) + " is not approaching");
    T k = (T(1) + T(coefficient)) / T(2) * eta;
    BasicSystemState<T> out = state;
    out.v[i].add_scaled(k, omega);
    out.v[j].add_scaled(-k, omega);
    return out;
}

template <class T>
BasicSimulationOutcome<T> run_with_coefficient(const BasicSystemState<T>& state, double coefficient,
                                               const RunLimits& limits) {
    using std::abs;
    validate_state(state);
    BasicSimulationOutcome<T> out;
    BasicSystemState<T> s = state;
    if (limits.record_trajectory) out.trajectory.push_back(s);
    const T precision_floor = T(tolerances.degenerate_gap) * machine_epsilon<T>();
    const auto& cc = limits.collapse;

    for (;;) {
        if (long(out.events.size()) >= limits.max_collisions) {
            out.termination = Termination::max_collisions;
            break;
        }
        std::optional<CollisionHit<T>> hit;
        try {
            hit = next_collision(s);
        } catch (const TripleCollisionError&) {
            out.termination = Termination::triple_collision;
            break;
        } catch (const GrazingError&) {
            out.termination = Termination::grazing;
            break;
        }
        if (!hit) {
            out.termination = Termination::separation;
            break;
        }
        if (hit->gap_excess < precision_floor) {
            out.termination = Termination::precision_limit;
            break;
        }
        if (to_double(s.t + hit->time) > limits.max_time) {
            s = free_flight(s, T(limits.max_time) - s.t);
            out.termination = Termination::max_time;
            break;
        }

        s = free_flight(s, hit->time);
        BasicCollisionEvent<T> ev;
        ev.index = long(out.events.size());
        ev.time = s.t;
        ev.pair = hit->pair;
        ev.eta_pre = pair_normal_component(s, hit->pair);
        ev.zeta = hit->zeta;
        ev.tau = hit->time;
        s = collide(s, hit->pair, coefficient);
        ev.eta_post = pair_normal_component(s, hit->pair);
        out.events.push_back(std::move(ev));
        if (limits.record_trajectory) out.trajectory.push_back(s);

        const long n = long(out.events.size());
        if (cc.enabled && n > cc.window && n >= cc.min_events) {
            T rho(0);
            bool contracting = true;
            for (long k = n - cc.window; k < n && contracting; ++k) {
                T ratio = out.events[k].tau / out.events[k - 1].tau;
                if (ratio > T(cc.rho_max)) contracting = false;
                if (ratio > rho) rho = ratio;
            }
            if (contracting && out.events.back().tau * rho / (T(1) - rho) < T(cc.time_horizon_eps)) {
                out.termination = Termination::collapse_detected;
                break;
            }
        }
    }
    out.final_state = s;
    return out;
}

}  // namespace detail

template <class T>
BasicSystemState<T> apply_collision(const BasicSystemState<T>& state, Pair pair, const Restitution& r) {
    return detail::collide(state, pair, r.value());
}

template <class T>
BasicSystemState<T> free_flight(const BasicSystemState<T>& state, const T& dt) {
    if (dt < 0) throw InvalidArgument("free flight needs dt >= 0");
    BasicSystemState<T> out = state;
    for (int i = 0; i < 3; ++i) out.x[i].add_scaled(dt, out.v[i]);
    out.t += dt;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (norm(out.x[j] - out.x[i]) < T(1) - T(tolerances.overlap))
                throw FlightOverrunError("free flight overran a collision of pair " +
                                         pair_label(pair_of(i, j)));
    return out;
}

template <class T>
BasicSimulationOutcome<T> run(const BasicSystemState<T>& state, const Restitution& r,
                              const RunLimits& limits) {
    return detail::run_with_coefficient(state, r.value(), limits);
}

template <class T>
T kinetic_energy(const BasicSystemState<T>& state) {
    T e(0);
    for (int i = 0; i < 3; ++i) e += norm2(state.v[i]);
    return e / T(2);
}

template <class T>
BasicVec<T> momentum(const BasicSystemState<T>& state) {
    return state.v[0] + state.v[1] + state.v[2];
}

#define COLLAPSE_INSTANTIATE(T)                                                                     \
    template std::optional<CollisionHit<T>> next_collision(const BasicSystemState<T>&);             \
    template BasicSystemState<T> apply_collision(const BasicSystemState<T>&, Pair, const Restitution&); \
    template BasicSystemState<T> free_flight(const BasicSystemState<T>&, const T&);                 \
    template BasicSimulationOutcome<T> run(const BasicSystemState<T>&, const Restitution&,          \
                                           const RunLimits&);                                       \
    template T kinetic_energy(const BasicSystemState<T>&);                                          \
    template BasicVec<T> momentum(const BasicSystemState<T>&);                                      \
    template T pair_normal_component(const BasicSystemState<T>&, Pair);                             \
    template BasicSystemState<T> detail::collide(const BasicSystemState<T>&, Pair, double);         \
    template BasicSimulationOutcome<T> detail::run_with_coefficient(const BasicSystemState<T>&,     \
                                                                    double, const RunLimits&);

COLLAPSE_INSTANTIATE(double)
COLLAPSE_INSTANTIATE(HighPrecision)

}  // namespace collapse
