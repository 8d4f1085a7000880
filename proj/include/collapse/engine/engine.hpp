#pragma once

#include <collapse/core/types.hpp>

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace collapse {

enum class Pair { p01, p02, p12 };

std::array<int, 2> pair_particles(Pair p);
Pair pair_of(int i, int j);
std::string pair_label(Pair p);  // "01", "02", "12"
Pair pair_from_label(const std::string& label);

template <class T>
struct BasicCollisionEvent {
    long index = 0;
    T time = T(0);
    Pair pair = Pair::p01;
    T eta_pre = T(0);
    T eta_post = T(0);
    T zeta = T(0);  // of the colliding pair at the start of the flight
    T tau = T(0);
};

enum class Termination {
    max_collisions,
    max_time,
    collapse_detected,
    separation,
    triple_collision,
    grazing,
    precision_limit,
};

std::string termination_label(Termination t);

struct CollapseCriteria {
    bool enabled = true;
    int window = 64;
    double rho_max = 0.999;
    double time_horizon_eps = 1e-9;
    long min_events = 0;
};

struct RunLimits {
    long max_collisions = 10000;
    double max_time = std::numeric_limits<double>::infinity();
    CollapseCriteria collapse{};
    bool record_trajectory = false;
};

template <class T>
struct BasicSimulationOutcome {
    std::vector<BasicCollisionEvent<T>> events;
    BasicSystemState<T> final_state;
    Termination termination = Termination::max_collisions;
    // initial state followed by the state right after each event
    std::vector<BasicSystemState<T>> trajectory;
};

template <class T>
struct CollisionHit {
    T time;
    Pair pair;
    T zeta;        // a*c/b^2 of the quadratic, the ZK parameter of the pair
    T gap_excess;  // |dx|^2 - 1 at the start of the flight
};

template <class T>
std::optional<CollisionHit<T>> next_collision(const BasicSystemState<T>& state);

template <class T>
BasicSystemState<T> apply_collision(const BasicSystemState<T>& state, Pair pair, const Restitution& r);

template <class T>
BasicSystemState<T> free_flight(const BasicSystemState<T>& state, const T& dt);

template <class T>
BasicSimulationOutcome<T> run(const BasicSystemState<T>& state, const Restitution& r,
                              const RunLimits& limits);

template <class T>
T kinetic_energy(const BasicSystemState<T>& state);

template <class T>
BasicVec<T> momentum(const BasicSystemState<T>& state);

// Normal component (v_j - v_i).omega of a pair, omega = (x_j - x_i)/|x_j - x_i|.
template <class T>
T pair_normal_component(const BasicSystemState<T>& state, Pair pair);

namespace detail {
// Any coefficient in (0,1]; r = 1 is only used by the elastic test harness.
template <class T>
BasicSystemState<T> collide(const BasicSystemState<T>& state, Pair pair, double coefficient);
template <class T>
BasicSimulationOutcome<T> run_with_coefficient(const BasicSystemState<T>& state, double coefficient,
                                               const RunLimits& limits);
}  // namespace detail

using CollisionEvent = BasicCollisionEvent<double>;
using SimulationOutcome = BasicSimulationOutcome<double>;

}  // namespace collapse
