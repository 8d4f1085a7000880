#pragma once

#include <collapse/core/types.hpp>

#include <utility>
#include <vector>

namespace collapse {

template <class T>
struct ZkParameter {
    T zeta;
};

// One application of the single-collision mapping. The output keeps the
// post-collision labelling: omega2 is now the contact direction and gap
// belongs to the pair along omega1. swap_roles turns it into a new input.
template <class T>
struct BasicMapStep {
    BasicRelativeConfig<T> input;
    T tau;
    BasicRelativeConfig<T> output;
    T eta1_post;
    T eta2_post;
    T cos_angle_post;
};

template <class T>
ZkParameter<T> zk_parameter(const BasicRelativeConfig<T>& cfg);

template <class T>
T collision_time(const BasicRelativeConfig<T>& cfg);

template <class T>
BasicMapStep<T> apply_map(const BasicRelativeConfig<T>& cfg, const Restitution& r);

template <class T>
BasicRelativeConfig<T> swap_roles(const BasicRelativeConfig<T>& cfg);

// Flat-surface approximation of the normal components.
std::pair<double, double> flat_surface_step(double eta1, double eta2, double cos_theta_bar,
                                            const Restitution& r);

enum class MapIterationEnd { completed, degenerate_gap, left_domain };

template <class T>
struct MapTrajectory {
    std::vector<BasicMapStep<T>> steps;
    MapIterationEnd end = MapIterationEnd::completed;
};

// apply_map then swap_roles, repeatedly. Stops once the gap falls below
// degenerate_gap machine epsilons of T.
template <class T>
MapTrajectory<T> iterate_map(const BasicRelativeConfig<T>& cfg, const Restitution& r, long max_steps,
                             double degenerate_gap = tolerances.degenerate_gap);

using MapStep = BasicMapStep<double>;

}  // namespace collapse
