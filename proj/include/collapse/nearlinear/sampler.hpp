#pragma once

#include <collapse/core/types.hpp>
#include <collapse/nearlinear/construction.hpp>

#include <cstdint>

namespace collapse {

// Initial datum of the construction: 0 and 1 touching and separating,
// 2 approaching 0, prescribed angle between the two contact lines.
// Deterministic per seed. Particle 0 sits at the origin, at rest.
template <class T>
BasicSystemState<T> sample_initial_configuration(const ZkConstruction& zk, std::uint64_t seed, int dim = 2);

}  // namespace collapse
