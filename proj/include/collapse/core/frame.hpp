#pragma once

#include <collapse/core/types.hpp>

namespace collapse {

template <class T>
NormalTangential<T> decompose(const BasicVec<T>& w, const BasicVec<T>& omega);

template <class T>
BasicRelativeConfig<T> to_relative_frame(const BasicSystemState<T>& state, int central, int contact,
                                         int approaching);

// Inverse embedding: central particle at the origin and at rest.
template <class T>
BasicSystemState<T> from_relative_frame(const BasicRelativeConfig<T>& cfg, int central = 0,
                                        int contact = 1, int approaching = 2);

}  // namespace collapse
