#pragma once

#include <collapse/core/errors.hpp>
#include <collapse/core/scalar.hpp>
#include <collapse/core/vec.hpp>

#include <array>
#include <string>

namespace collapse {

// Every numeric threshold shared across modules.
struct Tolerances {
    double overlap = 1e-12;
    double unit = 1e-12;
    double contact = 1e-10;
    double triple = 1e-13;
    double grazing = 1e-13;
    double degenerate_gap = 64.0;  // multiples of machine epsilon of the scalar type
};

inline constexpr Tolerances tolerances{};

class Restitution {
public:
    explicit Restitution(double r) : r_(r) {
        if (!(r > 0.0 && r < 1.0))
            throw InvalidArgument("restitution must satisfy 0 < r < 1, got " + std::to_string(r));
    }
    double value() const { return r_; }

private:
    double r_;
};

// Unit masses and unit diameters.
template <class T>
struct BasicSystemState {
    int dim = 2;
    std::array<BasicVec<T>, 3> x;
    std::array<BasicVec<T>, 3> v;
    T t = T(0);

    static BasicSystemState at_rest(int dim) {
        BasicSystemState s;
        s.dim = dim;
        for (int i = 0; i < 3; ++i) {
            s.x[i] = BasicVec<T>(dim);
            s.v[i] = BasicVec<T>(dim);
        }
        return s;
    }
};

// Central-particle frame: particle behind omega1 touches the centre,
// the one behind omega2 sits at distance 1 + gap.
template <class T>
struct BasicRelativeConfig {
    int dim = 2;
    BasicVec<T> omega1;
    BasicVec<T> w1;
    T gap = T(0);
    BasicVec<T> omega2;
    BasicVec<T> w2;
};

template <class T>
struct NormalTangential {
    T eta;
    BasicVec<T> w_perp;
};

using SystemState = BasicSystemState<double>;
using RelativeConfig = BasicRelativeConfig<double>;

// Throws InvalidState when two spheres overlap beyond tolerances.overlap.
template <class T>
void validate_state(const BasicSystemState<T>& s);

// Throws InvalidArgument on non-unit directions or non-positive gap.
template <class T>
void validate_config(const BasicRelativeConfig<T>& c);

template <class U, class T>
BasicSystemState<U> state_cast(const BasicSystemState<T>& s) {
    BasicSystemState<U> out;
    out.dim = s.dim;
    for (int i = 0; i < 3; ++i) {
        out.x[i] = vec_cast<U>(s.x[i]);
        out.v[i] = vec_cast<U>(s.v[i]);
    }
    out.t = static_cast<U>(s.t);
    return out;
}

template <class U, class T>
BasicRelativeConfig<U> config_cast(const BasicRelativeConfig<T>& c) {
    return {c.dim, vec_cast<U>(c.omega1), vec_cast<U>(c.w1), static_cast<U>(c.gap),
            vec_cast<U>(c.omega2), vec_cast<U>(c.w2)};
}

}  // namespace collapse
