#include <collapse/core/frame.hpp>

#include <cmath>
#include <sstream>

namespace collapse {

namespace {

template <class T>
void require_unit(const BasicVec<T>& omega, const char* what) {
    using std::abs;
    if (abs(norm(omega) - T(1)) > T(tolerances.unit)) {
        std::ostringstream os;
        os << what << " is not a unit vector (|omega| = " << to_double(norm(omega)) << ")";
        throw InvalidArgument(os.str());
    }
}

bool valid_index(int i) { return i >= 0 && i < 3; }

}  // namespace

template <class T>
void validate_state(const BasicSystemState<T>& s) {
    if (s.dim < 2) throw InvalidArgument("dimension must be at least 2");
    for (int i = 0; i < 3; ++i)
        if (int(s.x[i].size()) != s.dim || int(s.v[i].size()) != s.dim)
            throw InvalidArgument("state vector length differs from dim");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (norm(s.x[j] - s.x[i]) < T(1) - T(tolerances.overlap)) {
                std::ostringstream os;
                os << "spheres " << i << " and " << j << " overlap";
                throw InvalidState(os.str());
            }
}

template <class T>
void validate_config(const BasicRelativeConfig<T>& c) {
    require_unit(c.omega1, "omega1");
    require_unit(c.omega2, "omega2");
    if (!(c.gap > 0)) throw InvalidArgument("gap must be positive");
}

template <class T>
NormalTangential<T> decompose(const BasicVec<T>& w, const BasicVec<T>& omega) {
    require_unit(omega, "omega");
    T eta = dot(w, omega);
    BasicVec<T> perp = w;
    perp.add_scaled(-eta, omega);
    return {eta, perp};
}

template <class T>
BasicRelativeConfig<T> to_relative_frame(const BasicSystemState<T>& state, int central, int contact,
                                         int approaching) {
    using std::abs;
    if (!valid_index(central) || !valid_index(contact) || !valid_index(approaching) ||
        central == contact || central == approaching || contact == approaching)
        throw InvalidArgument("particle indices must be a permutation of 0, 1, 2");
    validate_state(state);

    BasicVec<T> rc = state.x[contact] - state.x[central];
    BasicVec<T> ra = state.x[approaching] - state.x[central];
    T dc = norm(rc);
    T da = norm(ra);
    if (abs(dc - T(1)) > T(tolerances.contact)) {
        std::ostringstream os;
        os << "pair (" << central << "," << contact << ") is not in contact: distance "
           << to_double(dc);
        throw FrameError(os.str());
    }
    if (!(da > T(1))) throw FrameError("approaching particle is not separated from the centre");

    BasicRelativeConfig<T> cfg;
    cfg.dim = state.dim;
    cfg.omega1 = rc / dc;
    cfg.w1 = state.v[contact] - state.v[central];
    cfg.gap = da - T(1);
    cfg.omega2 = ra / da;
    cfg.w2 = state.v[approaching] - state.v[central];
    return cfg;
}

template <class T>
BasicSystemState<T> from_relative_frame(const BasicRelativeConfig<T>& cfg, int central, int contact,
                                        int approaching) {
    if (!valid_index(central) || !valid_index(contact) || !valid_index(approaching) ||
        central == contact || central == approaching || contact == approaching)
        throw InvalidArgument("particle indices must be a permutation of 0, 1, 2");
    auto s = BasicSystemState<T>::at_rest(cfg.dim);
    s.x[contact] = cfg.omega1;
    s.v[contact] = cfg.w1;
    s.x[approaching] = (T(1) + cfg.gap) * cfg.omega2;
    s.v[approaching] = cfg.w2;
    return s;
}

#define COLLAPSE_INSTANTIATE(T)                                                                   \
    template void validate_state(const BasicSystemState<T>&);                                     \
    template void validate_config(const BasicRelativeConfig<T>&);                                 \
    template NormalTangential<T> decompose(const BasicVec<T>&, const BasicVec<T>&);               \
    template BasicRelativeConfig<T> to_relative_frame(const BasicSystemState<T>&, int, int, int); \
    template BasicSystemState<T> from_relative_frame(const BasicRelativeConfig<T>&, int, int, int);

COLLAPSE_INSTANTIATE(double)
COLLAPSE_INSTANTIATE(HighPrecision)

}  // namespace collapse
