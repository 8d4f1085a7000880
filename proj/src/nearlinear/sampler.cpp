#include <collapse/nearlinear/sampler.hpp>

#include <cmath>
#include <random>
#include <vector>

namespace collapse {

namespace {

template <class T>
BasicVec<T> gaussian_vec(std::mt19937_64& gen, int dim) {
    std::normal_distribution<double> g(0.0, 1.0);
    BasicVec<T> v(dim);
    for (int k = 0; k < dim; ++k) v[k] = T(g(gen));
    return v;
}

// Unit vector drawn uniformly from the sphere orthogonal to omega.
template <class T>
BasicVec<T> random_orthogonal_unit(std::mt19937_64& gen, const BasicVec<T>& omega) {
    for (;;) {
        BasicVec<T> g = gaussian_vec<T>(gen, int(omega.size()));
        g.add_scaled(-dot(g, omega), omega);
        T n = norm(g);
        if (n > T(1e-3)) return g / n;
    }
}

// Haar-distributed orthogonal matrix by Gram-Schmidt on Gaussian rows.
template <class T>
std::vector<BasicVec<T>> random_rotation(std::mt19937_64& gen, int dim) {
    std::vector<BasicVec<T>> rows;
    while (int(rows.size()) < dim) {
        BasicVec<T> g = gaussian_vec<T>(gen, dim);
        for (const auto& q : rows) g.add_scaled(-dot(g, q), q);
        // second pass keeps orthogonality at working precision
        for (const auto& q : rows) g.add_scaled(-dot(g, q), q);
        T n = norm(g);
        if (n > T(1e-3)) rows.push_back(g / n);
    }
    return rows;
}

template <class T>
BasicVec<T> rotate(const std::vector<BasicVec<T>>& q, const BasicVec<T>& v) {
    BasicVec<T> out(v.size());
    for (std::size_t i = 0; i < q.size(); ++i) out[i] = dot(q[i], v);
    return out;
}

}  // namespace

template <class T>
BasicSystemState<T> sample_initial_configuration(const ZkConstruction& zk, std::uint64_t seed, int dim) {
    using std::sqrt;
    if (dim < 2) throw InvalidArgument("dimension must be at least 2");
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto u = [&] { return T(unit(gen)); };

    // -eta_c0 in [eta_bar/2, eta_bar]
    const T eta_c = -T(zk.eta_bar) * (T(1) + u()) / T(2);
    const T ratio = T(zk.phi_minus) + T(zk.x0_bound) * (T(2) * u() - T(1));
    const T eta_s = ratio * (-eta_c);
    const T gap = T(zk.d_bar(to_double(-eta_c))) * (T(1) + u()) / T(2);
    const T dv = T(zk.V1) - T(zk.V0);
    const T wc2 = T(zk.V0) + dv / T(3) + dv / T(3) * u();
    const T ws2 = T(zk.V0) + dv / T(3) + dv / T(3) * u();

    const T c0(zk.cos_theta0);
    const T s0 = sqrt(T(1) - c0 * c0);
    BasicVec<T> omega_s = BasicVec<T>::axis(dim, 0);
    BasicVec<T> omega_c = c0 * BasicVec<T>::axis(dim, 0) + s0 * BasicVec<T>::axis(dim, 1);

    BasicVec<T> w_s = eta_s * omega_s;
    w_s.add_scaled(sqrt(ws2 - eta_s * eta_s), random_orthogonal_unit(gen, omega_s));
    BasicVec<T> w_c = eta_c * omega_c;
    w_c.add_scaled(sqrt(wc2 - eta_c * eta_c), random_orthogonal_unit(gen, omega_c));

    const auto q = random_rotation<T>(gen, dim);
    auto s = BasicSystemState<T>::at_rest(dim);
    s.x[1] = rotate(q, omega_s);
    s.x[2] = (T(1) + gap) * rotate(q, omega_c);
    s.v[1] = rotate(q, w_s);
    s.v[2] = rotate(q, w_c);
    return s;
}

template BasicSystemState<double> sample_initial_configuration(const ZkConstruction&, std::uint64_t, int);
template BasicSystemState<HighPrecision> sample_initial_configuration(const ZkConstruction&, std::uint64_t,
                                                                      int);

}  // namespace collapse
