#pragma once

#include <collapse/engine/engine.hpp>
#include <collapse/nearlinear/construction.hpp>

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace collapse {

enum class Condition {
    cnd1,
    cnd2,
    cnd3,
    cnd4,
    cndT,
    cnd5,
    cnd6,
    cnd7,
    cnd8,
    cnd9,
    cnd10,
    zeta_contraction,  // zeta_{n+1} <= (1 - h5/4) zeta_n
    eta_contraction,   // |eta_c,n+1| <= C_eta |eta_c,n|
    alternation,       // collision n+1 is (0,2) for n even, (0,1) for n odd
};

inline constexpr std::size_t condition_count = 14;

std::string condition_label(Condition c);

struct ConditionFlags {
    long n = 0;
    std::array<bool, condition_count> ok{};

    bool holds(Condition c) const { return ok[std::size_t(c)]; }
    bool all() const;
};

struct RecursionCertificate {
    std::vector<ConditionFlags> flags;  // recursion index n = state right after collision n
    std::optional<std::pair<long, Condition>> first_violation;
    std::vector<double> x;  // eta_s,n/(-eta_c,n) - phi-
    std::vector<double> y;  // (alpha0 - phi-) - eta_c,n+1/eta_c,n
    double final_cos_theta = 0.0;
    bool final_angle_ok = false;

    bool clean() const { return !first_violation.has_value() && final_angle_ok && !flags.empty(); }
};

// Recomputes every quantity from the recorded engine states; needs a run with
// record_trajectory set and particle 0 as the central particle.
template <class T>
RecursionCertificate verify_recursion(const BasicSimulationOutcome<T>& run, const ZkConstruction& zk);

}  // namespace collapse
