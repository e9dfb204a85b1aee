#pragma once

namespace sieveconst {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr double exp_euler_gamma = 1.78107241799019798523650410310717954;
inline constexpr double pi = 3.14159265358979323846264338327950288;

// upper bounds for the Buchstab function on the two tails
inline constexpr double omega_bound_from_2 = 0.567144;
inline constexpr double omega_bound_from_3_5 = 0.561522;

} // namespace sieveconst
