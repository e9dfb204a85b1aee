#pragma once

// Reference values the computed results are compared against.

#include <array>

namespace sieveconst::published {

// Psi per grid row, grid s = 2.2 .. 3.0 (goldbach) and 2.1 .. 3.0 (twin)
inline constexpr std::array<double, 9> goldbach_psi = {
    0.015826357, 0.015247971, 0.013898757, 0.011776059, 0.009405211,
    0.006558950, 0.003536751, 0.001056651, 0.000000000};
inline constexpr std::array<double, 10> twin_psi = {
    0.020914508, 0.020399717, 0.019005124, 0.016618139, 0.013597508,
    0.010644985, 0.007155027, 0.003741586, 0.001087780, 0.000000000};

inline constexpr std::array<double, 9> goldbach_solution = {
    0.0223939, 0.0217196, 0.0202876, 0.0181433, 0.0158644,
    0.0129923, 0.0100686, 0.0078162, 0.0072943};
inline constexpr double twin_solution_first = 0.0287118;

inline constexpr double goldbach_constant = 7.82085;
inline constexpr double twin_constant = 3.39951;

// index 0..14; 6, 11, 12 are not part of the combination and stay 0
inline constexpr std::array<double, 15> f_terms = {
    13.473613, 3.891854, 20.432098, 17.327241, 0.697375, 2.118119, 0.0, 0.004609,
    0.434368, 5.161945, 5.468377, 0.0, 0.0, 0.023310, 0.182860};
inline constexpr std::array<double, 15> g_terms = {
    5.894705, 1.611441, 7.921437, 6.736885, 0.270916, 0.913995, 0.0, 0.000124,
    0.145114, 1.790090, 1.930545, 0.0, 0.0, 0.006814, 0.059690};

inline constexpr double f_combined = 0.83607;
inline constexpr double g_combined = 1.10409;

// a(6) implied by the two leading terms: 8 a(6) and 3.5 a(6) after normalisation
inline constexpr double a_at_6 = 1.6842016;

inline constexpr double twin_prime_constant = 1.3203236;

} // namespace sieveconst::published
