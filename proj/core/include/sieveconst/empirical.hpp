#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sieveconst {

inline constexpr std::uint64_t prime_table_max = 1'000'000'000;
inline constexpr std::uint64_t omega_table_max = 200'000'000;

// odd-only bitset of primes up to limit, filled by a segmented sieve
class PrimeTable {
public:
    static PrimeTable sieve(std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }
    std::uint64_t count() const noexcept { return count_; }
    bool is_prime(std::uint64_t n) const;
    std::vector<std::uint64_t> primes() const;

private:
    std::uint64_t limit_ = 0;
    std::uint64_t count_ = 0;
    std::vector<std::uint64_t> odd_bits_; // bit k of the table stands for 2k+1
};

// Omega(n), the number of prime factors with multiplicity, for 0 <= n <= limit.
// Omega(0) and Omega(1) are stored as 0.
class OmegaTable {
public:
    static OmegaTable build(std::uint64_t limit);

    std::uint64_t limit() const noexcept { return limit_; }
    unsigned omega(std::uint64_t n) const;
    bool is_prime(std::uint64_t n) const { return n >= 2 && omega(n) == 1; }
    // 1 <= Omega(n) <= 2
    bool almost_prime(std::uint64_t n) const
    {
        const unsigned k = omega(n);
        return k == 1 || k == 2;
    }

private:
    std::uint64_t limit_ = 0;
    std::vector<std::uint8_t> omega_;
};

// #{p <= N : Omega(N-p) = 1}; N even and >= 4
std::uint64_t count_goldbach(const OmegaTable& table, std::uint64_t n);
std::uint64_t count_goldbach(std::uint64_t n);
// #{p <= N : 1 <= Omega(N-p) <= 2}
std::uint64_t count_goldbach12(const OmegaTable& table, std::uint64_t n);
std::uint64_t count_goldbach12(std::uint64_t n);

// #{p <= x : p+2 prime}; x >= 3
std::uint64_t count_twin(const OmegaTable& table, std::uint64_t x);
std::uint64_t count_twin(std::uint64_t x);
// #{p <= x : Omega(p+2) <= 2}
std::uint64_t count_twin12(const OmegaTable& table, std::uint64_t x);
std::uint64_t count_twin12(std::uint64_t x);

// #{alpha N <= p <= alpha N + N^theta : 1 <= Omega(N-p) <= 2}
std::uint64_t count_goldbach12_short(double alpha, std::uint64_t n, double theta);
// #{x <= p <= x + x^theta : Omega(p+2) <= 2}
std::uint64_t count_twin12_short(std::uint64_t x, double theta);

struct Interval {
    double lo = 0.0, hi = 0.0;
    double mid() const noexcept { return 0.5 * (lo + hi); }
    bool contains(double v) const noexcept { return lo <= v && v <= hi; }
};

inline constexpr std::uint64_t default_product_limit = 10'000'000;

// prod_{2 < p} (1 - 1/(p-1)^2), truncated at prime_limit; the tail is bounded by 1/(limit-1)
Interval twin_product(std::uint64_t prime_limit = default_product_limit);
// 2 * twin_product
Interval twin_constant(std::uint64_t prime_limit = default_product_limit);
// prod_{p | N, p > 2} (p-1)/(p-2)
double goldbach_correction(std::uint64_t n);
// correction times twin_product, without a factor 2
Interval goldbach_constant(std::uint64_t n, std::uint64_t prime_limit = default_product_limit);

Interval goldbach_main_term(std::uint64_t n, std::uint64_t prime_limit = default_product_limit);
Interval twin_main_term(double x, std::uint64_t prime_limit = default_product_limit);
Interval goldbach_short_main_term(std::uint64_t n, double theta, std::uint64_t prime_limit = default_product_limit);
Interval twin_short_main_term(double x, double theta, std::uint64_t prime_limit = default_product_limit);

struct GoldbachRow {
    std::uint64_t n = 0;
    std::uint64_t exact = 0;       // Omega(N-p) = 1
    std::uint64_t almost = 0;      // Omega(N-p) <= 2
    double main_term = 0.0;
    double ratio_exact = 0.0;
    double ratio_almost = 0.0;
};

struct TwinRow {
    std::uint64_t x = 0;
    std::uint64_t exact = 0;
    std::uint64_t almost = 0;
    double main_term = 0.0;
    double ratio_exact = 0.0;
    double ratio_almost = 0.0;
};

std::vector<GoldbachRow> goldbach_rows(std::span<const std::uint64_t> ns,
                                       std::uint64_t prime_limit = default_product_limit);
std::vector<TwinRow> twin_rows(std::span<const std::uint64_t> xs, std::uint64_t prime_limit = default_product_limit);

// Weight inequality check. A square-free a coprime to small primes is described by the
// exponents e_i = log p_i / log N, sorted, each >= kappa, summing to less than 1.
// The weights only depend on how many exponents lie below sigma and on whether
// e1 + 2 e2 < 1, so the cells (Omega, small count, split) cover every case.

struct WeightCounts {
    int s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    double delta = 0.0;      // 1 - s1/2 - s2 - s3/2 + s4/2
    double delta_star = 0.0; // 1 when Omega <= 2
};

// counts computed straight from the definitions; exponents need not be sorted
WeightCounts weight_counts(std::span<const double> exponents, double kappa, double sigma);

struct WeightCase {
    int omega = 0;
    int small = 0;         // exponents in [kappa, sigma)
    bool split = false;    // e1 + 2 e2 < 1 (always false when omega = 1)
    bool feasible = false;
    std::string reason;    // why an infeasible cell is empty
    std::vector<double> witness;
    WeightCounts counts;
};

struct WeightCounterexample {
    std::vector<double> exponents;
    WeightCounts counts;
};

struct WeightReport {
    double kappa = 0.0, sigma = 0.0;
    int max_omega = 0;
    std::vector<WeightCase> cases;
    std::uint64_t samples = 0;
    std::vector<WeightCounterexample> counterexamples;

    bool ok() const noexcept { return counterexamples.empty(); }
    std::size_t feasible_cases() const noexcept;
};

struct WeightVerifySettings {
    double kappa = 1.0 / 12.0;
    double sigma = 41.0 / 125.0;
    std::uint64_t samples_per_omega = 20000;
    std::uint64_t seed = 20240601;
};

WeightReport verify_weight_cases(int max_omega, const WeightVerifySettings& settings = {});

} // namespace sieveconst
