#include "sieveconst/empirical.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <random>

#include "sieveconst/error.hpp"
#include "sieveconst/parallel.hpp"

namespace sieveconst {

namespace {

constexpr std::uint64_t odd_segment = 64 * 8192; // odd numbers per segment, word aligned
constexpr std::uint64_t omega_segment = 1 << 18;

std::uint64_t isqrt(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

// plain sieve for the base primes
std::vector<std::uint32_t> small_primes(std::uint64_t limit)
{
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return out;
}

} // namespace

PrimeTable PrimeTable::sieve(std::uint64_t limit)
{
    if (limit > prime_table_max)
        throw Error(ErrorKind::ResourceLimit, "prime table limit above 1e9");
    PrimeTable t;
    t.limit_ = limit;
    const std::uint64_t odds = (limit + 1) / 2; // 1, 3, ..., up to limit
    t.odd_bits_.assign((odds + 63) / 64, ~std::uint64_t{0});
    if (odds == 0) {
        t.count_ = 0;
        return t;
    }
    const auto base = small_primes(isqrt(limit));
    const std::uint64_t segments = (odds + odd_segment - 1) / odd_segment;
    std::vector<std::uint64_t> counts(segments, 0);

    parallel_for(segments, [&](std::size_t s) {
        const std::uint64_t k0 = s * odd_segment;
        const std::uint64_t k1 = std::min(odds, k0 + odd_segment);
        std::uint64_t* words = t.odd_bits_.data() + k0 / 64;
        auto clear = [&](std::uint64_t k) { words[(k - k0) / 64] &= ~(std::uint64_t{1} << ((k - k0) % 64)); };
        for (std::uint32_t p : base) {
            if (p == 2)
                continue;
            const std::uint64_t lo = 2 * k0 + 1;
            std::uint64_t m = std::max<std::uint64_t>(std::uint64_t{p} * p, (lo + p - 1) / p * p);
            if (m % 2 == 0)
                m += p;
            for (std::uint64_t k = (m - 1) / 2; k < k1; k += p)
                clear(k);
        }
        if (k0 == 0)
            clear(0); // 1 is not prime
        const std::uint64_t last_word = (k1 - k0 + 63) / 64;
        if ((k1 - k0) % 64 != 0)
            words[last_word - 1] &= (std::uint64_t{1} << ((k1 - k0) % 64)) - 1;
        std::uint64_t c = 0;
        for (std::uint64_t w = 0; w < last_word; ++w)
            c += static_cast<std::uint64_t>(std::popcount(words[w]));
        counts[s] = c;
    });
    t.count_ = limit >= 2 ? 1 : 0;
    for (auto c : counts)
        t.count_ += c;
    return t;
}

bool PrimeTable::is_prime(std::uint64_t n) const
{
    if (n > limit_)
        throw Error(ErrorKind::OutOfDomain, "query beyond prime table limit");
    if (n == 2)
        return true;
    if (n % 2 == 0)
        return false;
    const std::uint64_t k = n / 2;
    return (odd_bits_[k / 64] >> (k % 64)) & 1u;
}

std::vector<std::uint64_t> PrimeTable::primes() const
{
    std::vector<std::uint64_t> out;
    out.reserve(count_);
    if (limit_ >= 2)
        out.push_back(2);
    for (std::uint64_t w = 0; w < odd_bits_.size(); ++w) {
        std::uint64_t bits = odd_bits_[w];
        while (bits) {
            const int b = std::countr_zero(bits);
            out.push_back(2 * (w * 64 + static_cast<std::uint64_t>(b)) + 1);
            bits &= bits - 1;
        }
    }
    return out;
}

OmegaTable OmegaTable::build(std::uint64_t limit)
{
    if (limit > omega_table_max)
        throw Error(ErrorKind::ResourceLimit, "omega table limit above 2e8");
    OmegaTable t;
    t.limit_ = limit;
    t.omega_.assign(limit + 1, 0);
    const auto base = small_primes(isqrt(limit));
    const std::uint64_t segments = (limit + 1 + omega_segment - 1) / omega_segment;

    parallel_for(segments, [&](std::size_t s) {
        const std::uint64_t lo = s * omega_segment;
        const std::uint64_t hi = std::min(limit + 1, lo + omega_segment);
        std::vector<std::uint64_t> rest(hi - lo);
        for (std::uint64_t n = lo; n < hi; ++n)
            rest[n - lo] = n;
        std::uint8_t* out = t.omega_.data() + lo;
        for (std::uint32_t p : base) {
            for (std::uint64_t m = std::max<std::uint64_t>(p, (lo + p - 1) / p * p); m < hi; m += p) {
                std::uint64_t& r = rest[m - lo];
                do {
                    r /= p;
                    ++out[m - lo];
                } while (r % p == 0);
            }
        }
        for (std::uint64_t n = std::max<std::uint64_t>(lo, 2); n < hi; ++n)
            if (rest[n - lo] > 1)
                ++out[n - lo];
    });
    return t;
}

unsigned OmegaTable::omega(std::uint64_t n) const
{
    if (n > limit_)
        throw Error(ErrorKind::OutOfDomain, "query beyond omega table limit");
    return omega_[n];
}

namespace {

void check_goldbach_input(const OmegaTable& table, std::uint64_t n)
{
    if (n < 4 || n % 2 != 0)
        throw Error(ErrorKind::InvalidInput, "N must be even and at least 4");
    if (n > table.limit())
        throw Error(ErrorKind::OutOfDomain, "N beyond omega table limit");
}

void check_twin_input(const OmegaTable& table, std::uint64_t x)
{
    if (x < 3)
        throw Error(ErrorKind::InvalidInput, "x must be at least 3");
    if (x + 2 > table.limit())
        throw Error(ErrorKind::OutOfDomain, "x + 2 beyond omega table limit");
}

template <class Pred>
std::uint64_t goldbach_count(const OmegaTable& table, std::uint64_t lo, std::uint64_t hi, std::uint64_t n, Pred pred)
{
    std::uint64_t c = 0;
    for (std::uint64_t p = std::max<std::uint64_t>(lo, 2); p <= hi && p < n; ++p)
        if (table.is_prime(p) && pred(table.omega(n - p)))
            ++c;
    return c;
}

template <class Pred>
std::uint64_t twin_count(const OmegaTable& table, std::uint64_t lo, std::uint64_t hi, Pred pred)
{
    std::uint64_t c = 0;
    for (std::uint64_t p = std::max<std::uint64_t>(lo, 2); p <= hi; ++p)
        if (table.is_prime(p) && pred(table.omega(p + 2)))
            ++c;
    return c;
}

constexpr auto is_one = [](unsigned k) { return k == 1; };
constexpr auto one_or_two = [](unsigned k) { return k == 1 || k == 2; };

} // namespace

std::uint64_t count_goldbach(const OmegaTable& table, std::uint64_t n)
{
    check_goldbach_input(table, n);
    return goldbach_count(table, 2, n, n, is_one);
}

std::uint64_t count_goldbach(std::uint64_t n)
{
    return count_goldbach(OmegaTable::build(n), n);
}

std::uint64_t count_goldbach12(const OmegaTable& table, std::uint64_t n)
{
    check_goldbach_input(table, n);
    return goldbach_count(table, 2, n, n, one_or_two);
}

std::uint64_t count_goldbach12(std::uint64_t n)
{
    return count_goldbach12(OmegaTable::build(n), n);
}

std::uint64_t count_twin(const OmegaTable& table, std::uint64_t x)
{
    check_twin_input(table, x);
    return twin_count(table, 2, x, is_one);
}

std::uint64_t count_twin(std::uint64_t x)
{
    return count_twin(OmegaTable::build(x + 2), x);
}

std::uint64_t count_twin12(const OmegaTable& table, std::uint64_t x)
{
    check_twin_input(table, x);
    return twin_count(table, 2, x, one_or_two);
}

std::uint64_t count_twin12(std::uint64_t x)
{
    return count_twin12(OmegaTable::build(x + 2), x);
}

std::uint64_t count_goldbach12_short(double alpha, std::uint64_t n, double theta)
{
    if (!(alpha > 0.0 && alpha < 1.0) || !(theta > 0.0 && theta <= 1.0))
        throw Error(ErrorKind::InvalidInput, "need 0 < alpha < 1 and 0 < theta <= 1");
    if (n < 4 || n % 2 != 0)
        throw Error(ErrorKind::InvalidInput, "N must be even and at least 4");
    const double start = alpha * static_cast<double>(n);
    const auto lo = static_cast<std::uint64_t>(std::ceil(start));
    const auto hi = std::min<std::uint64_t>(n, static_cast<std::uint64_t>(std::floor(start + std::pow(static_cast<double>(n), theta))));
    const auto table = OmegaTable::build(n);
    return goldbach_count(table, lo, hi, n, one_or_two);
}

std::uint64_t count_twin12_short(std::uint64_t x, double theta)
{
    if (x < 2 || !(theta > 0.0 && theta <= 1.0))
        throw Error(ErrorKind::InvalidInput, "need x >= 2 and 0 < theta <= 1");
    const double xd = static_cast<double>(x);
    const auto hi = static_cast<std::uint64_t>(std::floor(xd + std::pow(xd, theta)));
    const auto table = OmegaTable::build(hi + 2);
    return twin_count(table, x, hi, one_or_two);
}

Interval twin_product(std::uint64_t prime_limit)
{
    if (prime_limit < 100'000)
        throw Error(ErrorKind::InvalidInput, "product limit must be at least 1e5");
    static std::mutex mu;
    static std::map<std::uint64_t, Interval> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(prime_limit); it != cache.end())
            return it->second;
    }
    const auto table = PrimeTable::sieve(prime_limit);
    long double prod = 1.0L;
    for (std::uint64_t p : table.primes()) {
        if (p == 2)
            continue;
        const long double q = static_cast<long double>(p - 1);
        prod *= 1.0L - 1.0L / (q * q);
    }
    // sum_{n > L} 1/(n-1)^2 <= 1/(L-1) bounds the dropped factors
    const double tail = 1.0 / static_cast<double>(prime_limit - 1);
    const double p = static_cast<double>(prod);
    Interval out{p * (1.0 - tail) * (1.0 - 1e-15), p * (1.0 + 1e-15)};
    std::lock_guard lock(mu);
    cache.emplace(prime_limit, out);
    return out;
}

Interval twin_constant(std::uint64_t prime_limit)
{
    const auto p = twin_product(prime_limit);
    return {2.0 * p.lo, 2.0 * p.hi};
}

double goldbach_correction(std::uint64_t n)
{
    if (n == 0)
        throw Error(ErrorKind::InvalidInput, "N must be positive");
    double c = 1.0;
    while (n % 2 == 0)
        n /= 2;
    for (std::uint64_t p = 3; p <= n / p; p += 2) {
        if (n % p != 0)
            continue;
        c *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
        while (n % p == 0)
            n /= p;
    }
    if (n > 1)
        c *= static_cast<double>(n - 1) / static_cast<double>(n - 2);
    return c;
}

Interval goldbach_constant(std::uint64_t n, std::uint64_t prime_limit)
{
    const double c = goldbach_correction(n);
    const auto p = twin_product(prime_limit);
    return {c * p.lo, c * p.hi};
}

namespace {

Interval scaled(Interval v, double factor)
{
    return {v.lo * factor, v.hi * factor};
}

double log_sq(double x)
{
    if (!(x > 1.0))
        throw Error(ErrorKind::InvalidInput, "argument must exceed 1");
    const double l = std::log(x);
    return l * l;
}

} // namespace

Interval goldbach_main_term(std::uint64_t n, std::uint64_t prime_limit)
{
    const double x = static_cast<double>(n);
    return scaled(goldbach_constant(n, prime_limit), x / log_sq(x));
}

Interval twin_main_term(double x, std::uint64_t prime_limit)
{
    return scaled(twin_constant(prime_limit), x / log_sq(x));
}

Interval goldbach_short_main_term(std::uint64_t n, double theta, std::uint64_t prime_limit)
{
    const double x = static_cast<double>(n);
    return scaled(goldbach_constant(n, prime_limit), std::pow(x, theta) / log_sq(x));
}

Interval twin_short_main_term(double x, double theta, std::uint64_t prime_limit)
{
    return scaled(twin_constant(prime_limit), std::pow(x, theta) / log_sq(x));
}

std::vector<GoldbachRow> goldbach_rows(std::span<const std::uint64_t> ns, std::uint64_t prime_limit)
{
    if (ns.empty())
        return {};
    const auto table = OmegaTable::build(*std::max_element(ns.begin(), ns.end()));
    twin_product(prime_limit); // fill the cache before the workers start
    return parallel_map<GoldbachRow>(ns.size(), [&](std::size_t i) {
        GoldbachRow r;
        r.n = ns[i];
        r.exact = count_goldbach(table, r.n);
        r.almost = count_goldbach12(table, r.n);
        r.main_term = goldbach_main_term(r.n, prime_limit).mid();
        r.ratio_exact = static_cast<double>(r.exact) / r.main_term;
        r.ratio_almost = static_cast<double>(r.almost) / r.main_term;
        return r;
    });
}

std::vector<TwinRow> twin_rows(std::span<const std::uint64_t> xs, std::uint64_t prime_limit)
{
    if (xs.empty())
        return {};
    const auto table = OmegaTable::build(*std::max_element(xs.begin(), xs.end()) + 2);
    twin_product(prime_limit);
    return parallel_map<TwinRow>(xs.size(), [&](std::size_t i) {
        TwinRow r;
        r.x = xs[i];
        r.exact = count_twin(table, r.x);
        r.almost = count_twin12(table, r.x);
        r.main_term = twin_main_term(static_cast<double>(r.x), prime_limit).mid();
        r.ratio_exact = static_cast<double>(r.exact) / r.main_term;
        r.ratio_almost = static_cast<double>(r.almost) / r.main_term;
        return r;
    });
}

WeightCounts weight_counts(std::span<const double> exponents, double kappa, double sigma)
{
    std::vector<double> e(exponents.begin(), exponents.end());
    std::sort(e.begin(), e.end());
    const std::size_t k = e.size();
    auto small = [&](double v) { return kappa <= v && v < sigma; };
    // every prime other than the chosen ones is at least e[j]
    auto rest_above = [&](std::size_t j, std::initializer_list<std::size_t> chosen) {
        for (std::size_t l = 0; l < k; ++l) {
            if (std::find(chosen.begin(), chosen.end(), l) != chosen.end())
                continue;
            if (e[l] < e[j])
                return false;
        }
        return true;
    };

    WeightCounts w;
    for (double v : e)
        if (small(v))
            ++w.s1;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            if (!(e[i] + 2.0 * e[j] < 1.0) || !rest_above(j, {i, j}))
                continue;
            if (sigma <= e[i])
                ++w.s2;
            else if (small(e[i]) && sigma <= e[j])
                ++w.s3;
        }
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            for (std::size_t l = j + 1; l < k; ++l)
                if (small(e[i]) && small(e[j]) && small(e[l]) && rest_above(j, {i, j, l}))
                    ++w.s4;
    w.delta = 1.0 - 0.5 * w.s1 - w.s2 - 0.5 * w.s3 + 0.5 * w.s4;
    w.delta_star = k <= 2 ? 1.0 : 0.0;
    return w;
}

std::size_t WeightReport::feasible_cases() const noexcept
{
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const auto& c) { return c.feasible; }));
}

namespace {

bool admissible(std::span<const double> e, double kappa)
{
    double sum = 0.0;
    for (double v : e) {
        if (v < kappa)
            return false;
        sum += v;
    }
    return sum < 1.0;
}

// builds a point of the cell or explains why none exists
WeightCase build_case(int omega, int small, bool split, double kappa, double sigma)
{
    WeightCase c;
    c.omega = omega;
    c.small = small;
    c.split = split;
    const double eps = 1e-7;
    std::vector<double> e;
    for (int i = 0; i < small; ++i)
        e.push_back(kappa + (i + 1) * eps);
    for (int i = 0; i < omega - small; ++i)
        e.push_back(sigma + (i + 1) * eps);
    double sum = 0.0;
    for (double v : e)
        sum += v;
    if (!(sum < 1.0)) {
        c.reason = "smallest exponents already sum to 1";
        return c;
    }
    if (omega >= 2 && !split) {
        if (omega >= 3) {
            c.reason = "e1 + 2 e2 < e1 + e2 + e3 < 1";
            return c;
        }
        if (small == 2) {
            c.reason = "e2 < sigma < 1/3";
            return c;
        }
        // push e2 just past (1 - e1)/2; it stays below 1 - e1
        e[1] = std::max(e[1], 0.5 * (1.0 - e[0]) + eps);
    } else if (omega >= 2 && !(e[0] + 2.0 * e[1] < 1.0)) {
        c.reason = "smallest e1 + 2 e2 already reaches 1";
        return c;
    }
    if (omega == 1 && split) {
        c.reason = "a single prime has no second exponent";
        return c;
    }
    c.feasible = true;
    c.witness = e;
    c.counts = weight_counts(e, kappa, sigma);
    return c;
}

} // namespace

WeightReport verify_weight_cases(int max_omega, const WeightVerifySettings& settings)
{
    const double kappa = settings.kappa, sigma = settings.sigma;
    if (max_omega < 1 || max_omega > 12)
        throw Error(ErrorKind::InvalidInput, "max omega must lie in [1, 12]");
    if (!(0.0 < kappa && kappa < sigma && sigma < 1.0 / 3.0))
        throw Error(ErrorKind::InvalidParams, "need 0 < kappa < sigma < 1/3");

    WeightReport r;
    r.kappa = kappa;
    r.sigma = sigma;
    r.max_omega = max_omega;

    auto check = [&](std::span<const double> e, const WeightCounts& w) {
        if (w.delta_star < w.delta)
            r.counterexamples.push_back({std::vector<double>(e.begin(), e.end()), w});
    };

    for (int k = 1; k <= max_omega; ++k) {
        for (int m = 0; m <= k; ++m) {
            for (bool split : {true, false}) {
                auto c = build_case(k, m, split, kappa, sigma);
                if (c.feasible) {
                    // the witness must land in the cell it was built for
                    const int small = static_cast<int>(std::count_if(
                        c.witness.begin(), c.witness.end(), [&](double v) { return v < sigma; }));
                    const bool s = k >= 2 && c.witness[0] + 2.0 * c.witness[1] < 1.0;
                    if (small != m || s != split || !admissible(c.witness, kappa))
                        throw Error(ErrorKind::InvalidInput, "witness left its cell");
                    check(c.witness, c.counts);
                }
                r.cases.push_back(std::move(c));
            }
        }
    }

    // random points, half spread over the simplex and half packed below sigma
    std::mt19937_64 rng(settings.seed);
    std::exponential_distribution<double> expo(1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 1; k <= max_omega; ++k) {
        if (k * kappa >= 1.0)
            continue;
        const double budget = 1.0 - k * kappa;
        std::vector<double> g(static_cast<std::size_t>(k) + 1), e(static_cast<std::size_t>(k));
        for (std::uint64_t n = 0; n < settings.samples_per_omega; ++n) {
            if (n % 2 == 0) {
                double total = 0.0;
                for (auto& v : g) {
                    v = expo(rng);
                    total += v;
                }
                for (int i = 0; i < k; ++i)
                    e[i] = kappa + budget * g[i + 1] / total;
            } else {
                const double width = std::min(sigma - kappa, budget / k) * 1.2;
                for (auto& v : e)
                    v = kappa + width * unit(rng);
            }
            if (!admissible(e, kappa))
                continue;
            ++r.samples;
            check(e, weight_counts(e, kappa, sigma));
        }
    }
    return r;
}

} // namespace sieveconst
