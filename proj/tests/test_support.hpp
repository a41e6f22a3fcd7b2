#ifndef IPB_TEST_SUPPORT_HPP
#define IPB_TEST_SUPPORT_HPP

#include <functional>
#include <random>
#include <vector>

#include "ipb/consistency.hpp"
#include "ipb/core.hpp"
#include "ipb/errors.hpp"

namespace ipb::testing {

/// Run fn and return the error code it throws; fails the calling test when
/// nothing is thrown.
template <typename Fn>
Errc code_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    throw std::logic_error("expected an ipb::Error");
}

struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed) : eng(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng);
    }
    int uniform_int(int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(eng);
    }
    std::vector<double> probability(std::size_t n) {
        std::exponential_distribution<double> expo(1.0);
        std::vector<double> p(n);
        double total = 0.0;
        for (double& v : p) {
            v = expo(eng);
            total += v;
        }
        for (double& v : p) v /= total;
        return p;
    }
    std::vector<double> values(std::size_t n, double lo, double hi) {
        std::vector<double> v(n);
        for (double& x : v) x = uniform(lo, hi);
        return v;
    }
};

inline Gamble ex43_gamble(const PartitionPtr& part) {
    return Gamble(part, {-1.0, 1.0, 2.0});
}

/// The three-atom worked example: X = (-1, 1, 2) with lower prevision 0.75.
inline Assessment ex43_assessment() {
    const PartitionPtr part = make_partition(3);
    Assessment a(part);
    a.add_lower("X", ex43_gamble(part), 0.75);
    return a;
}

inline double expectation(const std::vector<double>& p, const Gamble& g) {
    double e = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) e += p[i] * g[i];
    return e;
}

/// Coherent by construction: lower values are the pointwise minimum of the
/// expectations under a handful of random probability vectors (a finite
/// lower envelope is always coherent).
inline Assessment coherent_assessment(Rng& rng, std::size_t atoms, std::size_t entries,
                                      double lo = -2.0, double hi = 3.0) {
    const PartitionPtr part = make_partition(atoms);
    const int support = rng.uniform_int(1, 4);
    std::vector<std::vector<double>> extreme;
    for (int s = 0; s < support; ++s) extreme.push_back(rng.probability(atoms));

    Assessment a(part);
    for (std::size_t j = 0; j < entries; ++j) {
        Gamble g(part, rng.values(atoms, lo, hi));
        double lower = std::numeric_limits<double>::infinity();
        for (const auto& p : extreme) lower = std::min(lower, expectation(p, g));
        a.add_lower("X" + std::to_string(j), std::move(g), lower);
    }
    return a;
}

/// Pins the credal set to the single vector p by assessing every atom
/// indicator from both sides.
inline Assessment precise_assessment(const PartitionPtr& part, const std::vector<double>& p) {
    Assessment a(part);
    for (std::size_t i = 0; i < part->size(); ++i) {
        const Gamble ind = Event(part, {i}).indicator();
        a.add_lower("A" + std::to_string(i), ind, p[i]);
        a.add_upper("A" + std::to_string(i), ind, p[i]);
    }
    return a;
}

} // namespace ipb::testing

#endif
