#pragma once

/**
 * @file verify.hpp
 * @brief Randomized theorem-verification suites, instance generators with
 *        shrinking, and the independent snake-lemma oracle.
 */

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "homcx/complex.hpp"

namespace homcx {

/// Deterministic generator; all randomness in the engine flows through this
/// (splitmix64), so seeds reproduce bit-identically across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    /// Uniform value in [0, n).
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    std::uint32_t fp_element(std::uint32_t p) { return std::uint32_t(below(p)); }

private:
    std::uint64_t state_;
};

/// Connecting homomorphism H_n(quot) -> H_{n-1}(sub) of a degreewise exact
/// sequence of complexes, computed by an element-level diagram chase
/// (choose a preimage, push through the differential, pull back). This is
/// deliberately independent of the theta machinery it cross-checks.
Mat snake_connecting(const ChainMap& mu, const ChainMap& mu_prime, int n,
                     const Homology& h_quot_n, const Homology& h_sub_prev);

struct VerifyFailure {
    std::string description;
    std::string counterexample_json; ///< replayable serialized instance
};

struct VerdictReport {
    std::string suite;
    std::uint64_t seed = 0;
    int trials = 0;
    int instances_run = 0;
    std::vector<VerifyFailure> failures;
    bool ok() const { return failures.empty(); }
};

/// Runs one named suite. Known names:
///   schanuel, gpd_pd, gpd_ineq, coproducts, tate_shift_sum, independence,
///   les_exactness, theta_vs_snake, gorenstein_bound, old_def,
///   totally_acyclic, selftest_fail (deliberately failing harness check).
VerdictReport verify_suite(const std::string& name, std::uint64_t seed, int trials,
                           int bound);

std::vector<std::string> verify_suite_names();

/// Re-runs the predicate of a serialized counterexample; returns true when
/// it fails again identically (the expected outcome for a genuine report).
bool replay_counterexample(const std::string& json_text);

} // namespace homcx
