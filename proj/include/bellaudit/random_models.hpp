#pragma once

// Seeded generators of factorized cosine/sign-response models with atoms at
// rational multiples of pi, optionally pinned to the settings. Used by the
// property suites; the same seed always yields the same definitions.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "bellaudit/angles.hpp"
#include "bellaudit/model_file.hpp"

namespace bellaudit {

struct RandomModelOptions {
  /// Pin each atom's theta1 to phi1 or phi2. Unpinned atoms give a
  /// setting-independent density.
  bool pin_to_settings = true;
  std::size_t max_atoms = 3;
  /// Probability that an atom's offsets are whole multiples of pi with
  /// theta2 = theta1 + pi (an anticorrelated pair).
  double aligned_probability = 0.8;
  std::vector<std::int64_t> denominators{1, 2, 3, 4, 6};
  KernelPreset kernel = KernelPreset::cosine_response;
};

class RandomModelGenerator {
 public:
  explicit RandomModelGenerator(std::uint64_t seed, RandomModelOptions options = {})
      : seed_(seed), options_(std::move(options)), rng_(seed) {}

  std::uint64_t seed() const { return seed_; }

  ModelDefinition next() {
    ModelDefinition def;
    def.name = "random-" + std::to_string(seed_) + "-" + std::to_string(count_++);
    def.form = KernelForm::factorized;
    def.kernel = options_.kernel;

    const std::size_t n = uniform_index(options_.max_atoms) + 1;
    std::vector<std::int64_t> raw(n);
    std::int64_t total = 0;
    for (auto& w : raw) {
      w = static_cast<std::int64_t>(uniform_index(6)) + 1;
      total += w;
    }
    for (std::size_t i = 0; i < n; ++i) {
      AtomDefinition atom;
      atom.weight = Rational(raw[i], total);
      const bool aligned = std::bernoulli_distribution(options_.aligned_probability)(rng_);
      AngleExpr base;
      if (options_.pin_to_settings) {
        if (std::bernoulli_distribution(0.5)(rng_)) base.phi1 = Rational(1);
        else base.phi2 = Rational(1);
      }
      atom.theta1 = base;
      atom.theta1.pi = aligned ? Rational(static_cast<std::int64_t>(uniform_index(2))) : random_pi_fraction();
      atom.theta2 = atom.theta1;
      atom.theta2.pi = atom.theta1.pi + Rational(1) + (aligned ? Rational(0) : random_pi_fraction());
      def.atoms.push_back(atom);
    }
    return def;
  }

 private:
  std::size_t uniform_index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  /// p/q with q drawn from the configured denominators and 0 <= p < 2q.
  Rational random_pi_fraction() {
    const std::int64_t q = options_.denominators[uniform_index(options_.denominators.size())];
    const auto p = static_cast<std::int64_t>(uniform_index(static_cast<std::size_t>(2 * q)));
    return Rational(p, q);
  }

  std::uint64_t seed_;
  RandomModelOptions options_;
  std::mt19937_64 rng_;
  std::size_t count_ = 0;
};

}  // namespace bellaudit
