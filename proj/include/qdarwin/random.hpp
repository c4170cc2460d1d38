#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "qdarwin/qstate.hpp"

namespace qdarwin {

// Stream seed for trial k of a named experiment. Documented derivation:
// splitmix64(splitmix64(base ^ fnv1a64(tag)) + k), so adding experiments
// or reordering trials never shifts existing streams.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag, std::uint64_t k);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a64(std::string_view s);

// mt19937_64-backed stream with a hand-rolled Box-Muller transform;
// std::normal_distribution is implementation-defined and would break
// the bit-stable-output contract.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  double uniform();   // [0, 1)
  double gaussian();  // standard normal

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// Haar-distributed unitary: QR of a complex Ginibre matrix with the
// R-diagonal phases absorbed into Q.
Matrix haar_random_unitary(int dim, RandomStream& rng);

// Random full-rank density matrix, rho = A A^dagger / tr(A A^dagger).
Matrix random_density_matrix(int dim, RandomStream& rng);

}  // namespace qdarwin
