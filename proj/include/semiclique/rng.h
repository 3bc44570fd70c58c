#ifndef SEMICLIQUE_RNG_H_
#define SEMICLIQUE_RNG_H_

#include <cstdint>
#include <limits>
#include <string_view>

namespace semiclique {

// Counter-based random stream. Output i is a SplitMix64 finalization of
// key + i * golden, so a stream is fully determined by its key and position,
// and substreams derived from distinct tags never share state.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t key) : key_(key) {}

  // Independent child stream. The parent's position does not affect it.
  RandomStream substream(std::uint64_t tag) const;
  RandomStream substream(std::string_view tag) const;

  std::uint64_t operator()();

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();
  // True with probability p; p <= 0 never fires, p >= 1 always fires.
  bool bernoulli(double p);
  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t mix64(std::uint64_t x);

// Stable 64-bit FNV-1a hash, used for config hashes and string tags.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace semiclique

#endif  // SEMICLIQUE_RNG_H_
