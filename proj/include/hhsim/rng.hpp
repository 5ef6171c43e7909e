// Keyed deterministic random streams.
//
// Every draw in the simulation comes from a stream keyed by
// (master seed, purpose tag, household id, worker index), so results are
// independent of iteration order and thread count. The generator is
// splitmix64, which is fully specified and portable across platforms,
// unlike the standard-library distributions.

#ifndef HHSIM_RNG_HPP
#define HHSIM_RNG_HPP

#include <cmath>
#include <cstdint>

namespace hhsim {

// Purpose tags separating the random streams of one scenario.
enum class Draw : std::uint64_t {
  shock = 0x101,
  exclusion = 0x102,
  benefit_delay = 0x103,
  stimulus_delay = 0x104,
  synth_tract = 0x201,
  synth_income = 0x202,
  synth_savings = 0x203,
  synth_size = 0x204,
  synth_workers = 0x205,
  synth_housing = 0x206,
  synth_capital = 0x207,
  synth_sector = 0x208,
  synth_documented = 0x209,
  synth_split = 0x20a,
  synth_shuffle = 0x20b,
  test_stream = 0xf00,
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Mixes the key parts into a well-spread 64-bit seed.
inline std::uint64_t mix_key(std::uint64_t seed, std::uint64_t tag,
                             std::uint64_t a = 0, std::uint64_t b = 0) {
  std::uint64_t s = seed;
  std::uint64_t h = splitmix64(s);
  s ^= tag * 0xd6e8feb86659fd93ULL;
  h ^= splitmix64(s);
  s ^= a * 0xa3b195354a39b70dULL + 0x1b873593ULL;
  h ^= splitmix64(s);
  s ^= b * 0xcc9e2d51ULL + 0xe6546b64ULL;
  h ^= splitmix64(s);
  return h;
}

class RngStream {
 public:
  RngStream(std::uint64_t seed, Draw tag, std::uint64_t a = 0, std::uint64_t b = 0)
      : state_(mix_key(seed, static_cast<std::uint64_t>(tag), a, b)) {}

  explicit RngStream(std::uint64_t raw_state) : state_(raw_state) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  // Box-Muller, no cached spare.
  double normal() {
    double u1 = uniform01();
    double u2 = uniform01();
    // avoid log(0)
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  double normal(double mu, double sigma) { return mu + sigma * normal(); }

  double lognormal(double mu, double sigma) { return std::exp(normal(mu, sigma)); }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // multiply-shift; bias is negligible for the n used here (< 2^32)
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

// Inverse standard normal CDF (Acklam's rational approximation, refined by
// one Halley step; accurate to ~1e-15). Used for stratified sampling.
double inverse_normal_cdf(double p);

// Underlying normal parameters of a lognormal with the given arithmetic
// mean and standard deviation (moment matching).
struct LognormalParams {
  double mu;
  double sigma;
};

inline LognormalParams lognormal_from_mean_sd(double mean, double sd) {
  double cv2 = (sd / mean) * (sd / mean);
  double sigma2 = std::log(1.0 + cv2);
  return {std::log(mean) - 0.5 * sigma2, std::sqrt(sigma2)};
}

}  // namespace hhsim

#endif
