#pragma once

#include <cstdint>

namespace rrlab {

// 64-bit multiplicative congruential generator.  The multiplier is the
// spectral-test constant 0xf1357aea2e62a9c5 (Steele & Vigna); the state is
// forced odd so the sequence never degenerates.  Every randomized search in
// the library draws from one of these, seeded explicitly, so runs are
// reproducible bit for bit.
class Mcg64 {
 public:
  explicit Mcg64(std::uint64_t seed) : state_((seed << 1) | 1u) {}

  std::uint64_t next() {
    state_ *= 0xf1357aea2e62a9c5ULL;
    return state_ >> 1;
  }

  // Uniform-ish draw in [0, n); modulo bias is irrelevant at the sizes used.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Derive an independent stream for sub-task `k` without disturbing this one.
  Mcg64 fork(std::uint64_t k) const { return Mcg64(state_ ^ (0x9e3779b97f4a7c15ULL * (k + 1))); }

 private:
  std::uint64_t state_;
};

}  // namespace rrlab
