#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cutq {

// ---------------------------------------------------------------------------
// Error taxonomy.
//
// ParameterError    - caller passed arguments outside an operation's domain
// ModeError         - query issued against an oracle handle in the wrong mode
// DisjointnessError - a disjoint-support query was given overlapping supports
// CapacityError     - request exceeds a hard simulation capacity limit
// IntegrityError    - the simulation detected an inconsistent oracle or an
//                     internal cross-check mismatch (a bug, not bad luck)
// FailureEvent      - a statistical failure of a randomized subroutine; these
//                     are first-class outcomes reported by the drivers
// ---------------------------------------------------------------------------

struct ParameterError : std::runtime_error {
  explicit ParameterError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ModeError : std::runtime_error {
  explicit ModeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DisjointnessError : std::runtime_error {
  explicit DisjointnessError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IntegrityError : std::runtime_error {
  explicit IntegrityError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FailureEvent : std::runtime_error {
  std::string reason;
  explicit FailureEvent(const std::string& msg)
      : std::runtime_error(msg), reason(msg) {}
};

// ---------------------------------------------------------------------------
// Integer log helpers.  All logarithms in charge formulas are base 2; natural
// log appears only where a bound is stated with ln.
// ---------------------------------------------------------------------------

// Smallest m >= 0 with 2^m >= v.  Requires v >= 1.
inline std::int64_t ceil_log2(std::uint64_t v) {
  if (v == 0) throw ParameterError("ceil_log2: argument must be >= 1");
  if (v == 1) return 0;
  return std::bit_width(v - 1);
}

// Smallest m >= 0 with den * 2^m >= num, i.e. ceil(log2(num/den)) computed
// exactly in integers.  Requires num >= 1, den >= 1.
inline std::int64_t ceil_log2_ratio(std::uint64_t num, std::uint64_t den) {
  if (num == 0 || den == 0) throw ParameterError("ceil_log2_ratio: zero argument");
  std::int64_t m = 0;
  while (den < num && m < 128) {
    if (den > (std::uint64_t{1} << 62)) break;
    den <<= 1;
    ++m;
  }
  return m;
}

// ceil(log2(x)) for real x > 0, guarded against floating point noise just
// above exact integers.
inline std::int64_t ceil_log2_real(double x) {
  if (!(x > 0.0)) throw ParameterError("ceil_log2_real: argument must be > 0");
  double lg = std::log2(x);
  std::int64_t c = static_cast<std::int64_t>(std::ceil(lg - 1e-9));
  return c < 0 ? 0 : c;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  return (a + b - 1) / b;
}

// ceil of a positive real, as int64.
inline std::int64_t ceil_to_i64(double x) {
  return static_cast<std::int64_t>(std::ceil(x - 1e-9));
}

// ---------------------------------------------------------------------------
// Deterministic seed derivation.  Every run owns a master seed; subsystems
// draw from independent child streams so that toggling one subsystem (e.g.
// auditing) never perturbs another's randomness.
// ---------------------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_label(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  return splitmix64(seed ^ hash_label(label));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::string_view label) {
  return Rng(derive_seed(seed, label));
}

// Uniform integer in [0, n).
inline std::int64_t rand_below(Rng& rng, std::int64_t n) {
  return static_cast<std::int64_t>(
      std::uniform_int_distribution<std::uint64_t>(0, static_cast<std::uint64_t>(n) - 1)(rng));
}

}  // namespace cutq
