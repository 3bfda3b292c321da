#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cutq/common.hpp"
#include "cutq/matrix.hpp"

namespace cutq {

// Hard cap on the candidate count an exhaustive decode may enumerate.
inline constexpr std::int64_t kDecodeCandidateCap = 10'000'000;

// ---------------------------------------------------------------------------
// Random binary sketches: a random r x q 0/1 matrix R such that distinct
// d-sparse rows x in [M]^r have distinct signatures x^T R mod M with
// probability >= 1 - delta, given
//   q = ceil( 2 d log2(e M r / d) + 2 log2(d) + log2(1/delta) ).
// ---------------------------------------------------------------------------

struct SketchSpec {
  int r = 0;
  std::int64_t M = 2;
  int d = 1;
  double delta = 0.5;

  std::int64_t columns() const {
    if (r < 1 || M < 2 || d < 1 || !(delta > 0.0) || !(delta < 1.0))
      throw ParameterError("sketch spec out of domain");
    const double e = 2.718281828459045235;
    const double v = 2.0 * d * std::log2(e * static_cast<double>(M) * r / d) +
                     2.0 * std::log2(static_cast<double>(d)) + std::log2(1.0 / delta);
    return ceil_to_i64(v);
  }
};

struct Sketch {
  int r = 0;
  std::int64_t M = 2;
  std::int64_t q = 0;
  // Column-major bit rows: R[i] holds the q bits of row i.
  std::vector<std::vector<std::uint8_t>> R;

  static Sketch draw(const SketchSpec& spec, Rng& rng) {
    return draw_with_columns(spec.r, spec.M, spec.columns(), rng);
  }

  static Sketch draw_with_columns(int r, std::int64_t M, std::int64_t q, Rng& rng) {
    if (r < 0 || M < 2 || q < 0) throw ParameterError("sketch: bad dimensions");
    Sketch sk;
    sk.r = r;
    sk.M = M;
    sk.q = q;
    sk.R.assign(static_cast<size_t>(r), std::vector<std::uint8_t>(static_cast<size_t>(q)));
    for (auto& row : sk.R)
      for (auto& bit : row) bit = static_cast<std::uint8_t>(rng() & 1);
    return sk;
  }

  // x^T R mod M for x in [M]^r.
  std::vector<std::int64_t> signature(const std::vector<std::int64_t>& x) const {
    if (static_cast<int>(x.size()) != r) throw ParameterError("signature: length mismatch");
    std::vector<std::int64_t> sig(static_cast<size_t>(q), 0);
    for (int i = 0; i < r; ++i) {
      const std::int64_t xi = floor_mod(x[static_cast<size_t>(i)], M);
      if (xi == 0) continue;
      const auto& row = R[static_cast<size_t>(i)];
      for (std::int64_t c = 0; c < q; ++c)
        if (row[static_cast<size_t>(c)])
          sig[static_cast<size_t>(c)] = floor_mod(sig[static_cast<size_t>(c)] + xi, M);
    }
    return sig;
  }

  // Number of <= d-sparse candidate vectors in [M]^r.
  std::int64_t candidate_count(int d) const {
    double total = 1.0;  // the zero vector
    double binom = 1.0;
    for (int j = 1; j <= std::min(d, r); ++j) {
      binom = binom * (r - j + 1) / j;
      total += binom * std::pow(static_cast<double>(M - 1), j);
      if (total > 2.0 * static_cast<double>(kDecodeCandidateCap)) break;
    }
    return total > 2.0 * static_cast<double>(kDecodeCandidateCap)
               ? 2 * kDecodeCandidateCap
               : static_cast<std::int64_t>(total);
  }
};

enum class DecodeStatus { ok, ambiguous, no_match };

struct DecodeResult {
  DecodeStatus status = DecodeStatus::no_match;
  std::vector<std::int64_t> value;  // valid when status == ok
};

namespace detail_sketch {

struct HalfCandidate {
  std::vector<std::pair<int, std::int64_t>> support;  // (position, value)
  std::vector<std::int64_t> sig;
};

inline std::uint64_t sig_hash(const std::vector<std::int64_t>& sig) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto v : sig) {
    h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Depth-first enumeration of all <= d-sparse vectors supported on positions
// [lo, hi) of the sketch, invoking `emit` with the support and its signature.
inline void enumerate_half(const Sketch& sk, int lo, int hi, int d,
                           std::vector<std::pair<int, std::int64_t>>& support,
                           std::vector<std::int64_t>& sig,
                           const std::function<void(const std::vector<std::pair<int, std::int64_t>>&,
                                                    const std::vector<std::int64_t>&)>& emit,
                           int next) {
  emit(support, sig);
  if (static_cast<int>(support.size()) == d) return;
  for (int pos = next; pos < hi; ++pos) {
    const auto& row = sk.R[static_cast<size_t>(pos)];
    for (std::int64_t val = 1; val < sk.M; ++val) {
      support.emplace_back(pos, val);
      for (std::int64_t c = 0; c < sk.q; ++c)
        if (row[static_cast<size_t>(c)])
          sig[static_cast<size_t>(c)] = floor_mod(sig[static_cast<size_t>(c)] + val, sk.M);
      enumerate_half(sk, lo, hi, d, support, sig, emit, pos + 1);
      for (std::int64_t c = 0; c < sk.q; ++c)
        if (row[static_cast<size_t>(c)])
          sig[static_cast<size_t>(c)] = floor_mod(sig[static_cast<size_t>(c)] - val, sk.M);
      support.pop_back();
    }
  }
}

}  // namespace detail_sketch

// Exhaustive decoding by meet-in-the-middle over the support halves: finds
// every <= d-sparse vector with the given signature.  Two or more matches is
// the sketch failure event and is reported as ambiguity.
inline DecodeResult decode_exhaustive(const Sketch& sk, const std::vector<std::int64_t>& sig,
                                      int d) {
  if (d < 0) throw ParameterError("decode: d must be >= 0");
  if (static_cast<int>(sig.size()) != sk.q) throw ParameterError("decode: signature length mismatch");
  if (sk.candidate_count(d) > kDecodeCandidateCap)
    throw CapacityError("decode: candidate space exceeds the exhaustive cap");

  using detail_sketch::HalfCandidate;
  const int mid = sk.r / 2;

  std::vector<HalfCandidate> left;
  std::unordered_multimap<std::uint64_t, std::size_t> index;
  {
    std::vector<std::pair<int, std::int64_t>> support;
    std::vector<std::int64_t> s(static_cast<size_t>(sk.q), 0);
    detail_sketch::enumerate_half(
        sk, 0, mid, d, support, s,
        [&](const auto& sup, const auto& sg) {
          left.push_back({sup, sg});
          index.emplace(detail_sketch::sig_hash(sg), left.size() - 1);
        },
        0);
  }

  std::vector<std::vector<std::int64_t>> matches;
  {
    std::vector<std::pair<int, std::int64_t>> support;
    std::vector<std::int64_t> s(static_cast<size_t>(sk.q), 0);
    detail_sketch::enumerate_half(
        sk, mid, sk.r, d, support, s,
        [&](const auto& sup, const auto& sg) {
          if (matches.size() >= 2) return;
          // Need left-signature == sig - sg (mod M).
          std::vector<std::int64_t> want(static_cast<size_t>(sk.q));
          for (std::int64_t c = 0; c < sk.q; ++c)
            want[static_cast<size_t>(c)] =
                floor_mod(sig[static_cast<size_t>(c)] - sg[static_cast<size_t>(c)], sk.M);
          auto [lo, hi] = index.equal_range(detail_sketch::sig_hash(want));
          for (auto it = lo; it != hi; ++it) {
            const auto& cand = left[it->second];
            if (cand.sig != want) continue;
            if (static_cast<int>(cand.support.size() + sup.size()) > d) continue;
            std::vector<std::int64_t> full(static_cast<size_t>(sk.r), 0);
            for (auto [p, v] : cand.support) full[static_cast<size_t>(p)] = v;
            for (auto [p, v] : sup) full[static_cast<size_t>(p)] = v;
            matches.push_back(std::move(full));
            if (matches.size() >= 2) return;
          }
        },
        mid);
  }

  DecodeResult res;
  if (matches.empty()) {
    res.status = DecodeStatus::no_match;
  } else if (matches.size() > 1) {
    res.status = DecodeStatus::ambiguous;
  } else {
    res.status = DecodeStatus::ok;
    res.value = std::move(matches[0]);
  }
  return res;
}

// Trusted decoding: verifies that the privileged hidden row is d-sparse and
// signature-consistent, then returns it.  A hidden row that is not d-sparse
// is the failure event an exhaustive decoder would report as no-match; a
// signature mismatch on a sparse row indicates a corrupted oracle.
inline DecodeResult decode_trusted(const Sketch& sk, const std::vector<std::int64_t>& sig,
                                   int d, const std::vector<std::int64_t>& hidden_row) {
  if (static_cast<int>(hidden_row.size()) != sk.r)
    throw ParameterError("decode: hidden row length mismatch");
  std::int64_t nnz = 0;
  for (auto v : hidden_row)
    if (floor_mod(v, sk.M) != 0) ++nnz;
  DecodeResult res;
  if (nnz > d) {
    res.status = DecodeStatus::no_match;
    return res;
  }
  if (sk.signature(hidden_row) != sig)
    throw IntegrityError("trusted decode: hidden row contradicts observed signature");
  res.status = DecodeStatus::ok;
  res.value = hidden_row;
  for (auto& v : res.value) v = floor_mod(v, sk.M);
  return res;
}

// ---------------------------------------------------------------------------
// OR-query approximate counting.
// ---------------------------------------------------------------------------

// Probability that an OR test over r with-replacement samples from [l] hits
// a string of Hamming weight t.
inline double r_test_success_prob(std::int64_t t, std::int64_t l, std::int64_t r) {
  if (l < 1 || t < 0 || t > l || r < 0) throw ParameterError("r_test_success_prob: bad arguments");
  return 1.0 - std::pow(1.0 - static_cast<double>(t) / static_cast<double>(l),
                        static_cast<double>(r));
}

// A k-OR oracle answers, for each of k hidden strings, whether the string is
// 1 anywhere on the sampled positions (a multiset of indices in [l]).
using KOrOracle = std::function<std::vector<std::uint8_t>(const std::vector<int>&)>;

struct ApproxCountResult {
  std::vector<double> estimate;
  std::int64_t or_queries = 0;
  std::int64_t repetitions = 0;  // the repetition count `a`
};

inline std::int64_t approx_count_repetitions(int k, std::int64_t l, double delta,
                                             std::int64_t rep_const) {
  const std::int64_t levels = ceil_log2(static_cast<std::uint64_t>(l)) + 1;
  return rep_const * ceil_log2_real(static_cast<double>(k) * static_cast<double>(levels) / delta);
}

inline std::int64_t approx_count_queries(int k, std::int64_t l, double delta,
                                         std::int64_t rep_const) {
  const std::int64_t levels = ceil_log2(static_cast<std::uint64_t>(l)) + 1;
  return approx_count_repetitions(k, l, delta, rep_const) * levels;
}

// Estimates the Hamming weight of each hidden string.  For each scale j the
// oracle is probed `a` times with min(2^j, l) with-replacement samples; the
// estimate is l / 2^s for the smallest scale whose majority vote succeeded,
// and 0 when no scale succeeds.  Uses exactly a * (ceil(log2 l) + 1) OR
// queries.
inline ApproxCountResult approximate_count(const KOrOracle& oracle, int k, std::int64_t l,
                                           double delta, std::int64_t rep_const, Rng& rng) {
  if (k < 1 || l < 1) throw ParameterError("approximate_count: need k >= 1 and l >= 1");
  if (!(delta > 0.0) || !(delta < 1.0))
    throw ParameterError("approximate_count: delta must be in (0,1)");
  const std::int64_t levels = ceil_log2(static_cast<std::uint64_t>(l)) + 1;
  const std::int64_t a = approx_count_repetitions(k, l, delta, rep_const);

  ApproxCountResult res;
  res.repetitions = a;
  std::vector<std::int64_t> first_success(static_cast<size_t>(k), -1);
  std::vector<std::int64_t> ones(static_cast<size_t>(k));
  std::vector<int> sample;
  for (std::int64_t j = 0; j < levels; ++j) {
    const std::int64_t samples = std::min<std::int64_t>(std::int64_t{1} << j, l);
    std::fill(ones.begin(), ones.end(), 0);
    for (std::int64_t rep = 0; rep < a; ++rep) {
      sample.clear();
      for (std::int64_t s = 0; s < samples; ++s)
        sample.push_back(static_cast<int>(rand_below(rng, l)));
      const auto ans = oracle(sample);
      ++res.or_queries;
      for (int i = 0; i < k; ++i) ones[static_cast<size_t>(i)] += ans[static_cast<size_t>(i)];
    }
    const std::int64_t majority = (a + 1) / 2;
    for (int i = 0; i < k; ++i)
      if (first_success[static_cast<size_t>(i)] < 0 && ones[static_cast<size_t>(i)] >= majority)
        first_success[static_cast<size_t>(i)] = j;
  }

  res.estimate.assign(static_cast<size_t>(k), 0.0);
  for (int i = 0; i < k; ++i) {
    const std::int64_t s = first_success[static_cast<size_t>(i)];
    if (s >= 0)
      res.estimate[static_cast<size_t>(i)] =
          static_cast<double>(l) / static_cast<double>(std::int64_t{1} << s);
  }
  return res;
}

// Component-wise check of the approximation contract: b/4 <= c <= 2b when
// both are positive, and agreement on zero.
inline bool is_good_estimate(const std::vector<double>& estimate,
                             const std::vector<std::int64_t>& truth) {
  if (estimate.size() != truth.size()) return false;
  for (size_t i = 0; i < truth.size(); ++i) {
    const double b = estimate[i];
    const double c = static_cast<double>(truth[i]);
    if (c == 0.0) {
      if (b != 0.0) return false;
    } else {
      if (!(b / 4.0 <= c && c <= 2.0 * b)) return false;
    }
  }
  return true;
}

// A with-replacement sample of [l] of size ceil(8 l ln(k/delta) / t), large
// enough to hit every one of k hidden sets of size between t/8 and 2t with
// per-set failure probability <= delta, and with bounded overlap.
inline std::vector<int> sample_hitting_set(std::int64_t l, std::int64_t t, std::int64_t k,
                                           double delta, Rng& rng) {
  if (l < 1 || t < 1 || k < 1 || !(delta > 0.0) || !(delta < 1.0))
    throw ParameterError("sample_hitting_set: bad arguments");
  const double raw = 8.0 * static_cast<double>(l) *
                     std::log(static_cast<double>(k) / delta) / static_cast<double>(t);
  const std::int64_t size = std::max<std::int64_t>(1, ceil_to_i64(raw));
  std::vector<int> out;
  out.reserve(static_cast<size_t>(size));
  for (std::int64_t i = 0; i < size; ++i)
    out.push_back(static_cast<int>(rand_below(rng, l)));
  return out;
}

}  // namespace cutq
