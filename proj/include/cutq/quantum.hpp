#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "cutq/common.hpp"
#include "cutq/ledger.hpp"
#include "cutq/oracle.hpp"

namespace cutq {

// Controls the uncharged self-consistency probes the simulated quantum
// primitive performs.  Toggling auditing changes only the audit counter and
// correctness flags, never a charged counter.
struct AuditConfig {
  bool enabled = false;
  int checks = 2;
};

using SubsetSumFn = std::function<std::int64_t(const std::vector<int>&)>;

// Learns x in [M]^k from an oracle returning subset sums of x mod M, at a
// charge of exactly ceil(log2 M) oracle queries.  A quantum device achieves
// this exactly (phase estimation against a Fourier-basis ancilla); the
// classical simulator instead reads x through uncharged singleton probes
// (counted under ledger.audit), bills the quantum charge, and optionally
// cross-checks the oracle's additivity on random subsets.
inline std::vector<std::int64_t> qft_learn_subset_sums(const SubsetSumFn& oracle, int k,
                                                       std::int64_t M, QueryLedger& ledger,
                                                       const AuditConfig& audit = {},
                                                       Rng* audit_rng = nullptr) {
  if (k < 0) throw ParameterError("qft_learn_subset_sums: k must be >= 0");
  if (M < 2) throw ParameterError("qft_learn_subset_sums: modulus must be >= 2");
  QueryLedger::TraceScope scope(ledger);
  std::vector<std::int64_t> x(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    x[static_cast<size_t>(i)] = floor_mod(oracle({i}), M);
    ledger.charge(QueryKind::audit);
  }
  const std::int64_t m = ceil_log2(static_cast<std::uint64_t>(M));
  ledger.charge(QueryKind::quantum_charged, m);
  if (audit.enabled && k > 0) {
    Rng fallback = make_rng(0xa0d17ULL ^ static_cast<std::uint64_t>(M), "qft/audit");
    Rng& rng = audit_rng ? *audit_rng : fallback;
    for (int t = 0; t < audit.checks; ++t) {
      std::vector<int> subset;
      std::int64_t want = 0;
      for (int i = 0; i < k; ++i) {
        if (rng() & 1) {
          subset.push_back(i);
          want = floor_mod(want + x[static_cast<size_t>(i)], M);
        }
      }
      ledger.charge(QueryKind::audit);
      if (floor_mod(oracle(subset), M) != want)
        throw IntegrityError("subset-sum oracle inconsistent with learned vector");
    }
  }
  TraceRecord rec;
  rec.op = TraceOp::qft_subset_sum;
  rec.i0 = M;
  rec.i1 = static_cast<std::int64_t>(QueryKind::quantum_charged);
  rec.i2 = 0;  // no backend primitives behind a raw callable
  scope.record(rec);
  return x;
}

// Computes (A y) mod M through the quantum subset-sum primitive: the
// subset-sum oracle is S -> chi_S^T A y mod M, each call one charged matrix
// query on the channel's backend.  The hidden vector is obtained through the
// channel's privileged evaluation; charges are billed in exact closed form.
inline std::vector<std::int64_t> compute_Ay_mod(MatrixCutChannel& channel,
                                                const std::vector<std::uint8_t>& y,
                                                std::int64_t M,
                                                const AuditConfig& audit = {},
                                                Rng* audit_rng = nullptr) {
  if (M < 2) throw ParameterError("compute_Ay_mod: modulus must be >= 2");
  QueryLedger& ledger = channel.ledger();
  QueryLedger::TraceScope scope(ledger);
  const int k = channel.rows();
  std::vector<std::int64_t> v = channel.matvec(y);
  for (auto& e : v) e = floor_mod(e, M);
  const std::int64_t m = ceil_log2(static_cast<std::uint64_t>(M));
  channel.charge_bulk(m);
  ledger.charge(QueryKind::quantum_charged, m);
  if (audit.enabled && k > 0) {
    Rng fallback = make_rng(0xc0ffeeULL ^ static_cast<std::uint64_t>(M), "ay/audit");
    Rng& rng = audit_rng ? *audit_rng : fallback;
    for (int t = 0; t < audit.checks; ++t) {
      std::vector<std::uint8_t> sel(static_cast<size_t>(k), 0);
      std::int64_t want = 0;
      for (int i = 0; i < k; ++i) {
        if (rng() & 1) {
          sel[static_cast<size_t>(i)] = 1;
          want = floor_mod(want + v[static_cast<size_t>(i)], M);
        }
      }
      ledger.charge(QueryKind::audit);
      if (floor_mod(channel.eval_uncharged(sel, y), M) != want)
        throw IntegrityError("matrix channel inconsistent with privileged evaluation");
    }
  }
  TraceRecord rec;
  rec.op = TraceOp::qft_subset_sum;
  rec.i0 = M;
  rec.i1 = static_cast<std::int64_t>(channel.backend_kind());
  rec.i2 = channel.backend_multiplier();
  scope.record(rec);
  return v;
}

// ---------------------------------------------------------------------------
// Exact statevector check of the subset-sum learning protocol.
//
// Register 1 holds t in [M]^k, register 2 holds a Fourier-basis state xi_M.
// The oracle call |t>|j> -> |t>|j + t.x mod M> kicks back a phase w^{-t.x};
// a quantum Fourier transform over (Z_M)^k then concentrates all amplitude
// on |x>.  Returns true when the measured mass on x is >= 1 - 1e-9.
// ---------------------------------------------------------------------------

struct StatevectorReport {
  bool ok = false;
  double mass_on_x = 0.0;
};

inline StatevectorReport statevector_validate(const std::vector<std::int64_t>& x,
                                              std::int64_t M) {
  const int k = static_cast<int>(x.size());
  if (k < 0 || k > 6) throw CapacityError("statevector_validate supports k <= 6");
  if (M < 2 || M > 4) throw CapacityError("statevector_validate supports M <= 4");
  for (auto xi : x)
    if (xi < 0 || xi >= M) throw ParameterError("statevector_validate: x entries must be in [M]");

  std::size_t N = 1;
  for (int i = 0; i < k; ++i) N *= static_cast<std::size_t>(M);
  const std::size_t Mm = static_cast<std::size_t>(M);
  const double pi = 3.14159265358979323846;
  const std::complex<double> im(0.0, 1.0);

  // Initial product state: uniform over register 1, xi_M on register 2.
  std::vector<std::complex<double>> amp(N * Mm);
  const double norm = 1.0 / std::sqrt(static_cast<double>(N) * static_cast<double>(Mm));
  for (std::size_t t = 0; t < N; ++t)
    for (std::size_t j = 0; j < Mm; ++j)
      amp[t * Mm + j] = norm * std::exp(im * (2.0 * pi * static_cast<double>(j) / static_cast<double>(M)));

  // Oracle: |t>|j> -> |t>|j + t.x mod M>.
  std::vector<std::complex<double>> next(N * Mm);
  for (std::size_t t = 0; t < N; ++t) {
    std::size_t rem = t;
    std::int64_t dot = 0;
    for (int i = 0; i < k; ++i) {
      dot += static_cast<std::int64_t>(rem % Mm) * x[static_cast<size_t>(i)];
      rem /= Mm;
    }
    const std::size_t shift = static_cast<std::size_t>(floor_mod(dot, M));
    for (std::size_t j = 0; j < Mm; ++j)
      next[t * Mm + (j + shift) % Mm] = amp[t * Mm + j];
  }
  amp.swap(next);

  // QFT over (Z_M)^k on register 1, one coordinate at a time.
  std::vector<std::complex<double>> twiddle(Mm * Mm);
  for (std::size_t a = 0; a < Mm; ++a)
    for (std::size_t b = 0; b < Mm; ++b)
      twiddle[a * Mm + b] =
          std::exp(im * (2.0 * pi * static_cast<double>(a * b) / static_cast<double>(M))) /
          std::sqrt(static_cast<double>(M));
  std::size_t stride = 1;
  for (int axis = 0; axis < k; ++axis) {
    std::fill(next.begin(), next.end(), std::complex<double>(0.0, 0.0));
    for (std::size_t t = 0; t < N; ++t) {
      const std::size_t digit = (t / stride) % Mm;
      const std::size_t base = t - digit * stride;
      for (std::size_t s = 0; s < Mm; ++s) {
        const std::size_t target = base + s * stride;
        for (std::size_t j = 0; j < Mm; ++j)
          next[target * Mm + j] += twiddle[digit * Mm + s] * amp[t * Mm + j];
      }
    }
    // Each axis pass fully redistributes that digit; swap and continue.
    amp.swap(next);
    stride *= Mm;
  }

  std::size_t xi = 0;
  std::size_t mult = 1;
  for (int i = 0; i < k; ++i) {
    xi += static_cast<std::size_t>(x[static_cast<size_t>(i)]) * mult;
    mult *= Mm;
  }
  double mass = 0.0;
  for (std::size_t j = 0; j < Mm; ++j) mass += std::norm(amp[xi * Mm + j]);

  StatevectorReport rep;
  rep.mass_on_x = mass;
  rep.ok = mass >= 1.0 - 1e-9;
  return rep;
}

}  // namespace cutq
