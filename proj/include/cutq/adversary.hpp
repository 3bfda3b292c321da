#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cutq/common.hpp"
#include "cutq/graph.hpp"

namespace cutq {

using BigInt = boost::multiprecision::cpp_int;
using BigVec = std::vector<BigInt>;
using BigMat = std::vector<BigVec>;  // row-major

// ---------------------------------------------------------------------------
// symvec: column-major strict-lower-triangle packing of a symmetric
// zero-diagonal n x n matrix into a vector of length n(n-1)/2.
// ---------------------------------------------------------------------------

inline std::size_t sym_size(int n) {
  if (n < 2) throw ParameterError("symvec needs at least two vertices");
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

// Index of entry (r, c) with r > c: columns first, top to bottom inside each.
inline std::size_t sym_index(int n, int r, int c) {
  if (c < 0 || r <= c || r >= n) throw ParameterError("sym_index: need 0 <= c < r < n");
  const std::size_t col_start = static_cast<std::size_t>(c) * static_cast<std::size_t>(n) -
                                static_cast<std::size_t>(c) * static_cast<std::size_t>(c + 1) / 2;
  return col_start + static_cast<std::size_t>(r - c - 1);
}

inline BigVec sym_pack(const BigMat& dense) {
  const int n = static_cast<int>(dense.size());
  BigVec out(sym_size(n));
  for (int c = 0; c < n; ++c) {
    if (static_cast<int>(dense[static_cast<size_t>(c)].size()) != n)
      throw ParameterError("sym_pack: matrix must be square");
    if (dense[static_cast<size_t>(c)][static_cast<size_t>(c)] != 0)
      throw ParameterError("sym_pack: diagonal must be zero");
    for (int r = c + 1; r < n; ++r) {
      if (dense[static_cast<size_t>(r)][static_cast<size_t>(c)] !=
          dense[static_cast<size_t>(c)][static_cast<size_t>(r)])
        throw ParameterError("sym_pack: matrix must be symmetric");
      out[sym_index(n, r, c)] = dense[static_cast<size_t>(r)][static_cast<size_t>(c)];
    }
  }
  return out;
}

inline BigMat sym_unpack(int n, const BigVec& v) {
  if (v.size() != sym_size(n)) throw ParameterError("sym_unpack: wrong length");
  BigMat dense(static_cast<size_t>(n), BigVec(static_cast<size_t>(n), 0));
  for (int c = 0; c < n; ++c)
    for (int r = c + 1; r < n; ++r) {
      dense[static_cast<size_t>(r)][static_cast<size_t>(c)] = v[sym_index(n, r, c)];
      dense[static_cast<size_t>(c)][static_cast<size_t>(r)] = v[sym_index(n, r, c)];
    }
  return dense;
}

// ---------------------------------------------------------------------------
// Exact integer linear algebra (fraction-free).
// ---------------------------------------------------------------------------

// Bareiss fraction-free elimination; exact for integer matrices.
inline BigInt det_exact(BigMat m) {
  const int k = static_cast<int>(m.size());
  if (k == 0) return 1;
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != k) throw ParameterError("det_exact: matrix must be square");
  BigInt sign = 1;
  BigInt prev = 1;
  for (int col = 0; col + 1 < k; ++col) {
    int piv = -1;
    for (int r = col; r < k; ++r)
      if (m[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != col) {
      std::swap(m[static_cast<size_t>(piv)], m[static_cast<size_t>(col)]);
      sign = -sign;
    }
    for (int r = col + 1; r < k; ++r) {
      for (int c = col + 1; c < k; ++c) {
        m[static_cast<size_t>(r)][static_cast<size_t>(c)] =
            (m[static_cast<size_t>(col)][static_cast<size_t>(col)] *
                 m[static_cast<size_t>(r)][static_cast<size_t>(c)] -
             m[static_cast<size_t>(r)][static_cast<size_t>(col)] *
                 m[static_cast<size_t>(col)][static_cast<size_t>(c)]) /
            prev;
      }
      m[static_cast<size_t>(r)][static_cast<size_t>(col)] = 0;
    }
    prev = m[static_cast<size_t>(col)][static_cast<size_t>(col)];
  }
  return sign * m[static_cast<size_t>(k - 1)][static_cast<size_t>(k - 1)];
}

// adj(M)[i][j] = (-1)^(i+j) det(M with row j and column i removed).
inline BigMat adjugate_exact(const BigMat& m) {
  const int k = static_cast<int>(m.size());
  BigMat adj(static_cast<size_t>(k), BigVec(static_cast<size_t>(k), 0));
  if (k == 0) return adj;
  if (k == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      BigMat minor;
      minor.reserve(static_cast<size_t>(k - 1));
      for (int r = 0; r < k; ++r) {
        if (r == j) continue;
        BigVec row;
        row.reserve(static_cast<size_t>(k - 1));
        for (int c = 0; c < k; ++c) {
          if (c == i) continue;
          row.push_back(m[static_cast<size_t>(r)][static_cast<size_t>(c)]);
        }
        minor.push_back(std::move(row));
      }
      const BigInt d = det_exact(std::move(minor));
      adj[static_cast<size_t>(i)][static_cast<size_t>(j)] = ((i + j) % 2 == 0) ? d : -d;
    }
  return adj;
}

// ---------------------------------------------------------------------------
// Fredholm certificate: for columns a_1..a_k (independent) and a target b
// outside their span, the integer vector
//   y = det(AtA) * b - A * adj(AtA) * (At b)
// satisfies y'A = 0 and y'b != 0 with |y|_inf <= N^(k+1/2) k^(k/2).
// ---------------------------------------------------------------------------
inline BigVec fredholm_certificate(const BigMat& cols, const BigVec& b) {
  const int k = static_cast<int>(cols.size());
  const std::size_t big_n = b.size();
  for (const auto& col : cols)
    if (col.size() != big_n)
      throw ParameterError("fredholm certificate: column and target lengths differ");

  BigMat ata(static_cast<size_t>(k), BigVec(static_cast<size_t>(k), 0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (std::size_t r = 0; r < big_n; ++r)
        ata[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
            cols[static_cast<size_t>(i)][r] * cols[static_cast<size_t>(j)][r];

  const BigInt det = det_exact(ata);
  if (k > 0 && det == 0)
    throw ParameterError("fredholm certificate: query columns are linearly dependent");
  const BigMat adj = adjugate_exact(ata);

  BigVec atb(static_cast<size_t>(k), 0);
  for (int i = 0; i < k; ++i)
    for (std::size_t r = 0; r < big_n; ++r)
      atb[static_cast<size_t>(i)] += cols[static_cast<size_t>(i)][r] * b[r];

  BigVec w(static_cast<size_t>(k), 0);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      w[static_cast<size_t>(i)] +=
          adj[static_cast<size_t>(i)][static_cast<size_t>(j)] * atb[static_cast<size_t>(j)];

  BigVec y(big_n, 0);
  bool nonzero = false;
  for (std::size_t r = 0; r < big_n; ++r) {
    BigInt v = (k == 0 ? BigInt(1) : det) * b[r];
    for (int j = 0; j < k; ++j) v -= cols[static_cast<size_t>(j)][r] * w[static_cast<size_t>(j)];
    y[r] = v;
    if (v != 0) nonzero = true;
  }
  if (!nonzero)
    throw ParameterError(
        "fredholm certificate: the target vector lies in the span of the query columns");
  for (int j = 0; j < k; ++j) {
    BigInt dot = 0;
    for (std::size_t r = 0; r < big_n; ++r) dot += y[r] * cols[static_cast<size_t>(j)][r];
    if (dot != 0) throw IntegrityError("fredholm certificate: orthogonality identity failed");
  }
  return y;
}

// ---------------------------------------------------------------------------
// Adversary pair: two non-negative weighted graphs answering every given cut
// query identically while their total weights differ.
// ---------------------------------------------------------------------------

// m = ceil(n^(2k+1) * sqrt(k^k)), computed exactly as ceil(sqrt(n^(4k+2) k^k)).
inline BigInt adversary_base_weight(int n, int k) {
  if (n < 2 || k < 0) throw ParameterError("adversary_base_weight: need n >= 2, k >= 0");
  BigInt npow = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(2 * k + 1));
  if (k == 0) return npow;
  const BigInt kk = boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(k));
  const BigInt radicand = npow * npow * kk;
  BigInt root = boost::multiprecision::sqrt(radicand);  // floor
  if (root * root < radicand) ++root;
  return root;
}

inline BigInt big_cut_value(int n, const BigVec& w, const std::vector<std::uint8_t>& in_x) {
  BigInt total = 0;
  for (int c = 0; c < n; ++c)
    for (int r = c + 1; r < n; ++r)
      if (in_x[static_cast<size_t>(r)] != in_x[static_cast<size_t>(c)])
        total += w[sym_index(n, r, c)];
  return total;
}

struct AdversaryPair {
  int n = 0;
  int k_requested = 0;
  int k_used = 0;  // independent query-difference columns kept for the certificate
  BigInt m;        // uniform base weight of the first graph
  BigVec w1, w2;   // symvec weights of the two graphs
  BigVec cut1, cut2;  // cut answers, one per requested query
  BigInt total1, total2;
  BigVec certificate;  // y; w2 = w1 + y
  BigInt y_inf;
  BigInt bound_sq;  // N^(2k_used+1) * k_used^k_used, compared against y_inf^2
};

inline AdversaryPair build_adversary_pair(int n, const std::vector<std::vector<int>>& queries) {
  const int k = static_cast<int>(queries.size());
  if (n < 2) throw ParameterError("adversary: need at least two vertices");
  if (2 * k >= n) throw ParameterError("adversary: need fewer than n/2 queries");
  const std::size_t big_n = sym_size(n);

  std::vector<std::vector<std::uint8_t>> members;
  for (const auto& q : queries) members.push_back(make_membership(n, q));

  AdversaryPair out;
  out.n = n;
  out.k_requested = k;
  out.m = adversary_base_weight(n, k);
  out.w1.assign(big_n, out.m);

  if (k == 0) {
    // No queries to match: any single extra unit of weight separates totals.
    out.w2 = out.w1;
    out.certificate.assign(big_n, 0);
    out.certificate[0] = 1;
    out.w2[0] += 1;
    out.y_inf = 1;
    out.bound_sq = BigInt(static_cast<std::int64_t>(big_n));
  } else {
    // Column i marks the pairs split by query i; the target marks all pairs.
    BigMat all_cols(static_cast<size_t>(k), BigVec(big_n, 0));
    for (int i = 0; i < k; ++i)
      for (int c = 0; c < n; ++c)
        for (int r = c + 1; r < n; ++r)
          if (members[static_cast<size_t>(i)][static_cast<size_t>(r)] !=
              members[static_cast<size_t>(i)][static_cast<size_t>(c)])
            all_cols[static_cast<size_t>(i)][sym_index(n, r, c)] = 1;
    const BigVec b(big_n, 1);

    // Keep a maximal independent prefix-greedy subset of the columns (zero
    // and dependent columns answer identically by linearity).
    BigMat kept;
    for (int i = 0; i < k; ++i) {
      const auto& cand = all_cols[static_cast<size_t>(i)];
      if (std::all_of(cand.begin(), cand.end(), [](const BigInt& v) { return v == 0; })) continue;
      BigMat trial = kept;
      trial.push_back(cand);
      const int t = static_cast<int>(trial.size());
      BigMat gram(static_cast<size_t>(t), BigVec(static_cast<size_t>(t), 0));
      for (int a = 0; a < t; ++a)
        for (int bcol = 0; bcol < t; ++bcol)
          for (std::size_t r = 0; r < big_n; ++r)
            gram[static_cast<size_t>(a)][static_cast<size_t>(bcol)] +=
                trial[static_cast<size_t>(a)][r] * trial[static_cast<size_t>(bcol)][r];
      if (det_exact(std::move(gram)) != 0) kept = std::move(trial);
    }
    out.k_used = static_cast<int>(kept.size());
    out.certificate = fredholm_certificate(kept, b);

    out.w2 = out.w1;
    for (std::size_t r = 0; r < big_n; ++r) out.w2[r] += out.certificate[r];

    out.y_inf = 0;
    for (const auto& v : out.certificate)
      out.y_inf = std::max(out.y_inf, BigInt(boost::multiprecision::abs(v)));
    const int ku = out.k_used;
    out.bound_sq =
        boost::multiprecision::pow(BigInt(static_cast<std::int64_t>(big_n)),
                                   static_cast<unsigned>(2 * ku + 1)) *
        (ku == 0 ? BigInt(1) : boost::multiprecision::pow(BigInt(ku), static_cast<unsigned>(ku)));
    if (out.y_inf * out.y_inf > out.bound_sq)
      throw IntegrityError("adversary: certificate exceeds its norm bound");
  }

  for (const auto& v : out.w2)
    if (v < 0) throw IntegrityError("adversary: negative weight in the perturbed graph");

  out.total1 = 0;
  out.total2 = 0;
  for (std::size_t r = 0; r < big_n; ++r) {
    out.total1 += out.w1[r];
    out.total2 += out.w2[r];
  }
  if (out.total1 == out.total2)
    throw IntegrityError("adversary: total weights failed to separate");

  for (int i = 0; i < k; ++i) {
    out.cut1.push_back(big_cut_value(n, out.w1, members[static_cast<size_t>(i)]));
    out.cut2.push_back(big_cut_value(n, out.w2, members[static_cast<size_t>(i)]));
    if (out.cut1.back() != out.cut2.back())
      throw IntegrityError("adversary: a cut answer separates the pair");
  }
  return out;
}

// Writes a symvec-weighted graph in the standard text format (weights may
// exceed 64 bits, hence the dedicated writer).
inline void write_big_graph(std::ostream& os, int n, const BigVec& w) {
  if (w.size() != sym_size(n)) throw ParameterError("write_big_graph: wrong length");
  os << n << "\n";
  for (int c = 0; c < n; ++c)
    for (int r = c + 1; r < n; ++r) {
      const BigInt& v = w[sym_index(n, r, c)];
      if (v < 0) throw ParameterError("write_big_graph: negative weight");
      if (v != 0) os << c << " " << r << " " << v << "\n";
    }
}

}  // namespace cutq
