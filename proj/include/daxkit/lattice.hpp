#pragma once

// Membership in the subgroup of Z[pi \ 1] spanned by finitely many elements,
// decided exactly by column Hermite elimination over the finite support.

#include "daxkit/bigint.hpp"
#include "daxkit/group_ring.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

namespace daxkit {

namespace detail {

using Matrix = std::vector<std::vector<BigInt>>;

// Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0.
inline std::tuple<BigInt, BigInt, BigInt> extended_gcd(BigInt a, BigInt b) {
  BigInt x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    BigInt q = a / b;
    BigInt r = a - q * b;
    a = std::exchange(b, r);
    x0 = std::exchange(x1, x0 - q * x1);
    y0 = std::exchange(y1, y0 - q * y1);
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

// Replaces columns (p, q) of both matrices by (x*p + y*q, -(b/g)*p + (a/g)*q)
// where a = h[row][p], b = h[row][q]; the 2x2 transform has determinant 1.
inline void combine_columns(Matrix& h, Matrix& u, std::size_t row, std::size_t p, std::size_t q) {
  const BigInt a = h[row][p], b = h[row][q];
  auto [g, x, y] = extended_gcd(a, b);
  const BigInt s = -(b / g), t = a / g;
  auto apply = [&](Matrix& m) {
    for (auto& r : m) {
      BigInt cp = r[p], cq = r[q];
      r[p] = x * cp + y * cq;
      r[q] = s * cp + t * cq;
    }
  };
  apply(h);
  apply(u);
}

}  // namespace detail

// Returns integer coefficients c with sum c_i * generators[i] == target, or
// nullopt if no such combination exists. An empty generator list spans {0}.
inline std::optional<std::vector<BigInt>> lattice_contains(const ReducedElement& target,
                                                           std::span<const ReducedElement> generators) {
  const std::size_t k = generators.size();

  std::vector<GroupElement> basis;
  {
    RingElement::Terms support;
    for (const auto& [g, c] : target.terms()) support.emplace(g, 1);
    for (const auto& gen : generators)
      for (const auto& [g, c] : gen.terms()) support.emplace(g, 1);
    for (const auto& [g, c] : support) basis.push_back(g);
  }
  const std::size_t m = basis.size();

  detail::Matrix h(m, std::vector<BigInt>(k, BigInt(0)));
  std::vector<BigInt> rhs(m);
  for (std::size_t r = 0; r < m; ++r) {
    rhs[r] = target.ring().coefficient(basis[r]);
    for (std::size_t c = 0; c < k; ++c) h[r][c] = generators[c].ring().coefficient(basis[r]);
  }
  detail::Matrix u(k, std::vector<BigInt>(k, BigInt(0)));
  for (std::size_t c = 0; c < k; ++c) u[c][c] = 1;

  // Column echelon form H = A U; pivots[r] is the pivot column of row r.
  std::vector<std::optional<std::size_t>> pivots(m);
  std::size_t next = 0;
  for (std::size_t r = 0; r < m && next < k; ++r) {
    for (std::size_t c = next + 1; c < k; ++c)
      if (h[r][c] != 0) detail::combine_columns(h, u, r, next, c);
    if (h[r][next] != 0) pivots[r] = next++;
  }

  std::vector<BigInt> y(k, BigInt(0));
  for (std::size_t r = 0; r < m; ++r) {
    BigInt known = 0;
    for (std::size_t c = 0; c < k; ++c)
      if (h[r][c] != 0 && !(pivots[r] && *pivots[r] == c)) known += h[r][c] * y[c];
    BigInt residual = rhs[r] - known;
    if (pivots[r]) {
      const BigInt& d = h[r][*pivots[r]];
      if (residual % d != 0) return std::nullopt;
      y[*pivots[r]] = residual / d;
    } else if (residual != 0) {
      return std::nullopt;
    }
  }

  std::vector<BigInt> witness(k, BigInt(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c < k; ++c) witness[i] += u[i][c] * y[c];
  return witness;
}

inline bool quotient_equal(const ReducedElement& x, const ReducedElement& y,
                           std::span<const ReducedElement> generators) {
  return lattice_contains(x - y, generators).has_value();
}

}  // namespace daxkit
