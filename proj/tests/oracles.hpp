#pragma once

// Self-contained reference implementations used only by the test suite.
// Everything here is written against textbook definitions, independently of
// the library code paths it cross-checks: different data layouts, different
// algorithms where possible.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace oracle {

// Binomial coefficients by Pascal's triangle (non-negative arguments).
inline mpz_class pascal_binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::vector<mpz_class> row(n + 1, 0);
  row[0] = 1;
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = i; j >= 1; --j) row[j] += row[j - 1];
  return row[k];
}

// Modular inverse by brute-force search; fine for small moduli.
inline unsigned long scan_inverse_mod(unsigned long a, unsigned long m) {
  a %= m;
  for (unsigned long x = 1; x < m; ++x)
    if ((a * x) % m == 1) return x;
  throw std::runtime_error("not invertible");
}

// v_p(n!) by the naive route: factor n! one factor at a time.
inline unsigned long factorial_valuation(unsigned long n, unsigned long p) {
  unsigned long total = 0;
  for (unsigned long i = 2; i <= n; ++i) {
    unsigned long v = i;
    while (v % p == 0) {
      v /= p;
      ++total;
    }
  }
  return total;
}

// Dense noncommutative polynomial over Z in d variables, truncated below
// degree N. Plain lexicographic map order; coefficients are exact integers.
struct NcPoly {
  unsigned d = 1;
  unsigned N = 2;
  std::map<std::vector<unsigned>, mpz_class> c;

  static NcPoly one(unsigned d, unsigned N) {
    NcPoly p{d, N, {}};
    p.c[{}] = 1;
    return p;
  }
  static NcPoly one_plus_var(unsigned d, unsigned N, unsigned i) {
    NcPoly p = one(d, N);
    if (N > 1) p.c[{i}] = 1;
    return p;
  }

  void prune() {
    for (auto it = c.begin(); it != c.end();)
      it = (it->second == 0) ? c.erase(it) : std::next(it);
  }

  NcPoly mul(const NcPoly& o) const {
    NcPoly r{d, N, {}};
    for (const auto& [ma, ca] : c)
      for (const auto& [mb, cb] : o.c) {
        if (ma.size() + mb.size() >= N) continue;
        std::vector<unsigned> m = ma;
        m.insert(m.end(), mb.begin(), mb.end());
        r.c[m] += ca * cb;
      }
    r.prune();
    return r;
  }

  NcPoly inverse() const {
    // Constant term must be +-1 for an exact integer inverse.
    auto it = c.find({});
    if (it == c.end() || (it->second != 1 && it->second != -1))
      throw std::runtime_error("inverse needs constant term +-1");
    mpz_class c0 = it->second;
    NcPoly g = *this;
    g.c.erase(std::vector<unsigned>{});
    if (c0 == -1)
      for (auto& [m, v] : g.c) v = -v;
    NcPoly acc = one(d, N);
    NcPoly pw = one(d, N);
    NcPoly ng{d, N, {}};
    for (const auto& [m, v] : g.c) ng.c[m] = -v;
    for (unsigned j = 1; j < N; ++j) {
      pw = pw.mul(ng);
      if (pw.c.empty()) break;
      for (const auto& [m, v] : pw.c) acc.c[m] += v;
    }
    acc.prune();
    if (c0 == -1)
      for (auto& [m, v] : acc.c) v = -v;
    return acc;
  }
};

// Evaluate a letter sequence (index, sign) through x_i -> 1 + y_i over Z.
inline NcPoly eval_letters(const std::vector<std::pair<unsigned, int>>& letters, unsigned d,
                           unsigned N) {
  NcPoly acc = NcPoly::one(d, N);
  for (auto [i, s] : letters) {
    NcPoly g = NcPoly::one_plus_var(d, N, i);
    acc = acc.mul(s > 0 ? g : g.inverse());
  }
  return acc;
}

// Lowest degree with a nonzero coefficient in (value - 1); 0 if none below N.
inline unsigned lowest_aug_degree(const NcPoly& value) {
  unsigned best = 0;
  for (const auto& [m, v] : value.c) {
    if (m.empty()) continue;
    if (v != 0 && (best == 0 || m.size() < best)) best = static_cast<unsigned>(m.size());
  }
  return best;
}

// Witt number W_d(s) = (1/s) sum_{e | s} mu(e) d^(s/e).
inline long witt_number(unsigned d, unsigned s) {
  auto mobius = [](unsigned n) -> int {
    int m = 1;
    for (unsigned q = 2; q * q <= n; ++q) {
      if (n % q == 0) {
        n /= q;
        if (n % q == 0) return 0;
        m = -m;
      }
    }
    if (n > 1) m = -m;
    return m;
  };
  long total = 0;
  for (unsigned e = 1; e <= s; ++e) {
    if (s % e != 0) continue;
    long pw = 1;
    for (unsigned i = 0; i < s / e; ++i) pw *= static_cast<long>(d);
    total += mobius(e) * pw;
  }
  return total / static_cast<long>(s);
}

// Order of the group generated by 1 + y_i inside the units of the mod-p
// series ring truncated at degree n, predicted by the graded ranks of the
// free restricted Lie algebra: log_p = sum_{m < n} sum_{p^i s = m} W_d(s).
inline mpz_class jennings_order(unsigned p, unsigned d, unsigned n) {
  unsigned long e = 0;
  for (unsigned m = 1; m < n; ++m) {
    unsigned long q = 1;
    while (q <= m) {
      if (m % q == 0) e += static_cast<unsigned long>(witt_number(d, m / q));
      if (q > m / p) break;
      q *= p;
    }
  }
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), p, e);
  return out;
}

// Rank over F_p by dense textbook Gaussian elimination.
inline std::size_t dense_rank_fp(std::vector<std::vector<unsigned long>> m, unsigned long p) {
  std::size_t rank = 0;
  std::size_t rows = m.size();
  if (rows == 0) return 0;
  std::size_t cols = m[0].size();
  for (std::size_t col = 0, row = 0; col < cols && row < rows; ++col) {
    std::size_t pivot = row;
    while (pivot < rows && m[pivot][col] % p == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[row]);
    unsigned long inv = scan_inverse_mod(m[row][col] % p, p);
    for (std::size_t j = col; j < cols; ++j) m[row][j] = (m[row][j] % p) * inv % p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == row || m[i][col] % p == 0) continue;
      unsigned long f = m[i][col] % p;
      for (std::size_t j = col; j < cols; ++j)
        m[i][j] = (m[i][j] + (p - f) * m[row][j]) % p;
    }
    ++row;
    ++rank;
  }
  return rank;
}

// Multiplicative order of 1 + y in F_p[y]/(y^n): the smallest p-power P with
// (1+y)^P = 1, i.e. p^ceil(log_p n). Computed by direct powering.
inline mpz_class cyclic_unit_order(unsigned p, unsigned n) {
  std::vector<unsigned long> pw(n, 0), base(n, 0);
  base[0] = 1;
  if (n > 1) base[1] = 1;
  pw = base;
  mpz_class order = 1;
  auto is_one = [&](const std::vector<unsigned long>& v) {
    if (v[0] != 1) return false;
    for (unsigned i = 1; i < n; ++i)
      if (v[i] != 0) return false;
    return true;
  };
  auto mulmod = [&](const std::vector<unsigned long>& a, const std::vector<unsigned long>& b) {
    std::vector<unsigned long> r(n, 0);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; i + j < n; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return r;
  };
  while (!is_one(pw)) {
    std::vector<unsigned long> acc = pw;
    for (unsigned i = 1; i < p; ++i) acc = mulmod(acc, pw);
    pw = acc;
    order *= p;
  }
  return order;
}

}  // namespace oracle
