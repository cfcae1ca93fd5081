#pragma once

// Reference implementations used only by the tests. They share no code with the library:
// polynomials are plain exponent maps and membership is a dense linear solve.

#include <gmpxx.h>

#include <cstdint>
#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

using Exps = std::vector<int>;
using OPoly = std::map<Exps, mpq_class>;

inline OPoly add(const OPoly& a, const OPoly& b) {
  OPoly r = a;
  for (const auto& [m, c] : b) {
    r[m] += c;
    if (r[m] == 0) r.erase(m);
  }
  return r;
}

inline OPoly mul(const OPoly& a, const OPoly& b) {
  OPoly r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Exps m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      r[m] += ca * cb;
      if (r[m] == 0) r.erase(m);
    }
  return r;
}

inline int degree(const OPoly& p) {
  int d = 0;
  for (const auto& [m, c] : p) {
    int s = 0;
    for (int e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

inline std::string to_string(const OPoly& p, const std::vector<std::string>& vars) {
  if (p.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : p) {
    out << (first ? "" : " + ") << "(" << c.get_str() << ")";
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) out << "*" << vars[i] << "^" << m[i];
    first = false;
  }
  return out.str();
}

inline std::vector<Exps> monomials_up_to(int nv, int d) {
  std::vector<Exps> out;
  Exps cur(nv, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == nv) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(0, d);
  return out;
}

inline OPoly random_poly(std::mt19937_64& rng, int nv, int max_deg, int max_terms) {
  std::uniform_int_distribution<int> nt(1, max_terms), c(-3, 3);
  auto monos = monomials_up_to(nv, max_deg);
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  OPoly p;
  int k = nt(rng);
  for (int t = 0; t < k; ++t) {
    int v = c(rng);
    if (v == 0) v = 1;
    p[monos[pick(rng)]] += v;
  }
  for (auto it = p.begin(); it != p.end();)
    it = it->second == 0 ? p.erase(it) : std::next(it);
  return p;
}

// Reads the library's printed form "c*x^a*y^b + ... - d" back into an exponent map.
inline OPoly parse_terms(const std::string& text, const std::vector<std::string>& vars) {
  OPoly p;
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  if (s == "0") return p;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
    std::size_t end = i;
    while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
    std::string term = s.substr(i, end - i);
    i = end;
    mpq_class coeff = sign;
    Exps e(vars.size(), 0);
    std::istringstream parts(term);
    std::string factor;
    while (std::getline(parts, factor, '*')) {
      if (std::isdigit(static_cast<unsigned char>(factor[0]))) {
        coeff *= mpq_class(factor);
        continue;
      }
      auto caret = factor.find('^');
      std::string name = factor.substr(0, caret);
      int power = caret == std::string::npos ? 1 : std::stoi(factor.substr(caret + 1));
      auto it = std::find(vars.begin(), vars.end(), name);
      if (it == vars.end()) throw std::runtime_error("unknown variable " + name);
      e[it - vars.begin()] += power;
    }
    coeff.canonicalize();
    p[e] += coeff;
    if (p[e] == 0) p.erase(e);
  }
  return p;
}

// Solves f = sum c_i g_i with deg c_i <= D over Q by Gaussian elimination.
inline std::optional<std::vector<OPoly>> bounded_membership(const OPoly& f,
                                                            const std::vector<OPoly>& gens,
                                                            int nv, int D) {
  auto cmonos = monomials_up_to(nv, D);
  std::map<Exps, std::size_t> row_of;
  auto row = [&](const Exps& m) {
    auto it = row_of.find(m);
    if (it != row_of.end()) return it->second;
    std::size_t r = row_of.size();
    row_of.emplace(m, r);
    return r;
  };
  const std::size_t ncols = gens.size() * cmonos.size();
  std::vector<std::map<std::size_t, mpq_class>> sparse;
  auto entry = [&](std::size_t r, std::size_t c, const mpq_class& v) {
    if (sparse.size() <= r) sparse.resize(r + 1);
    sparse[r][c] += v;
  };
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t k = 0; k < cmonos.size(); ++k)
      for (const auto& [m, c] : gens[g]) {
        Exps e(nv);
        for (int i = 0; i < nv; ++i) e[i] = m[i] + cmonos[k][i];
        entry(row(e), g * cmonos.size() + k, c);
      }
  std::vector<mpq_class> rhs;
  for (const auto& [m, c] : f) {
    std::size_t r = row(m);
    if (rhs.size() <= r) rhs.resize(r + 1, 0);
    rhs[r] = c;
  }
  const std::size_t nrows = row_of.size();
  sparse.resize(nrows);
  rhs.resize(nrows, 0);
  std::vector<std::vector<mpq_class>> A(nrows, std::vector<mpq_class>(ncols + 1, 0));
  for (std::size_t r = 0; r < nrows; ++r) {
    for (const auto& [c, v] : sparse[r]) A[r][c] = v;
    A[r][ncols] = rhs[r];
  }
  std::vector<long> pivot_col;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < ncols && prow < nrows; ++c) {
    std::size_t p = prow;
    while (p < nrows && A[p][c] == 0) ++p;
    if (p == nrows) continue;
    std::swap(A[p], A[prow]);
    mpq_class inv = 1 / A[prow][c];
    for (std::size_t j = c; j <= ncols; ++j) A[prow][j] *= inv;
    for (std::size_t r = 0; r < nrows; ++r) {
      if (r == prow || A[r][c] == 0) continue;
      mpq_class f0 = A[r][c];
      for (std::size_t j = c; j <= ncols; ++j)
        if (A[prow][j] != 0) A[r][j] -= f0 * A[prow][j];
    }
    pivot_col.push_back(static_cast<long>(c));
    ++prow;
  }
  for (std::size_t r = prow; r < nrows; ++r)
    if (A[r][ncols] != 0) return std::nullopt;
  std::vector<mpq_class> x(ncols, 0);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = A[r][ncols];
  std::vector<OPoly> cof(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t k = 0; k < cmonos.size(); ++k)
      if (x[g * cmonos.size() + k] != 0) cof[g][cmonos[k]] = x[g * cmonos.size() + k];
  return cof;
}

// Finite-ring reference: Z/m arithmetic on plain integers.
inline bool row_has_inverse_mod(const std::vector<int>& v, int m) {
  const std::size_t n = v.size();
  std::vector<int> b(n, 0);
  for (;;) {
    long s = 0;
    for (std::size_t i = 0; i < n; ++i) s += static_cast<long>(v[i]) * b[i];
    if (((s % m) + m) % m == 1 % m) return true;
    std::size_t k = 0;
    while (k < n && ++b[k] == m) b[k++] = 0;
    if (k == n) return false;
  }
}

// 2 x n matrix over Z/m with a right inverse, found by trying every n x 2 candidate.
inline bool matrix_has_right_inverse_mod(const std::vector<int>& top, const std::vector<int>& bot,
                                         int m) {
  const std::size_t n = top.size();
  // Column c1 with top.c1 = 1, bot.c1 = 0, and c2 with top.c2 = 0, bot.c2 = 1.
  auto exists = [&](int want_top, int want_bot) {
    std::vector<int> c(n, 0);
    for (;;) {
      long s = 0, t = 0;
      for (std::size_t i = 0; i < n; ++i) {
        s += static_cast<long>(top[i]) * c[i];
        t += static_cast<long>(bot[i]) * c[i];
      }
      if (((s % m) + m) % m == want_top && ((t % m) + m) % m == want_bot) return true;
      std::size_t k = 0;
      while (k < n && ++c[k] == m) c[k++] = 0;
      if (k == n) return false;
    }
  };
  return exists(1 % m, 0) && exists(0, 1 % m);
}

// Plain-integer orbit partition of Um_{m,n}(Z/q) under column moves with every t in Z/q.
struct IntOrbits {
  std::vector<std::vector<int>> um;  // row-major entries
  std::size_t orbits = 0;
  std::vector<std::size_t> sizes;
};

inline IntOrbits int_orbits(int q, std::size_t m, std::size_t n) {
  IntOrbits out;
  std::vector<int> d(m * n, 0);
  for (;;) {
    bool ok;
    if (m == 1) {
      ok = row_has_inverse_mod(d, q);
    } else {
      std::vector<int> top(d.begin(), d.begin() + n), bot(d.begin() + n, d.end());
      ok = matrix_has_right_inverse_mod(top, bot, q);
    }
    if (ok) out.um.push_back(d);
    std::size_t k = m * n;
    while (k > 0 && ++d[k - 1] == q) d[--k] = 0;
    if (k == 0) break;
  }
  std::set<std::vector<int>> seen;
  for (const auto& start : out.um) {
    if (seen.count(start)) continue;
    std::vector<std::vector<int>> stack{start};
    seen.insert(start);
    std::size_t size = 0;
    while (!stack.empty()) {
      auto cur = stack.back();
      stack.pop_back();
      ++size;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (int t = 1; t < q && i != j; ++t) {
            auto nx = cur;
            for (std::size_t r = 0; r < m; ++r) nx[r * n + j] = (nx[r * n + j] + t * nx[r * n + i]) % q;
            if (seen.insert(nx).second) stack.push_back(nx);
          }
    }
    ++out.orbits;
    out.sizes.push_back(size);
  }
  std::sort(out.sizes.begin(), out.sizes.end());
  return out;
}

inline std::uint64_t int_code(const std::vector<int>& d, int q) {
  std::uint64_t c = 0;
  for (int x : d) c = c * q + static_cast<std::uint64_t>(x);
  return c;
}

}  // namespace oracle
