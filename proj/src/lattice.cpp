#include "gridres/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <map>
#include <set>

#include <gmpxx.h>

#include "gridres/error.hpp"

namespace gridres {

namespace {

using QMat = std::vector<std::vector<mpq_class>>;
using ZVec = std::vector<mpz_class>;

std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw Error(ErrorCode::invalid_input, "integer overflow in lattice computation");
  return z.get_si();
}

QMat to_q(const std::vector<IntVec>& rows, std::size_t cols) {
  QMat m;
  for (const auto& r : rows) {
    if (r.size() != cols) throw Error(ErrorCode::invalid_input, "row length mismatch");
    std::vector<mpq_class> q;
    for (auto v : r) q.emplace_back(static_cast<long>(v));
    m.push_back(std::move(q));
  }
  return m;
}

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(QMat& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[r], m[p]);
    mpq_class s = m[r][c];
    for (auto& v : m[r]) v /= s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      mpq_class f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

ZVec normalized(ZVec a) {
  mpz_class g = 0;
  for (const auto& v : a) g = gcd(g, v);
  if (g > 1) {
    for (auto& v : a) v /= g;
  }
  return a;
}

struct ZConstraint {
  ZVec a;
  bool strict;
};

std::vector<ZConstraint> dedupe(std::vector<ZConstraint> cs) {
  // keep the strict copy when both forms of a constraint appear
  std::map<ZVec, bool> seen;
  for (auto& c : cs) {
    ZVec a = normalized(std::move(c.a));
    auto [it, fresh] = seen.emplace(std::move(a), c.strict);
    if (!fresh) it->second = it->second || c.strict;
  }
  std::vector<ZConstraint> out;
  for (auto& [a, s] : seen) out.push_back({a, s});
  return out;
}

std::vector<ZConstraint> eliminate(const std::vector<ZConstraint>& cs, std::size_t k) {
  std::vector<ZConstraint> out, pos, neg;
  for (const auto& c : cs) {
    if (c.a[k] > 0) pos.push_back(c);
    else if (c.a[k] < 0) neg.push_back(c);
    else out.push_back(c);
  }
  for (const auto& p : pos) {
    for (const auto& q : neg) {
      mpz_class cp = -q.a[k], cq = p.a[k];
      ZVec a(p.a.size());
      for (std::size_t j = 0; j < a.size(); ++j) a[j] = cp * p.a[j] + cq * q.a[j];
      out.push_back({std::move(a), p.strict || q.strict});
    }
  }
  return dedupe(std::move(out));
}

}  // namespace

std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

IntVec primitive(const IntVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x);
  if (g <= 1) return v;
  IntVec out;
  for (auto x : v) out.push_back(x / g);
  return out;
}

std::int64_t dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::invalid_input, "dimension mismatch in dot product");
  __int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
  if (s > INT64_MAX || s < INT64_MIN) throw Error(ErrorCode::invalid_input, "integer overflow in dot product");
  return static_cast<std::int64_t>(s);
}

IntVec operator+(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::invalid_input, "dimension mismatch");
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (__builtin_add_overflow(a[i], b[i], &out[i])) throw Error(ErrorCode::invalid_input, "integer overflow");
  }
  return out;
}

IntVec operator-(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::invalid_input, "dimension mismatch");
  IntVec out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (__builtin_sub_overflow(a[i], b[i], &out[i])) throw Error(ErrorCode::invalid_input, "integer overflow");
  }
  return out;
}

std::size_t rank(const std::vector<IntVec>& rows, std::size_t cols) { return pivot_columns(rows, cols).size(); }

std::vector<std::size_t> pivot_columns(const std::vector<IntVec>& rows, std::size_t cols) {
  QMat m = to_q(rows, cols);
  return rref(m, cols);
}

std::vector<IntVec> integer_nullspace(const std::vector<IntVec>& rows, std::size_t cols) {
  QMat m = to_q(rows, cols);
  auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<IntVec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<mpq_class> x(cols, 0);
    x[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m[r][f];
    mpz_class l = 1;
    for (const auto& v : x) l = lcm(l, v.get_den());
    ZVec z;
    for (const auto& v : x) z.push_back(mpz_class(v * l));
    z = normalized(std::move(z));
    IntVec out;
    for (const auto& v : z) out.push_back(to_int64(v));
    basis.push_back(std::move(out));
  }
  return basis;
}

std::optional<IntVec> solve_homogeneous(const std::vector<LinearConstraint>& constraints, std::size_t dim) {
  std::vector<ZConstraint> start;
  for (const auto& c : constraints) {
    if (c.a.size() != dim) throw Error(ErrorCode::invalid_input, "constraint dimension mismatch");
    ZVec a;
    for (auto v : c.a) a.emplace_back(static_cast<long>(v));
    start.push_back({std::move(a), c.strict});
  }
  // stages[k] involves variables 0..k-1 only
  std::vector<std::vector<ZConstraint>> stages(dim + 1);
  stages[dim] = dedupe(std::move(start));
  for (std::size_t k = dim; k-- > 0;) stages[k] = eliminate(stages[k + 1], k);
  for (const auto& c : stages[0]) {
    if (c.strict) return std::nullopt;  // 0 < 0
  }

  std::vector<mpq_class> x(dim, 0);
  for (std::size_t j = 0; j < dim; ++j) {
    std::optional<mpq_class> lo, hi;
    bool lo_strict = false, hi_strict = false;
    for (const auto& c : stages[j + 1]) {
      if (c.a[j] == 0) continue;
      mpq_class rest = 0;
      for (std::size_t i = 0; i < j; ++i) rest += c.a[i] * x[i];
      mpq_class bound = -rest / mpq_class(c.a[j]);
      if (c.a[j] > 0) {
        if (!hi || bound < *hi || (bound == *hi && c.strict)) {
          hi_strict = (hi && bound == *hi) ? (hi_strict || c.strict) : c.strict;
          hi = bound;
        }
      } else if (!lo || bound > *lo || (bound == *lo && c.strict)) {
        lo_strict = (lo && bound == *lo) ? (lo_strict || c.strict) : c.strict;
        lo = bound;
      }
    }
    auto fits_hi = [&](const mpq_class& v) { return !hi || v < *hi || (v == *hi && !hi_strict); };
    auto fits_lo = [&](const mpq_class& v) { return !lo || v > *lo || (v == *lo && !lo_strict); };
    mpq_class v = 0;
    if (lo) {
      mpz_class f;
      mpz_fdiv_q(f.get_mpz_t(), lo->get_num_mpz_t(), lo->get_den_mpz_t());
      v = (lo_strict || mpq_class(f) != *lo) ? mpq_class(f + 1) : mpq_class(f);
    } else if (hi) {
      mpz_class c;
      mpz_cdiv_q(c.get_mpz_t(), hi->get_num_mpz_t(), hi->get_den_mpz_t());
      v = (hi_strict || mpq_class(c) != *hi) ? mpq_class(c - 1) : mpq_class(c);
    }
    if (!fits_hi(v) || !fits_lo(v)) {
      if (lo && hi) v = (*lo + *hi) / 2;
      if (lo && hi && *lo == *hi) v = *lo;
    }
    if (!fits_hi(v) || !fits_lo(v)) {
      throw Error(ErrorCode::verification_failed, "Fourier-Motzkin back substitution failed");
    }
    x[j] = v;
  }
  mpz_class l = 1;
  for (const auto& v : x) l = lcm(l, v.get_den());
  ZVec z;
  for (const auto& v : x) z.push_back(mpz_class(v * l));
  z = normalized(std::move(z));
  IntVec out;
  for (const auto& v : z) out.push_back(to_int64(v));
  return out;
}

}  // namespace gridres
