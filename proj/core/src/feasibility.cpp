#include "flipforge/feasibility.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace flipforge {

std::optional<std::vector<Rat>> simplex_feasible_point(const std::vector<LinearConstraint>& rows,
                                                       std::size_t vars) {
  const std::size_t m = rows.size();
  // Columns: x+ (vars), x- (vars), surplus (m), then artificials.
  const std::size_t surplus0 = 2 * vars;
  std::vector<std::vector<Rat>> T(m);
  std::vector<Rat> b(m);
  std::vector<std::size_t> basis(m);
  std::vector<std::size_t> needs_artificial;
  for (std::size_t i = 0; i < m; ++i) {
    bool flip = rows[i].rhs < 0;
    T[i].assign(surplus0 + m, 0);
    for (std::size_t j = 0; j < vars; ++j) {
      T[i][j] = flip ? Rat(-rows[i].coeffs[j]) : rows[i].coeffs[j];
      T[i][vars + j] = -T[i][j];
    }
    T[i][surplus0 + i] = flip ? 1 : -1;
    b[i] = flip ? Rat(-rows[i].rhs) : rows[i].rhs;
    if (flip) {
      basis[i] = surplus0 + i;
    } else {
      needs_artificial.push_back(i);
    }
  }
  const std::size_t art0 = surplus0 + m;
  const std::size_t N = art0 + needs_artificial.size();
  for (auto& row : T) row.resize(N, 0);
  std::vector<char> artificial(N, 0);
  for (std::size_t k = 0; k < needs_artificial.size(); ++k) {
    std::size_t i = needs_artificial[k];
    T[i][art0 + k] = 1;
    basis[i] = art0 + k;
    artificial[art0 + k] = 1;
  }
  // Reduced costs for minimizing the sum of artificials.
  std::vector<Rat> z(N, 0);
  Rat value = 0;
  for (std::size_t j = 0; j < N; ++j) z[j] = artificial[j] ? 1 : 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (!artificial[basis[i]]) continue;
    for (std::size_t j = 0; j < N; ++j) z[j] -= T[i][j];
    value += b[i];
  }
  while (true) {
    std::size_t enter = N;
    for (std::size_t j = 0; j < N; ++j) {
      if (sgn(z[j]) < 0) {
        enter = j;
        break;
      }
    }
    if (enter == N) break;
    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(T[i][enter]) <= 0) continue;
      Rat ratio = b[i] / T[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    // Phase 1 is bounded below by zero, so some row always limits the step.
    if (leave == m) break;
    Rat piv = T[leave][enter];
    for (std::size_t j = 0; j < N; ++j) T[leave][j] /= piv;
    b[leave] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || sgn(T[i][enter]) == 0) continue;
      Rat f = T[i][enter];
      for (std::size_t j = 0; j < N; ++j) {
        if (sgn(T[leave][j]) != 0) T[i][j] -= f * T[leave][j];
      }
      b[i] -= f * b[leave];
    }
    Rat f = z[enter];
    for (std::size_t j = 0; j < N; ++j) {
      if (sgn(T[leave][j]) != 0) z[j] -= f * T[leave][j];
    }
    value += f * b[leave];
    basis[leave] = enter;
  }
  if (sgn(value) != 0) return std::nullopt;
  std::vector<Rat> x(vars, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < vars) x[basis[i]] += b[i];
    else if (basis[i] < 2 * vars) x[basis[i] - vars] -= b[i];
  }
  return x;
}

namespace {

// Scale so the first nonzero coefficient has absolute value one.
void normalize(LinearConstraint& c) {
  for (const Rat& a : c.coeffs) {
    if (sgn(a) == 0) continue;
    Rat s = abs(a);
    for (Rat& v : c.coeffs) v /= s;
    c.rhs /= s;
    return;
  }
}

bool less(const LinearConstraint& a, const LinearConstraint& b) {
  if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
  return a.rhs < b.rhs;
}

}  // namespace

bool fourier_motzkin_feasible(std::vector<LinearConstraint> rows, std::size_t vars,
                              std::size_t max_rows) {
  for (std::size_t k = 0; k < vars; ++k) {
    std::vector<LinearConstraint> pos, neg, next;
    for (auto& r : rows) {
      int s = sgn(r.coeffs[k]);
      (s > 0 ? pos : (s < 0 ? neg : next)).push_back(std::move(r));
    }
    if (pos.size() * neg.size() + next.size() > max_rows) {
      throw std::length_error("Fourier-Motzkin elimination exceeded its row budget");
    }
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        Rat wp = -q.coeffs[k], wq = p.coeffs[k];
        LinearConstraint c;
        c.coeffs.resize(vars);
        for (std::size_t j = 0; j < vars; ++j) c.coeffs[j] = wp * p.coeffs[j] + wq * q.coeffs[j];
        c.coeffs[k] = 0;
        c.rhs = wp * p.rhs + wq * q.rhs;
        next.push_back(std::move(c));
      }
    }
    for (auto& c : next) normalize(c);
    std::sort(next.begin(), next.end(), less);
    // Among rows with equal coefficients only the largest right-hand side matters.
    std::vector<LinearConstraint> kept;
    for (auto& c : next) {
      if (!kept.empty() && kept.back().coeffs == c.coeffs) {
        kept.back().rhs = c.rhs;
      } else {
        kept.push_back(std::move(c));
      }
    }
    rows = std::move(kept);
  }
  return std::all_of(rows.begin(), rows.end(), [](const LinearConstraint& c) { return sgn(c.rhs) <= 0; });
}

}  // namespace flipforge
