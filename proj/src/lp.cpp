#include "tarski/lp.hpp"

#include <algorithm>
#include <limits>

namespace tarski {

namespace {

constexpr std::size_t kLpMaxVars = 26;
constexpr std::size_t kLpMaxRows = 160;

/// Dense full-tableau simplex state over exact rationals. Free variables are
/// split as x = u - w; every row gets a slack, and rows with negative rhs get
/// an artificial for phase 1.
class Tableau {
 public:
  Tableau(const RatVec& cost_min, const std::vector<LinearConstraint>& cons)
      : n_(cost_min.size()), m_(cons.size()) {
    split_ = 2 * n_;
    art_start_ = split_ + m_;
    std::size_t total = art_start_;

    rows_.assign(m_, RatVec());
    rhs_.assign(m_, Rational(0));
    basis_.assign(m_, 0);
    std::vector<bool> needs_art(m_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      if (cons[i].coeffs.size() != n_) {
        throw UsageError("solve_lp_exact: constraint arity mismatch");
      }
      needs_art[i] = cons[i].rhs < 0;
      if (needs_art[i]) ++total;
    }
    num_art_ = total - art_start_;
    total_ = total;

    std::size_t art = art_start_;
    for (std::size_t i = 0; i < m_; ++i) {
      RatVec row(total_, Rational(0));
      int sign = needs_art[i] ? -1 : 1;
      for (std::size_t j = 0; j < n_; ++j) {
        row[j] = sign * cons[i].coeffs[j];
        row[n_ + j] = -row[j];
      }
      row[split_ + i] = sign;
      rhs_[i] = sign * cons[i].rhs;
      if (needs_art[i]) {
        row[art] = 1;
        basis_[i] = static_cast<int>(art);
        ++art;
      } else {
        basis_[i] = static_cast<int>(split_ + i);
      }
      rows_[i] = std::move(row);
    }
    cost_ = cost_min;
  }

  LpResult run() {
    if (num_art_ > 0) {
      RatVec obj(total_, Rational(0));
      Rational obj_rhs(0);
      for (std::size_t c = art_start_; c < total_; ++c) obj[c] = 1;
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] >= static_cast<int>(art_start_)) {
          sub_row(obj, obj_rhs, rows_[i], rhs_[i], Rational(1));
        }
      }
      bool bounded = simplex(obj, obj_rhs, /*allow_art=*/true);
      if (!bounded) throw std::logic_error("phase-1 objective cannot be unbounded");
      if (obj_rhs != 0) {
        // -obj_rhs is the artificial residue; positive means infeasible.
        LpResult r;
        r.status = LpStatus::Infeasible;
        return r;
      }
      purge_artificials();
    }

    RatVec obj(total_, Rational(0));
    Rational obj_rhs(0);
    for (std::size_t j = 0; j < n_; ++j) {
      obj[j] = cost_[j];
      obj[n_ + j] = -cost_[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      int b = basis_[i];
      if (obj[static_cast<std::size_t>(b)] != 0) {
        sub_row(obj, obj_rhs, rows_[i], rhs_[i], obj[static_cast<std::size_t>(b)]);
      }
    }
    bool bounded = simplex(obj, obj_rhs, /*allow_art=*/false);
    LpResult result;
    if (!bounded) {
      result.status = LpStatus::Unbounded;
      return result;
    }
    result.status = LpStatus::Optimal;
    result.value = -obj_rhs;
    RatVec z(total_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) {
      z[static_cast<std::size_t>(basis_[i])] = rhs_[i];
    }
    result.point.resize(n_);
    for (std::size_t j = 0; j < n_; ++j) result.point[j] = z[j] - z[n_ + j];
    return result;
  }

 private:
  // factor is taken by value: callers pass entries of obj itself, which the
  // loop overwrites.
  static void sub_row(RatVec& obj, Rational& obj_rhs, const RatVec& row,
                      const Rational& rhs, Rational factor) {
    for (std::size_t c = 0; c < obj.size(); ++c) {
      if (row[c] != 0) obj[c] -= factor * row[c];
    }
    obj_rhs -= factor * rhs;
  }

  /// Bland's rule: smallest eligible entering column; leaving row with the
  /// minimum ratio, ties broken by smallest basic index. Returns false iff
  /// unbounded.
  bool simplex(RatVec& obj, Rational& obj_rhs, bool allow_art) {
    const std::size_t limit = allow_art ? total_ : art_start_;
    while (true) {
      std::size_t enter = total_;
      for (std::size_t c = 0; c < limit; ++c) {
        if (obj[c] < 0) {
          enter = c;
          break;
        }
      }
      if (enter == total_) return true;
      std::size_t leave = m_;
      Rational best_ratio;
      for (std::size_t r = 0; r < m_; ++r) {
        if (rows_[r][enter] <= 0) continue;
        Rational ratio = rhs_[r] / rows_[r][enter];
        if (leave == m_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
      sub_row(obj, obj_rhs, rows_[leave], rhs_[leave], obj[enter]);
    }
  }

  /// Phase-2 safety: an artificial left basic at level zero could creep back
  /// to a positive value once it stops being penalized. Pivot each one onto a
  /// real column, or drop its row as redundant.
  void purge_artificials() {
    for (std::size_t r = 0; r < m_;) {
      if (basis_[r] < static_cast<int>(art_start_)) {
        ++r;
        continue;
      }
      std::size_t c = art_start_;
      for (std::size_t j = 0; j < art_start_; ++j) {
        if (rows_[r][j] != 0) {
          c = j;
          break;
        }
      }
      if (c < art_start_) {
        pivot(r, c);
        ++r;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(r));
        rhs_.erase(rhs_.begin() + static_cast<std::ptrdiff_t>(r));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
        --m_;
      }
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = rows_[r][c];
    for (auto& v : rows_[r]) v /= inv;
    rhs_[r] /= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      Rational factor = rows_[i][c];
      for (std::size_t j = 0; j < total_; ++j) {
        if (rows_[r][j] != 0) rows_[i][j] -= factor * rows_[r][j];
      }
      rhs_[i] -= factor * rhs_[r];
    }
    basis_[r] = static_cast<int>(c);
  }

  std::size_t n_, m_, split_, art_start_, num_art_ = 0, total_ = 0;
  std::vector<RatVec> rows_;
  RatVec rhs_;
  std::vector<int> basis_;
  RatVec cost_;
};

}  // namespace

LpResult solve_lp_exact(LpSense sense, const RatVec& objective,
                        const std::vector<LinearConstraint>& constraints) {
  if (objective.empty()) throw UsageError("solve_lp_exact: empty objective");
  if (objective.size() > kLpMaxVars || constraints.size() > kLpMaxRows) {
    throw CapacityError("solve_lp_exact: gated to " + std::to_string(kLpMaxVars) +
                        " variables and " + std::to_string(kLpMaxRows) + " rows");
  }
  RatVec cost = objective;
  if (sense == LpSense::Maximize) {
    for (auto& c : cost) c = -c;
  }
  Tableau t(cost, constraints);
  LpResult res = t.run();
  if (res.status == LpStatus::Optimal && sense == LpSense::Maximize) {
    res.value = -res.value;
  }
  return res;
}

namespace {

/// Exact Gaussian elimination; returns false when singular.
bool solve_square(std::vector<RatVec> a, RatVec b, RatVec& out) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col] / a[col][col];
      for (std::size_t c2 = col; c2 < n; ++c2) a[r][c2] -= f * a[col][c2];
      b[r] -= f * b[col];
    }
  }
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = b[i] / a[i][i];
  return true;
}

}  // namespace

std::vector<RatVec> enumerate_vertices(const std::vector<LinearConstraint>& constraints,
                                       std::size_t num_vars) {
  const std::size_t m = constraints.size();
  if (num_vars == 0 || num_vars > 6 || m > 24) {
    throw CapacityError("enumerate_vertices: test-scale gate exceeded");
  }
  std::vector<RatVec> vertices;
  std::vector<std::size_t> pick(num_vars);
  auto feasible = [&](const RatVec& x) {
    for (const auto& con : constraints) {
      Rational lhs(0);
      for (std::size_t j = 0; j < num_vars; ++j) lhs += con.coeffs[j] * x[j];
      if (lhs > con.rhs) return false;
    }
    return true;
  };
  // All n-subsets of rows, in lexicographic order.
  std::vector<std::size_t> idx(num_vars);
  for (std::size_t i = 0; i < num_vars; ++i) idx[i] = i;
  if (m < num_vars) return vertices;
  while (true) {
    std::vector<RatVec> a;
    RatVec b;
    for (std::size_t i : idx) {
      a.push_back(constraints[i].coeffs);
      b.push_back(constraints[i].rhs);
    }
    RatVec x;
    if (solve_square(std::move(a), std::move(b), x) && feasible(x)) {
      if (std::find(vertices.begin(), vertices.end(), x) == vertices.end()) {
        vertices.push_back(x);
      }
    }
    std::size_t k = num_vars;
    while (k > 0 && idx[k - 1] == m - num_vars + k - 1) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < num_vars; ++j) idx[j] = idx[j - 1] + 1;
  }
  return vertices;
}

}  // namespace tarski
