#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include <branchorder/presentation.hpp>
#include <branchorder/word.hpp>

namespace branchorder {

// Dense integer matrix, row-major.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> entries;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}

  std::int64_t& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
  std::int64_t at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

// Invariant factors d_1 | d_2 | ... of an integer matrix plus the rank
// deficiency of its column space: cokernel = Z^free_rank + sum Z/d_i.
struct SnfResult {
  std::vector<mpz_class> invariant_factors;
  std::size_t free_rank = 0;
};

using MatZ = std::vector<std::vector<mpz_class>>;

// D = U * M * V with U, V unimodular and D in Smith normal form.
struct SnfDecomposition {
  SnfResult result;
  MatZ U;  // rows x rows
  MatZ V;  // cols x cols
  MatZ D;  // rows x cols
};

// Exponent-sum matrix: one row per relator, one column per generator.
inline IntMatrix abelianize(const Presentation& P) {
  IntMatrix m(P.relators().size(), static_cast<std::size_t>(P.generator_count()));
  for (std::size_t r = 0; r < P.relators().size(); ++r)
    for (const auto& s : P.relators()[r].syllables())
      m.at(r, static_cast<std::size_t>(s.gen)) += s.exp;
  return m;
}

namespace snf_detail {

inline MatZ identity(std::size_t n) {
  MatZ I(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

// Quotient minimizing |a - q*b|, b > 0.
inline mpz_class nearest_quotient(const mpz_class& a, const mpz_class& b) {
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * r > b) q += 1;
  return q;
}

}  // namespace snf_detail

// Exact Smith normal form by elimination. Pivot choice: smallest nonzero
// absolute value, ties by lowest (row, col). Entry growth is handled by
// arbitrary-precision arithmetic throughout.
inline SnfDecomposition smith_normal_form_decomposed(const IntMatrix& M) {
  const std::size_t R = M.rows, C = M.cols;
  MatZ D(R, std::vector<mpz_class>(C, 0));
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t c = 0; c < C; ++c) D[r][c] = M.at(r, c);
  MatZ U = snf_detail::identity(R);
  MatZ V = snf_detail::identity(C);

  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(D[i], D[j]);
    std::swap(U[i], U[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < R; ++r) std::swap(D[r][i], D[r][j]);
    for (std::size_t r = 0; r < C; ++r) std::swap(V[r][i], V[r][j]);
  };
  auto add_row = [&](std::size_t dst, std::size_t src, const mpz_class& mult) {
    for (std::size_t c = 0; c < C; ++c) D[dst][c] += mult * D[src][c];
    for (std::size_t c = 0; c < R; ++c) U[dst][c] += mult * U[src][c];
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const mpz_class& mult) {
    for (std::size_t r = 0; r < R; ++r) D[r][dst] += mult * D[r][src];
    for (std::size_t r = 0; r < C; ++r) V[r][dst] += mult * V[r][src];
  };
  auto negate_row = [&](std::size_t i) {
    for (auto& x : D[i]) x = -x;
    for (auto& x : U[i]) x = -x;
  };

  std::size_t t = 0;
  while (t < R && t < C) {
    // Pivot: minimal |value| over the trailing submatrix.
    std::size_t pi = t, pj = t;
    bool found = false;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j) {
        if (D[i][j] == 0) continue;
        if (!found || mpz_cmpabs(D[i][j].get_mpz_t(), D[pi][pj].get_mpz_t()) < 0) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);

    for (bool dirty = true; dirty;) {
      dirty = false;
      if (D[t][t] < 0) negate_row(t);
      // Clear column t below the pivot.
      for (std::size_t i = t + 1; i < R; ++i) {
        if (D[i][t] == 0) continue;
        mpz_class q = snf_detail::nearest_quotient(D[i][t], D[t][t]);
        if (q != 0) add_row(i, t, -q);
        if (D[i][t] != 0) {  // smaller remainder becomes the pivot
          swap_rows(t, i);
          dirty = true;
          if (D[t][t] < 0) negate_row(t);
        }
      }
      // Clear row t right of the pivot.
      for (std::size_t j = t + 1; j < C; ++j) {
        if (D[t][j] == 0) continue;
        mpz_class q = snf_detail::nearest_quotient(D[t][j], D[t][t]);
        if (q != 0) add_col(j, t, -q);
        if (D[t][j] != 0) {
          swap_cols(t, j);
          dirty = true;
          if (D[t][t] < 0) negate_row(t);
        }
      }
      if (dirty) continue;
      // Enforce divisibility of the remaining block by the pivot.
      for (std::size_t i = t + 1; i < R && !dirty; ++i)
        for (std::size_t j = t + 1; j < C && !dirty; ++j)
          if (D[i][j] % D[t][t] != 0) {
            add_row(t, i, 1);
            dirty = true;
          }
    }
    ++t;
  }

  SnfDecomposition out;
  out.U = std::move(U);
  out.V = std::move(V);
  for (std::size_t i = 0; i < t; ++i) out.result.invariant_factors.push_back(D[i][i]);
  out.result.free_rank = C - t;
  out.D = std::move(D);
  return out;
}

inline SnfResult smith_normal_form(const IntMatrix& M) {
  return smith_normal_form_decomposed(M).result;
}

// |H_1| of the presented group, or infinite when the abelianization has
// positive free rank.
struct GroupOrder {
  bool finite = false;
  mpz_class value = 0;  // meaningful when finite

  static GroupOrder infinite() { return GroupOrder{false, 0}; }
  static GroupOrder of(mpz_class v) { return GroupOrder{true, std::move(v)}; }
  friend bool operator==(const GroupOrder&, const GroupOrder&) = default;
};

inline GroupOrder h1_order(const Presentation& P) {
  SnfResult snf = smith_normal_form(abelianize(P));
  if (snf.free_rank > 0) return GroupOrder::infinite();
  mpz_class order = 1;
  for (const auto& d : snf.invariant_factors) order *= d;
  return GroupOrder::of(order);
}

// Decides membership of exponent vectors in the row lattice of the
// abelianized relator matrix; a word with image outside the lattice is
// nontrivial in H_1, hence nontrivial in the group.
class H1ImageTester {
 public:
  explicit H1ImageTester(const Presentation& P)
      : cols_(static_cast<std::size_t>(P.generator_count())),
        decomposition_(smith_normal_form_decomposed(abelianize(P))) {}

  bool in_relator_lattice(const Word& w) const {
    std::vector<mpz_class> x(cols_, 0);
    for (const auto& s : w.syllables()) x[static_cast<std::size_t>(s.gen)] += s.exp;
    // y = x * V lies in the row lattice of D iff d_i | y_i and the free
    // coordinates vanish.
    const auto& V = decomposition_.V;
    const auto& factors = decomposition_.result.invariant_factors;
    for (std::size_t j = 0; j < cols_; ++j) {
      mpz_class y = 0;
      for (std::size_t i = 0; i < cols_; ++i) y += x[i] * V[i][j];
      if (j < factors.size()) {
        if (y % factors[j] != 0) return false;
      } else if (y != 0) {
        return false;
      }
    }
    return true;
  }

  bool nontrivial_in_h1(const Word& w) const { return !in_relator_lattice(w); }

 private:
  std::size_t cols_;
  SnfDecomposition decomposition_;
};

}  // namespace branchorder
