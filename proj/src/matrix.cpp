#include "polext/matrix.hpp"

#include <utility>

namespace polext {

DenseMatrix::DenseMatrix(const FieldSpec& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(field)) {}

DenseMatrix::DenseMatrix(const FieldSpec& field, std::size_t rows, std::size_t cols,
                         std::vector<Scalar> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw UsageError("matrix entry count does not match shape");
  for (const Scalar& s : entries_) {
    if (s.field() != field) throw UsageError("matrix entry from a different field");
  }
}

DenseMatrix DenseMatrix::identity(const FieldSpec& field, std::size_t n) {
  DenseMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar::one(field);
  return m;
}

DenseMatrix DenseMatrix::transpose() const {
  DenseMatrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

std::vector<Scalar> DenseMatrix::apply(const std::vector<Scalar>& x) const {
  if (x.size() != cols_) throw UsageError("vector length does not match matrix columns");
  std::vector<Scalar> y(rows_, Scalar::zero(field_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& a = (*this)(r, c);
      if (!a.is_zero() && !x[c].is_zero()) y[r] += a * x[c];
    }
  return y;
}

std::vector<Scalar> DenseMatrix::apply_left(const std::vector<Scalar>& y) const {
  if (y.size() != rows_) throw UsageError("vector length does not match matrix rows");
  std::vector<Scalar> out(cols_, Scalar::zero(field_));
  for (std::size_t r = 0; r < rows_; ++r) {
    if (y[r].is_zero()) continue;
    for (std::size_t c = 0; c < cols_; ++c) {
      const Scalar& a = (*this)(r, c);
      if (!a.is_zero()) out[c] += y[r] * a;
    }
  }
  return out;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) throw UsageError("matrix shapes do not compose");
  if (a.field() != b.field()) throw UsageError("matrices over different fields");
  DenseMatrix out(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

namespace {

using Row = std::vector<mpz_class>;

// Integer row with the same span as the rational row.
Row clear_denominators(const DenseMatrix& m, std::size_t r) {
  mpz_class l = 1;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const mpz_class& den = m(r, c).rational().get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), den.get_mpz_t());
  }
  Row row(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const mpq_class& q = m(r, c).rational();
    row[c] = q.get_num() * (l / q.get_den());
  }
  return row;
}

void remove_content(Row& row) {
  mpz_class g = 0;
  for (const mpz_class& v : row) {
    if (v == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1)
    for (mpz_class& v : row)
      if (v != 0) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// target <- piv * target - a * source, where a = target[col], piv = source[col].
void eliminate(Row& target, const Row& source, std::size_t col) {
  mpz_class a = target[col];
  mpz_class piv = source[col];
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), piv.get_mpz_t());
  mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(piv.get_mpz_t(), piv.get_mpz_t(), g.get_mpz_t());
  for (std::size_t c = 0; c < target.size(); ++c) {
    if (source[c] == 0) {
      if (target[c] != 0) target[c] *= piv;
      continue;
    }
    target[c] = piv * target[c] - a * source[c];
  }
  remove_content(target);
}

RrefResult rref_rational(const DenseMatrix& m) {
  std::vector<Row> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(clear_denominators(m, r));

  std::vector<std::size_t> pivots;
  std::size_t cur = 0;
  for (std::size_t col = 0; col < m.cols() && cur < rows.size(); ++col) {
    std::size_t sel = cur;
    while (sel < rows.size() && rows[sel][col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[cur], rows[sel]);
    remove_content(rows[cur]);
    for (std::size_t i = cur + 1; i < rows.size(); ++i)
      if (rows[i][col] != 0) eliminate(rows[i], rows[cur], col);
    pivots.push_back(col);
    ++cur;
  }
  for (std::size_t k = pivots.size(); k-- > 0;) {
    for (std::size_t i = 0; i < k; ++i)
      if (rows[i][pivots[k]] != 0) eliminate(rows[i], rows[k], pivots[k]);
  }

  const FieldSpec field = m.field();
  DenseMatrix out(field, m.rows(), m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    const mpz_class& piv = rows[i][pivots[i]];
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (rows[i][c] != 0) out(i, c) = Scalar(field, rows[i][c], piv);
  }
  return {std::move(out), std::move(pivots), 0};
}

RrefResult rref_prime(const DenseMatrix& m) {
  DenseMatrix a = m;
  const std::size_t nr = a.rows(), nc = a.cols();
  std::vector<std::size_t> pivots;
  std::size_t cur = 0;
  for (std::size_t col = 0; col < nc && cur < nr; ++col) {
    std::size_t sel = cur;
    while (sel < nr && a(sel, col).is_zero()) ++sel;
    if (sel == nr) continue;
    if (sel != cur)
      for (std::size_t c = 0; c < nc; ++c) std::swap(a(cur, c), a(sel, c));
    const Scalar inv = a(cur, col).inverse();
    for (std::size_t c = col; c < nc; ++c) a(cur, c) *= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == cur || a(i, col).is_zero()) continue;
      const Scalar f = a(i, col);
      for (std::size_t c = col; c < nc; ++c)
        if (!a(cur, c).is_zero()) a(i, c) -= f * a(cur, c);
    }
    pivots.push_back(col);
    ++cur;
  }
  return {std::move(a), std::move(pivots), 0};
}

}  // namespace

RrefResult rref(const DenseMatrix& m) {
  RrefResult res = m.field().is_rational() ? rref_rational(m) : rref_prime(m);
  res.rank = res.pivot_columns.size();
  return res;
}

SolveResult solve(const DenseMatrix& m, const std::vector<Scalar>& b) {
  if (b.size() != m.rows()) throw UsageError("right-hand side length does not match matrix rows");
  const FieldSpec& field = m.field();
  const std::size_t nr = m.rows(), nc = m.cols();

  // [M | b | I] so every reduced row remembers which original rows formed it.
  DenseMatrix aug(field, nr, nc + 1 + nr);
  for (std::size_t r = 0; r < nr; ++r) {
    if (b[r].field() != field) throw UsageError("right-hand side from a different field");
    for (std::size_t c = 0; c < nc; ++c) aug(r, c) = m(r, c);
    aug(r, nc) = b[r];
    aug(r, nc + 1 + r) = Scalar::one(field);
  }
  const RrefResult red = rref(aug);

  for (std::size_t i = 0; i < red.rank; ++i) {
    if (red.pivot_columns[i] == nc) {
      Inconsistency bad;
      bad.row = i;
      bad.multiplier.assign(nr, Scalar::zero(field));
      for (std::size_t r = 0; r < nr; ++r) bad.multiplier[r] = red.reduced(i, nc + 1 + r);
      bad.residual = Scalar::zero(field);
      for (std::size_t r = 0; r < nr; ++r) bad.residual += bad.multiplier[r] * b[r];
      return bad;
    }
  }

  LinearSolution sol;
  sol.particular.assign(nc, Scalar::zero(field));
  std::vector<bool> is_pivot(nc, false);
  std::vector<std::size_t> pivot_row_of(nc, 0);
  for (std::size_t i = 0; i < red.rank && red.pivot_columns[i] < nc; ++i) {
    const std::size_t c = red.pivot_columns[i];
    is_pivot[c] = true;
    pivot_row_of[c] = i;
    sol.particular[c] = red.reduced(i, nc);
  }
  for (std::size_t f = 0; f < nc; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(nc, Scalar::zero(field));
    v[f] = Scalar::one(field);
    for (std::size_t c = 0; c < nc; ++c)
      if (is_pivot[c]) v[c] = -red.reduced(pivot_row_of[c], f);
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

}  // namespace polext
