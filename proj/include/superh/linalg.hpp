#pragma once

// Sparse exact linear algebra over the rationals: vectors, column-major
// matrices, and subspaces kept in fully reduced row echelon form.

#include <superh/rational.hpp>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace superh {

/// Sorted (index, value) pairs with no zero values.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

/// Scatter/gather buffer for summing many sparse vectors.
class DenseAccumulator {
 public:
  explicit DenseAccumulator(std::size_t n = 0) { resize(n); }

  void resize(std::size_t n) {
    vals_.assign(n, Rational(0));
    used_.assign(n, 0);
    touched_.clear();
  }
  [[nodiscard]] std::size_t size() const noexcept { return vals_.size(); }

  void add(std::size_t i, const Rational& c) {
    if (!used_[i]) {
      used_[i] = 1;
      touched_.push_back(i);
      vals_[i] = c;
    } else {
      vals_[i] += c;
    }
  }
  void add_scaled(const SparseVec& v, const Rational& c) {
    if (c.is_zero()) return;
    const bool unit = c.is_one();
    for (const auto& [i, x] : v) add(i, unit ? x : x * c);
  }
  [[nodiscard]] const Rational& at(std::size_t i) const { return vals_[i]; }

  /// Returns the accumulated vector and clears the buffer.
  SparseVec take() {
    std::sort(touched_.begin(), touched_.end());
    SparseVec out;
    out.reserve(touched_.size());
    for (auto i : touched_) {
      if (!vals_[i].is_zero()) out.emplace_back(i, std::move(vals_[i]));
      vals_[i] = Rational(0);
      used_[i] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  std::vector<Rational> vals_;
  std::vector<char> used_;
  std::vector<std::size_t> touched_;
};

inline Rational sparse_get(const SparseVec& v, std::size_t i) {
  auto it = std::lower_bound(v.begin(), v.end(), i, [](const auto& e, std::size_t k) { return e.first < k; });
  if (it != v.end() && it->first == i) return it->second;
  return Rational(0);
}

inline SparseVec sparse_axpy(const SparseVec& a, const SparseVec& b, const Rational& c) {
  // a + c*b
  SparseVec out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      if (!c.is_zero()) out.emplace_back(ib->first, ib->second * c);
      ++ib;
    } else {
      Rational s = ia->second + ib->second * c;
      if (!s.is_zero()) out.emplace_back(ia->first, std::move(s));
      ++ia;
      ++ib;
    }
  }
  return out;
}

inline SparseVec sparse_scale(SparseVec v, const Rational& c) {
  if (c.is_zero()) return {};
  for (auto& e : v) e.second *= c;
  return v;
}

inline SparseVec sparse_from_dense(const std::vector<Rational>& d) {
  SparseVec v;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (!d[i].is_zero()) v.emplace_back(i, d[i]);
  return v;
}

inline std::vector<Rational> sparse_to_dense(const SparseVec& v, std::size_t n) {
  std::vector<Rational> d(n);
  for (const auto& [i, c] : v) d[i] = c;
  return d;
}

/// Column-major sparse matrix.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) a.cols_data_[i] = {{i, Rational(1)}};
    return a;
  }
  static SparseMatrix from_columns(std::size_t rows, std::vector<SparseVec> cols) {
    SparseMatrix a(rows, cols.size());
    a.cols_data_ = std::move(cols);
    return a;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] const SparseVec& column(std::size_t j) const { return cols_data_[j]; }
  void set_column(std::size_t j, SparseVec v) { cols_data_[j] = std::move(v); }
  [[nodiscard]] Rational at(std::size_t i, std::size_t j) const { return sparse_get(cols_data_[j], i); }

  [[nodiscard]] bool is_zero() const noexcept {
    for (const auto& c : cols_data_)
      if (!c.empty()) return false;
    return true;
  }
  [[nodiscard]] std::size_t nonzeros() const noexcept {
    std::size_t s = 0;
    for (const auto& c : cols_data_) s += c.size();
    return s;
  }

  [[nodiscard]] SparseVec apply(const SparseVec& v) const {
    DenseAccumulator acc(rows_);
    return apply(v, acc);
  }
  SparseVec apply(const SparseVec& v, DenseAccumulator& acc) const {
    if (acc.size() != rows_) acc.resize(rows_);
    for (const auto& [j, c] : v) acc.add_scaled(cols_data_[j], c);
    return acc.take();
  }

  [[nodiscard]] SparseMatrix transpose() const {
    std::vector<SparseVec> t(rows_);
    for (std::size_t j = 0; j < cols_; ++j)
      for (const auto& [i, c] : cols_data_[j]) t[i].emplace_back(j, c);
    return from_columns(cols_, std::move(t));
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("SparseMatrix: shape mismatch in product");
    SparseMatrix r(a.rows_, b.cols_);
    DenseAccumulator acc(a.rows_);
    for (std::size_t j = 0; j < b.cols_; ++j) r.cols_data_[j] = a.apply(b.cols_data_[j], acc);
    return r;
  }
  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, Rational(1)); }
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) { return combine(a, b, Rational(-1)); }
  friend SparseMatrix operator*(const Rational& c, const SparseMatrix& a) {
    SparseMatrix r(a.rows_, a.cols_);
    for (std::size_t j = 0; j < a.cols_; ++j) r.cols_data_[j] = sparse_scale(a.cols_data_[j], c);
    return r;
  }
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t j = 0; j < a.cols_; ++j) {
      const auto& x = a.cols_data_[j];
      const auto& y = b.cols_data_[j];
      if (x.size() != y.size()) return false;
      for (std::size_t t = 0; t < x.size(); ++t)
        if (x[t].first != y[t].first || !(x[t].second == y[t].second)) return false;
    }
    return true;
  }

  /// a + c*b
  static SparseMatrix combine(const SparseMatrix& a, const SparseMatrix& b, const Rational& c) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("SparseMatrix: shape mismatch in sum");
    SparseMatrix r(a.rows_, a.cols_);
    for (std::size_t j = 0; j < a.cols_; ++j) r.cols_data_[j] = sparse_axpy(a.cols_data_[j], b.cols_data_[j], c);
    return r;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseVec> cols_data_ = std::vector<SparseVec>(cols_);
};

inline SparseMatrix commutator(const SparseMatrix& a, const SparseMatrix& b) { return a * b - b * a; }
inline SparseMatrix anticommutator(const SparseMatrix& a, const SparseMatrix& b) { return a * b + b * a; }

/// Subspace of Q^N held as a fully reduced row echelon basis with unit pivots.
///
/// The echelon form is canonical, so two subspaces are equal iff their rows are.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient), pivot_row_(ambient, -1) {}

  static Subspace span(std::size_t ambient, const std::vector<SparseVec>& vecs) {
    Subspace s(ambient);
    for (const auto& v : vecs) s.add(v);
    return s;
  }
  static Subspace whole(std::size_t ambient) {
    Subspace s(ambient);
    for (std::size_t i = 0; i < ambient; ++i) s.add(SparseVec{{i, Rational(1)}});
    return s;
  }

  [[nodiscard]] std::size_t ambient_dim() const noexcept { return ambient_; }
  [[nodiscard]] std::size_t dim() const noexcept { return rows_.size(); }
  /// Basis rows sorted by pivot column.
  [[nodiscard]] const std::vector<SparseVec>& rows() const noexcept { return rows_; }
  [[nodiscard]] std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> p;
    p.reserve(rows_.size());
    for (const auto& r : rows_) p.push_back(r.front().first);
    return p;
  }

  /// v minus its projection along the pivots; zero iff v lies in the span.
  [[nodiscard]] SparseVec reduce(const SparseVec& v) const {
    DenseAccumulator acc(ambient_);
    return reduce(v, acc);
  }
  SparseVec reduce(const SparseVec& v, DenseAccumulator& acc) const {
    if (acc.size() != ambient_) acc.resize(ambient_);
    acc.add_scaled(v, Rational(1));
    for (const auto& [i, c] : v) {
      const int r = pivot_row_[i];
      if (r >= 0) acc.add_scaled(rows_[static_cast<std::size_t>(r)], -c);
    }
    return acc.take();
  }

  [[nodiscard]] bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  /// Coordinates of v (assumed in the span) in the row basis.
  [[nodiscard]] std::vector<Rational> coordinates(const SparseVec& v) const {
    std::vector<Rational> c(rows_.size());
    for (const auto& [i, x] : v) {
      const int r = pivot_row_[i];
      if (r >= 0) c[static_cast<std::size_t>(r)] = x;
    }
    return c;
  }
  /// Same as coordinates(), as a sparse vector indexed by row.
  [[nodiscard]] SparseVec coordinates_sparse(const SparseVec& v) const {
    SparseVec c;
    for (const auto& [i, x] : v) {
      const int r = pivot_row_[i];
      if (r >= 0) c.emplace_back(static_cast<std::size_t>(r), x);
    }
    std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return c;
  }

  /// Adds v to the span; returns true if the dimension grew.
  bool add(const SparseVec& v) {
    DenseAccumulator acc(ambient_);
    return add(v, acc);
  }
  bool add(const SparseVec& v, DenseAccumulator& acc) {
    SparseVec r = reduce(v, acc);
    if (r.empty()) return false;
    insert_reduced(std::move(r));
    return true;
  }

  [[nodiscard]] Subspace sum(const Subspace& o) const {
    check(o);
    Subspace s = *this;
    DenseAccumulator acc(ambient_);
    for (const auto& r : o.rows_) s.add(r, acc);
    return s;
  }

  /// Intersection by the Zassenhaus construction.
  [[nodiscard]] Subspace intersect(const Subspace& o) const {
    check(o);
    const std::size_t n = ambient_;
    Subspace z(2 * n);
    DenseAccumulator acc(2 * n);
    for (const auto& r : rows_) {
      SparseVec v = r;
      for (const auto& [i, c] : r) v.emplace_back(i + n, c);
      z.add(v, acc);
    }
    for (const auto& r : o.rows_) z.add(r, acc);
    Subspace out(n);
    for (const auto& r : z.rows_) {
      if (r.front().first < n) continue;
      SparseVec w;
      w.reserve(r.size());
      for (const auto& [i, c] : r) w.emplace_back(i - n, c);
      out.add(w);
    }
    return out;
  }

  [[nodiscard]] bool is_subspace_of(const Subspace& o) const {
    check(o);
    for (const auto& r : rows_)
      if (!o.contains(r)) return false;
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_ || a.rows_.size() != b.rows_.size()) return false;
    for (std::size_t t = 0; t < a.rows_.size(); ++t) {
      const auto& x = a.rows_[t];
      const auto& y = b.rows_[t];
      if (x.size() != y.size()) return false;
      for (std::size_t u = 0; u < x.size(); ++u)
        if (x[u].first != y[u].first || !(x[u].second == y[u].second)) return false;
    }
    return true;
  }

 private:
  std::size_t ambient_ = 0;
  std::vector<SparseVec> rows_;
  std::vector<int> pivot_row_;

  void check(const Subspace& o) const {
    if (o.ambient_ != ambient_) throw std::invalid_argument("Subspace: ambient dimension mismatch");
  }

  void insert_reduced(SparseVec r) {
    const std::size_t p = r.front().first;
    const Rational inv = r.front().second.inverse();
    if (!inv.is_one())
      for (auto& e : r) e.second *= inv;
    // Clear the new pivot column from existing rows.
    for (auto& row : rows_) {
      const Rational c = sparse_get(row, p);
      if (!c.is_zero()) row = sparse_axpy(row, r, -c);
    }
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), p,
                                [](const SparseVec& row, std::size_t k) { return row.front().first < k; });
    rows_.insert(pos, std::move(r));
    for (std::size_t t = 0; t < rows_.size(); ++t) pivot_row_[rows_[t].front().first] = static_cast<int>(t);
  }
};

/// Rank of a matrix.
inline std::size_t rank(const SparseMatrix& a) {
  Subspace s(a.rows());
  DenseAccumulator acc(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) s.add(a.column(j), acc);
  return s.dim();
}

/// Column space of a matrix.
inline Subspace column_space(const SparseMatrix& a) {
  Subspace s(a.rows());
  DenseAccumulator acc(a.rows());
  for (std::size_t j = 0; j < a.cols(); ++j) s.add(a.column(j), acc);
  return s;
}

/// Null space of a matrix, as a subspace of its domain.
inline Subspace kernel(const SparseMatrix& a) {
  const std::size_t n = a.cols();
  const SparseMatrix t = a.transpose();  // columns of t are rows of a
  Subspace rowsp(n);
  DenseAccumulator acc(n);
  for (std::size_t i = 0; i < t.cols(); ++i) rowsp.add(t.column(i), acc);
  std::vector<char> is_pivot(n, 0);
  for (auto p : rowsp.pivots()) is_pivot[p] = 1;
  Subspace ker(n);
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    // x_f = 1, x_p = -row_p[f] for each pivot p.
    SparseVec v;
    for (const auto& row : rowsp.rows()) {
      const Rational c = sparse_get(row, f);
      if (!c.is_zero()) v.emplace_back(row.front().first, -c);
    }
    v.emplace_back(f, Rational(1));
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    ker.add(v, acc);
  }
  return ker;
}

/// Quotient V/D for D inside V: a canonical complement of D in V together with
/// coordinate extraction for classes.
class QuotientSpace {
 public:
  QuotientSpace() = default;
  QuotientSpace(Subspace whole, Subspace divisor) : divisor_(std::move(divisor)), complement_(whole.ambient_dim()) {
    if (!divisor_.is_subspace_of(whole)) throw std::invalid_argument("QuotientSpace: divisor not contained in space");
    DenseAccumulator acc(whole.ambient_dim());
    for (const auto& r : whole.rows()) complement_.add(divisor_.reduce(r, acc), acc);
  }

  [[nodiscard]] std::size_t dim() const noexcept { return complement_.dim(); }
  [[nodiscard]] const Subspace& divisor() const noexcept { return divisor_; }
  /// Representatives of a basis of the quotient (reduced modulo the divisor).
  [[nodiscard]] const Subspace& complement() const noexcept { return complement_; }

  /// Coordinates of the class of v (v must lie in the whole space).
  [[nodiscard]] std::vector<Rational> coordinates(const SparseVec& v) const {
    return complement_.coordinates(divisor_.reduce(v));
  }
  SparseVec coordinates_sparse(const SparseVec& v, DenseAccumulator& acc) const {
    return complement_.coordinates_sparse(divisor_.reduce(v, acc));
  }

 private:
  Subspace divisor_;
  Subspace complement_;
};

}  // namespace superh
