#pragma once

// Linear endomorphisms of the polynomial space built from multiplication,
// differentiation, scaling, sums and composition, plus their matrices on
// homogeneous components.

#include <superh/linalg.hpp>
#include <superh/polynomial.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace superh {

class LinearOperator {
 public:
  enum class Kind { Zero, Scale, MultiplyBy, Differentiate, Sum, Compose };

  /// The zero operator.
  LinearOperator() : node_(std::make_shared<Node>()) {}

  static LinearOperator identity() { return scale(Rational(1)); }
  static LinearOperator scale(Rational c) {
    auto n = std::make_shared<Node>();
    if (c.is_zero()) return LinearOperator(n);
    n->kind = Kind::Scale;
    n->c = std::move(c);
    return LinearOperator(n);
  }
  /// Left multiplication f -> p*f.
  static LinearOperator multiply_by(SuperPolynomial p) {
    auto n = std::make_shared<Node>();
    if (p.is_zero()) return LinearOperator(n);
    n->kind = Kind::MultiplyBy;
    n->poly = std::move(p);
    return LinearOperator(n);
  }
  /// Left partial derivative.
  static LinearOperator differentiate(Variable v) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Differentiate;
    n->var = v;
    return LinearOperator(n);
  }
  static LinearOperator sum(const std::vector<LinearOperator>& ops) {
    auto n = std::make_shared<Node>();
    for (const auto& o : ops) {
      if (o.node_->kind == Kind::Zero) continue;
      if (o.node_->kind == Kind::Sum) {
        for (const auto& c : o.node_->children) n->children.push_back(c);
      } else {
        n->children.push_back(o.node_);
      }
    }
    if (n->children.empty()) return {};
    if (n->children.size() == 1) return LinearOperator(n->children.front());
    n->kind = Kind::Sum;
    return LinearOperator(n);
  }
  /// ops[0] o ops[1] o ... ; the last operator acts first.
  static LinearOperator compose(const std::vector<LinearOperator>& ops) {
    auto n = std::make_shared<Node>();
    for (const auto& o : ops) {
      if (o.node_->kind == Kind::Zero) return {};
      if (o.node_->kind == Kind::Scale && o.node_->c.is_one()) continue;
      if (o.node_->kind == Kind::Compose) {
        for (const auto& c : o.node_->children) n->children.push_back(c);
      } else {
        n->children.push_back(o.node_);
      }
    }
    if (n->children.empty()) return identity();
    if (n->children.size() == 1) return LinearOperator(n->children.front());
    n->kind = Kind::Compose;
    return LinearOperator(n);
  }

  [[nodiscard]] Kind kind() const noexcept { return node_->kind; }
  [[nodiscard]] bool is_zero() const noexcept { return node_->kind == Kind::Zero; }

  [[nodiscard]] SuperPolynomial apply(const SuperPolynomial& f) const { return eval(*node_, f); }
  SuperPolynomial operator()(const SuperPolynomial& f) const { return apply(f); }

  /// Change of total degree, if the operator is homogeneous.
  [[nodiscard]] std::optional<int> degree_shift() const { return shift(*node_); }

  friend LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) { return sum({a, b}); }
  friend LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) {
    return sum({a, compose({scale(Rational(-1)), b})});
  }
  friend LinearOperator operator*(const LinearOperator& a, const LinearOperator& b) { return compose({a, b}); }
  friend LinearOperator operator*(const Rational& c, const LinearOperator& a) { return compose({scale(c), a}); }

 private:
  struct Node {
    Kind kind = Kind::Zero;
    Rational c;
    SuperPolynomial poly;
    Variable var;
    std::vector<std::shared_ptr<const Node>> children;
  };
  std::shared_ptr<const Node> node_;

  explicit LinearOperator(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static SuperPolynomial eval(const Node& n, const SuperPolynomial& f) {
    switch (n.kind) {
      case Kind::Zero:
        return {};
      case Kind::Scale:
        return f * n.c;
      case Kind::MultiplyBy:
        return n.poly * f;
      case Kind::Differentiate:
        return partial(f, n.var);
      case Kind::Sum: {
        SuperPolynomial s;
        for (const auto& c : n.children) s += eval(*c, f);
        return s;
      }
      case Kind::Compose: {
        SuperPolynomial g = f;
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
          if (g.is_zero()) break;
          g = eval(**it, g);
        }
        return g;
      }
    }
    return {};
  }

  static std::optional<int> shift(const Node& n) {
    switch (n.kind) {
      case Kind::Zero:
      case Kind::Scale:
        return 0;
      case Kind::MultiplyBy: {
        const int d = n.poly.degree();
        for (const auto& t : n.poly.terms())
          if (t.first.degree() != d) return std::nullopt;
        return d;
      }
      case Kind::Differentiate:
        return -1;
      case Kind::Sum: {
        std::optional<int> s;
        for (const auto& c : n.children) {
          auto cs = shift(*c);
          if (!cs) return std::nullopt;
          if (s && *s != *cs) return std::nullopt;
          s = cs;
        }
        return s ? s : std::optional<int>(0);
      }
      case Kind::Compose: {
        int s = 0;
        for (const auto& c : n.children) {
          auto cs = shift(*c);
          if (!cs) return std::nullopt;
          s += *cs;
        }
        return s;
      }
    }
    return std::nullopt;
  }
};

/// Shared, cached monomial basis of P_k in R^{m|2n}.
inline const std::vector<SuperMonomial>& basis_of(int m, int n, int k) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const std::vector<SuperMonomial>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(m, n, k);
  auto it = cache.find(key);
  if (it == cache.end()) {
    auto b = std::make_shared<const std::vector<SuperMonomial>>(k < 0 ? std::vector<SuperMonomial>{} : monomial_basis(m, n, k));
    it = cache.emplace(key, std::move(b)).first;
  }
  return *it->second;
}

/// Coordinates of a homogeneous polynomial of degree k in the monomial basis.
inline SparseVec to_vector(const SuperPolynomial& f, int m, int n, int k) {
  const auto& basis = basis_of(m, n, k);
  SparseVec v;
  v.reserve(f.size());
  for (const auto& [mo, c] : f.terms()) {
    const long i = basis_index(basis, mo);
    if (i < 0) throw std::invalid_argument("to_vector: term outside P_k of the ring");
    v.emplace_back(static_cast<std::size_t>(i), c);
  }
  // Terms are in monomial order and the basis is sorted the same way.
  return v;
}

inline SuperPolynomial from_vector(const SparseVec& v, int m, int n, int k) {
  const auto& basis = basis_of(m, n, k);
  std::vector<SuperPolynomial::Term> terms;
  terms.reserve(v.size());
  for (const auto& [i, c] : v) terms.emplace_back(basis[i], c);
  return SuperPolynomial::from_terms(std::move(terms));
}

/// Matrix of a homogeneous operator from P_k to P_{k+shift}.
inline SparseMatrix matrix_of(const LinearOperator& op, int m, int n, int k) {
  const auto sh = op.degree_shift();
  if (!sh) throw std::invalid_argument("matrix_of: operator is not degree-homogeneous");
  const int kt = k + *sh;
  const auto& src = basis_of(m, n, k);
  const std::size_t rows = kt < 0 ? 0 : basis_of(m, n, kt).size();
  std::vector<SparseVec> cols(src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    const SuperPolynomial img = op.apply(SuperPolynomial(src[j]));
    if (img.is_zero()) continue;
    cols[j] = to_vector(img, m, n, kt);
  }
  return SparseMatrix::from_columns(rows, std::move(cols));
}

}  // namespace superh
