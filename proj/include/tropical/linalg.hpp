#pragma once

/**
 * @file linalg.hpp
 * @brief Dense matrix and vector algebra over an idempotent semifield.
 *
 * Storage is plain Eigen with the semifield scalar as coefficient type. The
 * semiring operations are free functions over Eigen::MatrixBase so they accept
 * blocks, rows and columns directly:
 *
 *   oplus(A, B)     entrywise (+)
 *   otimes(A, B)    product {AB}_ij = (+)_k a_ik (x) b_kj
 *   otimes(x, A)    scalar multiple
 *   conj(A)         multiplicative conjugate transpose A^-
 *
 * Eigen's own operator* / operator+ are never used on these types: Eigen
 * assumes Scalar(0) and Scalar(1) are the ring identities, which is not true
 * of the carrier literals. Scalar(int) is deleted so that mistake does not
 * compile.
 */

#include <Eigen/Core>

#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tropical/scalar.hpp"

namespace Eigen {

template <class F>
struct NumTraits<tropical::Scalar<F>> {
  using Real = tropical::Scalar<F>;
  using NonInteger = Real;
  using Literal = Real;
  using Nested = Real;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 2,
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace tropical {

template <Semifield F>
using Matrix = Eigen::Matrix<Scalar<F>, Eigen::Dynamic, Eigen::Dynamic>;
template <Semifield F>
using Vector = Eigen::Matrix<Scalar<F>, Eigen::Dynamic, 1>;
template <Semifield F>
using RowVector = Eigen::Matrix<Scalar<F>, 1, Eigen::Dynamic>;

using Index = Eigen::Index;

// ---------------------------------------------------------------------------
// Constructors

template <Semifield F>
Matrix<F> zero_matrix(Index rows, Index cols) {
  return Matrix<F>(rows, cols);
}

template <Semifield F>
Vector<F> zero_vector(Index n) {
  return Vector<F>(n);
}

template <Semifield F>
Matrix<F> identity(Index n) {
  Matrix<F> out(n, n);
  for (Index i = 0; i < n; ++i) out(i, i) = Scalar<F>::one();
  return out;
}

/// The vector 1 = (one, ..., one)^T.
template <Semifield F>
Vector<F> ones(Index n) {
  return Vector<F>::Constant(n, Scalar<F>::one());
}

// ---------------------------------------------------------------------------
// Predicates

template <class D>
bool is_zero(const Eigen::MatrixBase<D>& a) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return false;
  return true;
}

template <class D>
bool is_row_regular(const Eigen::MatrixBase<D>& a) {
  for (Index i = 0; i < a.rows(); ++i) {
    bool nonzero = false;
    for (Index j = 0; j < a.cols() && !nonzero; ++j) nonzero = !a(i, j).is_zero();
    if (!nonzero) return false;
  }
  return true;
}

template <class D>
bool is_column_regular(const Eigen::MatrixBase<D>& a) {
  return is_row_regular(a.transpose());
}

/// No zero rows and no zero columns. For a vector this is "no zero entries".
template <class D>
bool is_regular(const Eigen::MatrixBase<D>& a) {
  if (a.rows() == 1 || a.cols() == 1) {
    for (Index i = 0; i < a.rows(); ++i)
      for (Index j = 0; j < a.cols(); ++j)
        if (a(i, j).is_zero()) return false;
    return true;
  }
  return is_row_regular(a) && is_column_regular(a);
}

/// Every entry nonzero, i.e. every column is a regular vector.
template <class D>
bool has_regular_columns(const Eigen::MatrixBase<D>& a) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (a(i, j).is_zero()) return false;
  return true;
}

/// Entrywise order a <= b.
template <class L, class R>
bool leq(const Eigen::MatrixBase<L>& a, const Eigen::MatrixBase<R>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::shape_mismatch, "leq: shapes differ");
  }
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) <= b(i, j))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Arithmetic

template <class L, class R>
typename L::PlainObject oplus(const Eigen::MatrixBase<L>& a, const Eigen::MatrixBase<R>& b) {
  static_assert(std::is_same_v<typename L::Scalar, typename R::Scalar>);
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::shape_mismatch, "oplus: shapes differ");
  }
  typename L::PlainObject out(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out(i, j) = oplus(a(i, j), b(i, j));
  return out;
}

template <class L, class R>
auto otimes(const Eigen::MatrixBase<L>& a, const Eigen::MatrixBase<R>& b) {
  using S = typename L::Scalar;
  static_assert(std::is_same_v<S, typename R::Scalar>);
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::shape_mismatch, "otimes: inner dimensions differ (" +
                                               std::to_string(a.cols()) + " vs " +
                                               std::to_string(b.rows()) + ")");
  }
  Eigen::Matrix<S, L::RowsAtCompileTime, R::ColsAtCompileTime> out;
  out.resize(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      S acc;
      for (Index k = 0; k < a.cols(); ++k) acc = oplus(acc, otimes(a(i, k), b(k, j)));
      out(i, j) = acc;
    }
  }
  return out;
}

template <Semifield F, class D>
typename D::PlainObject otimes(const Scalar<F>& x, const Eigen::MatrixBase<D>& a) {
  static_assert(std::is_same_v<Scalar<F>, typename D::Scalar>);
  typename D::PlainObject out(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out(i, j) = otimes(x, a(i, j));
  return out;
}

/// Row vector times column vector.
template <class L, class R>
typename L::Scalar dot(const Eigen::MatrixBase<L>& row, const Eigen::MatrixBase<R>& col) {
  if (row.rows() != 1 || col.cols() != 1) {
    throw Error(ErrorCode::shape_mismatch, "dot: expects a row vector and a column vector");
  }
  return otimes(row, col)(0, 0);
}

/// Multiplicative conjugate transpose: a^-_ij = a_ji^-1 for nonzero a_ji, zero otherwise.
template <class D>
auto conj(const Eigen::MatrixBase<D>& a) {
  using S = typename D::Scalar;
  if (is_zero(a)) {
    throw Error(ErrorCode::degenerate_input, "conjugate transpose of a zero matrix");
  }
  Eigen::Matrix<S, D::ColsAtCompileTime, D::RowsAtCompileTime> out;
  out.resize(a.cols(), a.rows());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out(j, i) = a(i, j).is_zero() ? S::zero() : inverse(a(i, j));
  return out;
}

template <class D>
typename D::Scalar trace(const Eigen::MatrixBase<D>& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::shape_mismatch, "trace of a non-square matrix");
  typename D::Scalar acc;
  for (Index i = 0; i < a.rows(); ++i) acc = oplus(acc, a(i, i));
  return acc;
}

/// Tropical norm: (+) of all entries.
template <class D>
typename D::Scalar norm(const Eigen::MatrixBase<D>& a) {
  typename D::Scalar acc;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) acc = oplus(acc, a(i, j));
  return acc;
}

template <class D>
typename D::PlainObject power(const Eigen::MatrixBase<D>& a, std::int64_t p) {
  using F = typename D::Scalar::Field;
  if (a.rows() != a.cols()) throw Error(ErrorCode::shape_mismatch, "power of a non-square matrix");
  if (p < 0) throw Error(ErrorCode::domain, "negative matrix power");
  typename D::PlainObject out = identity<F>(a.rows());
  for (std::int64_t k = 0; k < p; ++k) out = otimes(out, a);
  return out;
}

/// Powers A^0 .. A^count-1.
template <class D>
std::vector<typename D::PlainObject> powers(const Eigen::MatrixBase<D>& a, std::int64_t count) {
  using F = typename D::Scalar::Field;
  std::vector<typename D::PlainObject> out;
  if (count <= 0) return out;
  out.reserve(static_cast<std::size_t>(count));
  out.push_back(identity<F>(a.rows()));
  for (std::int64_t k = 1; k < count; ++k) out.push_back(otimes(out.back(), a));
  return out;
}

/// Tr(A) = tr A (+) tr A^2 (+) ... (+) tr A^n.
template <class D>
typename D::Scalar tr_functional(const Eigen::MatrixBase<D>& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::shape_mismatch, "Tr of a non-square matrix");
  typename D::Scalar acc;
  typename D::PlainObject p = a;
  for (Index m = 1; m <= a.rows(); ++m) {
    if (m > 1) p = otimes(p, a);
    acc = oplus(acc, trace(p));
  }
  return acc;
}

template <class M>
struct StarResult {
  M matrix;
  /// Tr(A) <= one, so the truncated sum is the full closure.
  bool closure_valid = false;
};

/// Asterate A* = I (+) A (+) ... (+) A^(n-1), truncated regardless of Tr(A).
template <class D>
StarResult<typename D::PlainObject> kleene_star(const Eigen::MatrixBase<D>& a) {
  using F = typename D::Scalar::Field;
  if (a.rows() != a.cols()) throw Error(ErrorCode::shape_mismatch, "star of a non-square matrix");
  const Index n = a.rows();
  typename D::PlainObject sum = identity<F>(n);
  typename D::PlainObject p = identity<F>(n);
  for (Index k = 1; k < n; ++k) {
    p = otimes(p, a);
    sum = oplus(sum, p);
  }
  return {std::move(sum), tr_functional(a) <= Scalar<F>::one()};
}

/// Spectral radius (+)_{m=1..n} tr^{1/m}(A^m); zero when A has no nonzero cycle.
template <class D>
typename D::Scalar spectral_radius(const Eigen::MatrixBase<D>& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::shape_mismatch, "spectral radius of a non-square matrix");
  }
  typename D::Scalar acc;
  typename D::PlainObject p = a;
  for (Index m = 1; m <= a.rows(); ++m) {
    if (m > 1) p = otimes(p, a);
    acc = oplus(acc, power(trace(p), Rational(1, m)));
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Text form: rows of whitespace-separated literals, rows separated by newlines
// or ';'. The zero is `.` or `null`.

template <Semifield F>
Matrix<F> parse_matrix(std::string_view text) {
  std::vector<std::vector<Scalar<F>>> rows;
  std::string line;
  auto flush = [&](int line_no) {
    std::istringstream ls(line);
    std::vector<Scalar<F>> row;
    std::string tok;
    while (ls >> tok) {
      try {
        row.push_back(parse_scalar<F>(tok));
      } catch (const Error& e) {
        throw Error(ErrorCode::parse, "row " + std::to_string(line_no) + ": " + e.what());
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
    line.clear();
  };
  int line_no = 1;
  bool comment = false;
  for (char c : text) {
    if (c == '\n' || (c == ';' && !comment)) {
      flush(line_no);
      if (c == '\n') ++line_no;
      comment = false;
    } else if (c == '#') {
      comment = true;
    } else if (!comment) {
      line.push_back(c);
    }
  }
  flush(line_no);
  if (rows.empty()) return Matrix<F>(0, 0);
  const auto cols = rows.front().size();
  Matrix<F> out(static_cast<Index>(rows.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw Error(ErrorCode::parse, "row " + std::to_string(i + 1) + " has " +
                                        std::to_string(rows[i].size()) + " entries, expected " +
                                        std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) out(Index(i), Index(j)) = rows[i][j];
  }
  return out;
}

template <Semifield F>
Vector<F> parse_vector(std::string_view text) {
  Matrix<F> m = parse_matrix<F>(text);
  if (m.size() == 0) return Vector<F>(0);
  if (m.rows() == 1) return m.row(0).transpose();
  if (m.cols() == 1) return m.col(0);
  throw Error(ErrorCode::parse, "expected a single row or column");
}

/// Column-aligned pretty print.
template <class D>
std::string format_matrix(const Eigen::MatrixBase<D>& a) {
  std::vector<std::string> cells;
  std::size_t width = 0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) {
      cells.push_back(to_string(a(i, j)));
      width = std::max(width, cells.back().size());
    }
  std::string out;
  std::size_t c = 0;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j, ++c) {
      if (j > 0) out += ' ';
      out += std::string(width - cells[c].size(), ' ') + cells[c];
    }
    out += '\n';
  }
  return out;
}

}  // namespace tropical
