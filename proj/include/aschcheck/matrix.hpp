#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "aschcheck/finite_field.hpp"
#include "aschcheck/prng.hpp"

namespace asch {

/// Dense matrix over a FieldSpec, row-major, exact arithmetic throughout.
class Matrix {
 public:
  Matrix(Field field, size_t rows, size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols),
        a_(rows * cols, field_->zero()) {
    require(rows_ > 0 && cols_ > 0, Errc::shape_mismatch,
            "matrix dimensions must be positive");
  }

  static Matrix identity(const Field& f, size_t n) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = f->one();
    return m;
  }

  static Matrix scalar(const Field& f, size_t n, const FieldElem& v) {
    Matrix m(f, n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = v;
    return m;
  }

  const Field& field() const { return field_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  FieldElem& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
  const FieldElem& at(size_t r, size_t c) const { return a_[r * cols_ + c]; }
  const std::vector<FieldElem>& entries() const { return a_; }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

  bool is_zero() const {
    for (const auto& e : a_)
      if (!field_->is_zero(e)) return false;
    return true;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(field_, rows_);
  }

  /// If the matrix is lambda * I, returns lambda.
  std::optional<FieldElem> scalar_of() const {
    if (rows_ != cols_) return std::nullopt;
    const FieldElem& d = at(0, 0);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < cols_; ++j) {
        if (i == j) {
          if (at(i, j) != d) return std::nullopt;
        } else if (!field_->is_zero(at(i, j))) {
          return std::nullopt;
        }
      }
    }
    return d;
  }

  /// Injective per-entry integer codes, used as a hash key by the group
  /// closure.
  std::vector<uint64_t> key() const {
    std::vector<uint64_t> k;
    k.reserve(a_.size());
    for (const auto& e : a_) k.push_back(field_->code_of(e));
    return k;
  }

 private:
  Field field_;
  size_t rows_, cols_;
  std::vector<FieldElem> a_;
};

namespace detail {

inline void check_same_field(const Matrix& a, const Matrix& b) {
  require(same_field(a.field(), b.field()), Errc::field_mismatch,
          "matrices over different fields");
}

}  // namespace detail

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  detail::check_same_field(a, b);
  require(a.rows() == b.rows() && a.cols() == b.cols(), Errc::shape_mismatch,
          "matrix addition shape mismatch");
  Matrix r = a;
  const Field& f = a.field();
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      r.at(i, j) = f->add(a.at(i, j), b.at(i, j));
  return r;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  detail::check_same_field(a, b);
  require(a.rows() == b.rows() && a.cols() == b.cols(), Errc::shape_mismatch,
          "matrix subtraction shape mismatch");
  Matrix r = a;
  const Field& f = a.field();
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      r.at(i, j) = f->sub(a.at(i, j), b.at(i, j));
  return r;
}

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  detail::check_same_field(a, b);
  require(a.cols() == b.rows(), Errc::shape_mismatch,
          "matrix product shape mismatch");
  const Field& f = a.field();
  Matrix r(f, a.rows(), b.cols());
  for (size_t i = 0; i < a.rows(); ++i) {
    for (size_t k = 0; k < a.cols(); ++k) {
      const FieldElem& av = a.at(i, k);
      if (f->is_zero(av)) continue;
      for (size_t j = 0; j < b.cols(); ++j) {
        r.at(i, j) = f->add(r.at(i, j), f->mul(av, b.at(k, j)));
      }
    }
  }
  return r;
}

inline Matrix scalar_mul(const FieldElem& s, const Matrix& a) {
  Matrix r = a;
  const Field& f = a.field();
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = f->mul(s, a.at(i, j));
  return r;
}

inline Matrix negate(const Matrix& a) {
  Matrix r = a;
  const Field& f = a.field();
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = f->neg(a.at(i, j));
  return r;
}

inline Matrix transpose(const Matrix& a) {
  Matrix r(a.field(), a.cols(), a.rows());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r.at(j, i) = a.at(i, j);
  return r;
}

inline FieldElem trace(const Matrix& a) {
  require(a.rows() == a.cols(), Errc::shape_mismatch, "trace of non-square");
  const Field& f = a.field();
  FieldElem t = f->zero();
  for (size_t i = 0; i < a.rows(); ++i) t = f->add(t, a.at(i, i));
  return t;
}

/// In-place reduced row echelon form. Pivot choice is fixed (first nonzero
/// entry scanning columns left to right, rows top to bottom) so identical
/// inputs always yield bit-identical results. Returns the pivot columns.
inline std::vector<size_t> rref(Matrix& m) {
  const Field& f = m.field();
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    size_t sel = row;
    while (sel < m.rows() && f->is_zero(m.at(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row) {
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(row, j));
    }
    FieldElem inv = f->inv(m.at(row, col));
    for (size_t j = col; j < m.cols(); ++j) m.at(row, j) = f->mul(inv, m.at(row, j));
    for (size_t r = 0; r < m.rows(); ++r) {
      if (r == row || f->is_zero(m.at(r, col))) continue;
      FieldElem factor = m.at(r, col);
      for (size_t j = col; j < m.cols(); ++j) {
        m.at(r, j) = f->sub(m.at(r, j), f->mul(factor, m.at(row, j)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline FieldElem determinant(const Matrix& a) {
  require(a.rows() == a.cols(), Errc::shape_mismatch, "determinant of non-square");
  const Field& f = a.field();
  Matrix m = a;
  FieldElem det = f->one();
  size_t n = m.rows();
  for (size_t col = 0; col < n; ++col) {
    size_t sel = col;
    while (sel < n && f->is_zero(m.at(sel, col))) ++sel;
    if (sel == n) return f->zero();
    if (sel != col) {
      for (size_t j = 0; j < n; ++j) std::swap(m.at(sel, j), m.at(col, j));
      det = f->neg(det);
    }
    det = f->mul(det, m.at(col, col));
    FieldElem inv = f->inv(m.at(col, col));
    for (size_t r = col + 1; r < n; ++r) {
      if (f->is_zero(m.at(r, col))) continue;
      FieldElem factor = f->mul(inv, m.at(r, col));
      for (size_t j = col; j < n; ++j) {
        m.at(r, j) = f->sub(m.at(r, j), f->mul(factor, m.at(col, j)));
      }
    }
  }
  return det;
}

inline bool invertible(const Matrix& a) {
  return a.rows() == a.cols() && !a.field()->is_zero(determinant(a));
}

inline Matrix inverse(const Matrix& a) {
  require(a.rows() == a.cols(), Errc::shape_mismatch, "inverse of non-square");
  const Field& f = a.field();
  size_t n = a.rows();
  Matrix aug(f, n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = f->one();
  }
  std::vector<size_t> piv = rref(aug);
  require(piv.size() == n && piv.back() == n - 1, Errc::singular_matrix,
          "matrix is singular");
  Matrix r(f, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) r.at(i, j) = aug.at(i, n + j);
  return r;
}

inline Matrix matrix_pow(const Matrix& a, uint64_t e) {
  require(a.rows() == a.cols(), Errc::shape_mismatch, "power of non-square");
  Matrix r = Matrix::identity(a.field(), a.rows());
  Matrix b = a;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
  detail::check_same_field(a, b);
  const Field& f = a.field();
  Matrix r(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      if (f->is_zero(a.at(i, j))) continue;
      for (size_t p = 0; p < b.rows(); ++p)
        for (size_t q = 0; q < b.cols(); ++q)
          r.at(i * b.rows() + p, j * b.cols() + q) =
              f->mul(a.at(i, j), b.at(p, q));
    }
  return r;
}

inline Matrix entrywise_frobenius(const Matrix& a, const GaloisAut& aut) {
  require(same_field(a.field(), aut.field), Errc::field_mismatch,
          "automorphism of a different field");
  Matrix r = a;
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j)
      r.at(i, j) = a.field()->frobenius_pow(a.at(i, j), aut.exponent);
  return r;
}

inline Matrix embed_matrix(const Matrix& a, const Embedding& emb) {
  Matrix r(emb.target(), a.rows(), a.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) r.at(i, j) = emb.apply(a.at(i, j));
  return r;
}

/// Deterministic total order on same-shaped matrices: row-major entry
/// comparison in the canonical field-element order.
inline bool matrix_less(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows();
  if (a.cols() != b.cols()) return a.cols() < b.cols();
  return a.entries() < b.entries();
}

// ---------------------------------------------------------------------------
// Homogeneous linear systems X*A = B*X

/// One homogeneous constraint X*a = b*X on the unknown square matrix X.
struct LinEquation {
  Matrix a;
  Matrix b;
};

/// Basis of {X : X*A_i = B_i*X for all i}. The system is vectorized
/// row-major and solved by RREF with fixed pivot order, making the
/// returned basis canonical. An empty equation list yields the full space.
inline std::vector<Matrix> solve_linear(const Field& f, size_t n,
                                        const std::vector<LinEquation>& eqs) {
  size_t unknowns = n * n;
  for (const auto& e : eqs) {
    require(same_field(e.a.field(), f) && same_field(e.b.field(), f),
            Errc::field_mismatch, "equation over a different field");
    require(e.a.rows() == n && e.a.cols() == n && e.b.rows() == n &&
                e.b.cols() == n,
            Errc::shape_mismatch, "equation shape mismatch");
  }
  size_t rows = eqs.size() * unknowns;
  Matrix sys(f, rows == 0 ? 1 : rows, unknowns);
  if (rows == 0) {
    // no constraints: sys stays zero, kernel is everything
  } else {
    size_t row = 0;
    for (const auto& e : eqs) {
      for (size_t r = 0; r < n; ++r) {
        for (size_t s = 0; s < n; ++s) {
          for (size_t t = 0; t < n; ++t) {
            // (X*a)_{rs} contributes a[t][s] * X[r][t]
            size_t col1 = r * n + t;
            sys.at(row, col1) = f->add(sys.at(row, col1), e.a.at(t, s));
            // -(b*X)_{rs} contributes -b[r][t] * X[t][s]
            size_t col2 = t * n + s;
            sys.at(row, col2) = f->sub(sys.at(row, col2), e.b.at(r, t));
          }
          ++row;
        }
      }
    }
  }
  Matrix work = sys;
  std::vector<size_t> pivots = rref(work);
  std::vector<bool> is_pivot(unknowns, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<Matrix> basis;
  for (size_t free_col = 0; free_col < unknowns; ++free_col) {
    if (is_pivot[free_col]) continue;
    Matrix x(f, n, n);
    x.at(free_col / n, free_col % n) = f->one();
    for (size_t pi = 0; pi < pivots.size(); ++pi) {
      FieldElem v = f->neg(work.at(pi, free_col));
      if (!f->is_zero(v)) x.at(pivots[pi] / n, pivots[pi] % n) = v;
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Basis of the intertwiner space {X : X*A_i = B_i*X}. For two generator
/// lists of one absolutely irreducible representation this has dimension
/// exactly 1 (Schur), which is also the library's absolute-irreducibility
/// test.
inline std::vector<Matrix> intertwiner_space(const std::vector<Matrix>& as,
                                             const std::vector<Matrix>& bs) {
  require(!as.empty() && !bs.empty(), Errc::empty_generator_list,
          "intertwiner_space needs at least one pair");
  require(as.size() == bs.size(), Errc::shape_mismatch,
          "generator lists of different length");
  const Field& f = as[0].field();
  size_t n = as[0].rows();
  std::vector<LinEquation> eqs;
  eqs.reserve(as.size());
  for (size_t i = 0; i < as.size(); ++i) {
    require(as[i].rows() == n && as[i].cols() == n && bs[i].rows() == n &&
                bs[i].cols() == n,
            Errc::shape_mismatch, "generators must be square of equal size");
    require(invertible(as[i]) && invertible(bs[i]), Errc::singular_matrix,
            "intertwiner_space expects invertible generators");
    eqs.push_back({as[i], bs[i]});
  }
  std::vector<Matrix> basis = solve_linear(f, n, eqs);
  // re-verify: every basis element satisfies all equations exactly
  for (const auto& x : basis) {
    for (size_t i = 0; i < as.size(); ++i) {
      require(x * as[i] == bs[i] * x, Errc::invariant_violation,
              "intertwiner basis fails its defining equation");
    }
  }
  return basis;
}

inline Matrix random_matrix(const Field& f, size_t n, Prng& rng) {
  Matrix m(f, n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      m.at(i, j) = f->element_at(rng.below(f->order()));
  return m;
}

/// Constructive Hilbert 90 for matrices (Lang): given invertible y whose
/// alpha-norm alpha^(l-1)(y)...alpha(y)y is the identity, produce
/// invertible z with y = alpha(z)^-1 z. Averaging trick with a random
/// matrix c; retried with fresh c until z is invertible.
inline Matrix hilbert90_matrix(const Matrix& y, const GaloisAut& aut,
                               Prng& rng, int retry_bound = 64) {
  const Field& f = y.field();
  require(same_field(f, aut.field), Errc::field_mismatch,
          "automorphism of a different field");
  require(y.rows() == y.cols(), Errc::shape_mismatch, "y must be square");
  require(invertible(y), Errc::singular_matrix, "y must be invertible");
  unsigned ell = aut.order();
  size_t n = y.rows();
  // y_0 = I, y_{i+1} = alpha(y_i) * y;  y_ell must be I
  std::vector<Matrix> chain;
  chain.push_back(Matrix::identity(f, n));
  for (unsigned i = 0; i < ell; ++i) {
    chain.push_back(entrywise_frobenius(chain.back(), aut) * y);
  }
  require(chain[ell].is_identity(), Errc::norm_condition_violated,
          "alpha-norm of y is not the identity");
  for (int attempt = 0; attempt < retry_bound; ++attempt) {
    Matrix c = random_matrix(f, n, rng);
    Matrix z(f, n, n);
    Matrix conj = c;
    for (unsigned i = 0; i < ell; ++i) {
      z = z + conj * chain[i];
      conj = entrywise_frobenius(conj, aut);
    }
    if (!invertible(z)) continue;
    require(inverse(entrywise_frobenius(z, aut)) * z == y,
            Errc::invariant_violation, "hilbert90_matrix solution check failed");
    return z;
  }
  fail(Errc::retries_exhausted, "hilbert90_matrix: no invertible z within bound");
}

// ---------------------------------------------------------------------------
// Subspaces, represented by their reduced-echelon row basis.

/// Canonical form of the row space: RREF with zero rows dropped.
inline Matrix row_space(const Matrix& m) {
  Matrix work = m;
  std::vector<size_t> piv = rref(work);
  size_t rank = piv.size();
  require(rank > 0, Errc::invariant_violation, "row space of the zero matrix");
  Matrix r(m.field(), rank, m.cols());
  for (size_t i = 0; i < rank; ++i)
    for (size_t j = 0; j < m.cols(); ++j) r.at(i, j) = work.at(i, j);
  return r;
}

inline size_t rank_of(const Matrix& m) {
  Matrix work = m;
  return rref(work).size();
}

/// Column space of m as a canonical row basis (rows are transposed columns).
inline Matrix column_space(const Matrix& m) { return row_space(transpose(m)); }

/// Does the subspace (canonical row basis) contain the given row vector?
inline bool subspace_contains(const Matrix& basis, const Matrix& row_vec) {
  Matrix stacked(basis.field(), basis.rows() + 1, basis.cols());
  for (size_t i = 0; i < basis.rows(); ++i)
    for (size_t j = 0; j < basis.cols(); ++j) stacked.at(i, j) = basis.at(i, j);
  for (size_t j = 0; j < basis.cols(); ++j)
    stacked.at(basis.rows(), j) = row_vec.at(0, j);
  return rank_of(stacked) == basis.rows();
}

/// Image of the subspace under v -> g*v (vectors as columns; basis rows are
/// transposed vectors).
inline Matrix subspace_image(const Matrix& basis, const Matrix& g) {
  return row_space(basis * transpose(g));
}

}  // namespace asch
