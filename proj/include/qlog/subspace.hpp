#pragma once

// Numerically robust algebra of linear subspaces of C^n: the bounded modular
// ortholattice operations (meet, join, orthocomplement), projectors, Haar
// sampling, isometric embeddings and principal angles.
//
// A subspace is stored as an n x d matrix with orthonormal columns (the basis
// vectors). All rank decisions go through one singular-value cutoff, relative
// to the largest singular value, with a guard band around the cutoff: a
// randomized trial whose singular values fall inside the band is flagged as
// ambiguous so the caller can redraw it. Subspaces are immutable; every
// operation is a pure function and deterministic given (input, Tolerance).

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlog {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct Tolerance {
  double rank_threshold = 1e-9;  // relative singular-value cutoff
  double guard_band = 1e-6;      // ambiguity zone around the cutoff

  // The guard band is log-symmetric about the cutoff: relative singular
  // values in [rank_threshold^2 / guard_band, guard_band] are too close to
  // the cutoff to classify. Defaults give [1e-12, 1e-6].
  double band_low() const { return rank_threshold * rank_threshold / guard_band; }
  double band_high() const { return guard_band; }

  // Residual threshold for membership/containment of unit vectors.
  double containment_eps() const { return std::sqrt(rank_threshold); }
};

struct RankStats {
  long decisions = 0;
  long ambiguous = 0;
  bool clean() const { return ambiguous == 0; }
};

struct AmbientMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// Rank from a descending singular-value list; flags guard-band hits.
inline Eigen::Index rank_decide(const Eigen::VectorXd& sv, const Tolerance& tol,
                                RankStats* stats) {
  if (stats) ++stats->decisions;
  if (sv.size() == 0) return 0;
  double smax = sv(0);
  if (!(smax > 0)) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    double rel = sv(i) / smax;
    if (rel > tol.rank_threshold) ++r;
    if (stats && rel >= tol.band_low() && rel <= tol.band_high()) ++stats->ambiguous;
  }
  return r;
}

}  // namespace detail

class Subspace {
 public:
  // The zero subspace (d = 0).
  static Subspace zero(long n) {
    check_ambient(n);
    return Subspace(n, Matrix(n, 0));
  }

  // The full space C^n.
  static Subspace full(long n) {
    check_ambient(n);
    return Subspace(n, Matrix::Identity(n, n));
  }

  // Adopts a basis that is already orthonormal (columns). Internal use and
  // tests; general input goes through from_spanning.
  static Subspace from_orthonormal(Matrix basis) {
    long n = basis.rows();
    check_ambient(n);
    if (basis.cols() > basis.rows())
      throw std::invalid_argument("subspace dimension exceeds ambient");
    return Subspace(n, std::move(basis));
  }

  long ambient() const { return n_; }
  long dim() const { return basis_.cols(); }

  // n x d, orthonormal columns; column i is the i-th basis vector.
  const Matrix& basis() const { return basis_; }

  Matrix projector() const {
    if (dim() == 0) return Matrix::Zero(n_, n_);
    return basis_ * basis_.adjoint();
  }

 private:
  Subspace(long n, Matrix basis) : n_(n), basis_(std::move(basis)) {}
  static void check_ambient(long n) {
    if (n < 1) throw std::invalid_argument("ambient dimension must be positive");
  }

  long n_;
  Matrix basis_;

  friend Subspace from_spanning(const std::vector<Vector>&, long, const Tolerance&,
                                RankStats*);
  friend Subspace span_of_columns(const Matrix&, long, const Tolerance&, RankStats*);
  friend Subspace complement(const Subspace&);
};

// Span of the columns of an n x k matrix; dimension decided by the singular
// value cutoff. k = 0 gives the zero subspace.
inline Subspace span_of_columns(const Matrix& cols, long ambient,
                                const Tolerance& tol = {}, RankStats* stats = nullptr) {
  if (cols.rows() != ambient)
    throw std::invalid_argument("span_of_columns: vector length != ambient");
  if (cols.cols() == 0) return Subspace::zero(ambient);
  Eigen::JacobiSVD<Matrix> svd(cols, Eigen::ComputeThinU);
  Eigen::Index r = detail::rank_decide(svd.singularValues(), tol, stats);
  return Subspace(ambient, svd.matrixU().leftCols(r));
}

inline Subspace from_spanning(const std::vector<Vector>& vectors, long ambient,
                              const Tolerance& tol = {}, RankStats* stats = nullptr) {
  Matrix cols(ambient, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient)
      throw std::invalid_argument("from_spanning: vector " + std::to_string(i) +
                                  " has length " + std::to_string(vectors[i].size()) +
                                  ", ambient is " + std::to_string(ambient));
    cols.col(static_cast<Eigen::Index>(i)) = vectors[i];
  }
  return span_of_columns(cols, ambient, tol, stats);
}

// Orthogonal complement. Exact by construction: the basis is orthonormal, so
// no rank decision is involved.
inline Subspace complement(const Subspace& s) {
  long n = s.ambient(), d = s.dim();
  if (d == 0) return Subspace::full(n);
  if (d == n) return Subspace::zero(n);
  Eigen::JacobiSVD<Matrix> svd(s.basis(), Eigen::ComputeFullU);
  return Subspace(n, svd.matrixU().rightCols(n - d));
}

namespace detail {
inline void check_same_ambient(const Subspace& s, const Subspace& t, const char* op) {
  if (s.ambient() != t.ambient())
    throw AmbientMismatchError(std::string(op) + ": ambient mismatch (" +
                               std::to_string(s.ambient()) + " vs " +
                               std::to_string(t.ambient()) + ")");
}
}  // namespace detail

inline Subspace join(const Subspace& s, const Subspace& t, const Tolerance& tol = {},
                     RankStats* stats = nullptr) {
  detail::check_same_ambient(s, t, "join");
  if (s.dim() == 0) return t;
  if (t.dim() == 0) return s;
  Matrix stacked(s.ambient(), s.dim() + t.dim());
  stacked << s.basis(), t.basis();
  return span_of_columns(stacked, s.ambient(), tol, stats);
}

// Meet via De Morgan on complement/join: one rank-decision code path.
inline Subspace meet(const Subspace& s, const Subspace& t, const Tolerance& tol = {},
                     RankStats* stats = nullptr) {
  detail::check_same_ambient(s, t, "meet");
  return complement(join(complement(s), complement(t), tol, stats));
}

inline bool contains(const Subspace& s, const Subspace& t, const Tolerance& tol = {}) {
  detail::check_same_ambient(s, t, "contains");
  if (t.dim() == 0) return true;
  if (t.dim() > s.dim()) return false;
  // residual of each basis vector of t after projecting onto s
  Matrix coeff = s.basis().adjoint() * t.basis();
  Matrix resid = t.basis() - s.basis() * coeff;
  return resid.colwise().norm().maxCoeff() < tol.containment_eps();
}

inline bool equal(const Subspace& s, const Subspace& t, const Tolerance& tol = {}) {
  return s.dim() == t.dim() && contains(s, t, tol) && contains(t, s, tol);
}

inline double projector_distance(const Subspace& s, const Subspace& t) {
  detail::check_same_ambient(s, t, "projector_distance");
  return (s.projector() - t.projector()).norm();
}

// Haar-distributed random subspace of dimension d, deterministic for a fixed
// seed (QR orthonormalization of an i.i.d. complex Gaussian draw).
inline Subspace random_subspace(long n, long d, std::uint64_t seed) {
  if (d < 0 || d > n) throw std::invalid_argument("random_subspace: need 0 <= d <= n");
  if (d == 0) return Subspace::zero(n);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix g(n, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      double re = gauss(rng), im = gauss(rng);
      g(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, d);
  return Subspace::from_orthonormal(std::move(q));
}

// ---------------------------------------------------------------------------
// Isometric identification of an abstract C^d with a d-dimensional subspace.

struct Isometry {
  Matrix map;  // n x d, orthonormal columns

  long source_dim() const { return map.cols(); }
  long target_ambient() const { return map.rows(); }
};

inline Isometry isometry_onto(const Subspace& s) { return Isometry{s.basis()}; }

// Image of a subspace of C^d in C^n. Dimension, meets and joins are
// preserved; complements taken in C^d map to complements relative to the
// isometry's range.
inline Subspace pushforward(const Isometry& iso, const Subspace& p) {
  if (p.ambient() != iso.source_dim())
    throw std::invalid_argument("pushforward: ambient " + std::to_string(p.ambient()) +
                                " != isometry source " +
                                std::to_string(iso.source_dim()));
  return Subspace::from_orthonormal(iso.map * p.basis());
}

// Preimage in C^d of a subspace contained in the isometry's range. The
// result is re-orthonormalized, so inputs that stick out of the range shrink
// to their part inside it.
inline Subspace pullback(const Isometry& iso, const Subspace& q,
                         const Tolerance& tol = {}, RankStats* stats = nullptr) {
  if (q.ambient() != iso.target_ambient())
    throw std::invalid_argument("pullback: ambient mismatch");
  if (iso.source_dim() == 0)
    throw std::invalid_argument("pullback: isometry has zero-dimensional source");
  return span_of_columns(iso.map.adjoint() * q.basis(), iso.source_dim(), tol, stats);
}

inline Subspace apply_unitary(const Matrix& u, const Subspace& s) {
  if (u.rows() != s.ambient() || u.cols() != s.ambient())
    throw std::invalid_argument("apply_unitary: matrix shape mismatch");
  double defect = (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
  if (defect > 1e-8 * std::sqrt(static_cast<double>(u.rows())))
    throw std::invalid_argument("apply_unitary: matrix is not unitary (defect " +
                                std::to_string(defect) + ")");
  return Subspace::from_orthonormal(u * s.basis());
}

// Principal angles in [0, pi/2], ascending; cosines are the singular values
// of the cross-Gram matrix of the bases.
inline std::vector<double> principal_angles(const Subspace& s, const Subspace& t) {
  detail::check_same_ambient(s, t, "principal_angles");
  long k = std::min(s.dim(), t.dim());
  if (k == 0) return {};
  Eigen::JacobiSVD<Matrix> svd(Matrix(s.basis().adjoint() * t.basis()));
  std::vector<double> angles;
  angles.reserve(static_cast<std::size_t>(k));
  const auto& sv = svd.singularValues();
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    double c = std::min(1.0, std::max(0.0, sv(i)));
    angles.push_back(std::acos(c));
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

// A unitary taking the line spanned by v (a unit vector) to the coordinate
// axis e_target. Used to position witnesses; lattice operations are
// equivariant under it.
inline Matrix unitary_line_to_axis(const Vector& v, long target_index) {
  long n = v.size();
  if (target_index < 0 || target_index >= n)
    throw std::invalid_argument("unitary_line_to_axis: index out of range");
  Subspace line = span_of_columns(v, n);
  if (line.dim() != 1)
    throw std::invalid_argument("unitary_line_to_axis: input does not span a line");
  Matrix u(n, n);
  u.row(0) = line.basis().col(0).adjoint();
  Subspace rest = complement(line);
  for (long i = 1; i < n; ++i) u.row(i) = rest.basis().col(i - 1).adjoint();
  if (target_index != 0) u.row(0).swap(u.row(target_index));
  return u;
}

}  // namespace qlog
