#include "qfilter/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qfilter {

namespace {

void require_dim(std::size_t dim) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument("matrix dimension must be 2 or 4, got " + std::to_string(dim));
  }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("matrix dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
  }
}

// Row-major n x n Hermitian matrix diagonalized in place by cyclic Jacobi
// rotations. On return `a` is diagonal (to rounding) and `v` holds the
// accumulated unitary, eigenvectors in its columns.
void jacobi_hermitian(std::vector<Complex>& a, std::vector<Complex>& v, std::size_t n) {
  v.assign(n * n, Complex{});
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

  auto at = [&](std::size_t i, std::size_t j) -> Complex& { return a[i * n + j]; };

  double scale = 0.0;
  for (const auto& z : a) scale += std::norm(z);
  if (scale == 0.0) return;

  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(at(p, q));
    if (off <= 1e-34 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = at(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;

        // Phase-strip the pivot, then a real symmetric Jacobi rotation.
        const Complex phase = apq / mag;
        const double app = at(p, p).real();
        const double aqq = at(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        // G restricted to (p, q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = at(k, p);
          const Complex akq = at(k, q);
          at(k, p) = akp * c + akq * gqp;
          at(k, q) = akp * s + akq * gqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = at(p, k);
          const Complex aqk = at(q, k);
          at(p, k) = c * apk + std::conj(gqp) * aqk;
          at(q, k) = s * apk + std::conj(gqq) * aqk;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        at(p, p) = at(p, p).real();
        at(q, q) = at(q, q).real();

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v[k * n + p];
          const Complex vkq = v[k * n + q];
          v[k * n + p] = vkp * c + vkq * gqp;
          v[k * n + q] = vkp * s + vkq * gqq;
        }
      }
    }
  }
}

// Indices of the diagonal of `a` sorted by descending real part.
std::vector<std::size_t> descending_order(const std::vector<Complex>& a, std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a[i * n + i].real() > a[j * n + j].real();
  });
  return order;
}

}  // namespace

double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

Vec3 normalized(Vec3 a) {
  const double n = norm(a);
  if (n == 0.0 || !std::isfinite(n)) {
    throw std::invalid_argument("cannot normalize a zero or non-finite Stokes vector");
  }
  return (1.0 / n) * a;
}

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) { require_dim(dim); }

ComplexMatrix::ComplexMatrix(std::size_t dim, std::initializer_list<Complex> row_major) : dim_(dim) {
  require_dim(dim);
  if (row_major.size() != dim * dim) {
    throw std::invalid_argument("expected " + std::to_string(dim * dim) + " entries, got " +
                                std::to_string(row_major.size()));
  }
  std::copy(row_major.begin(), row_major.end(), data_.begin());
  if (!is_finite()) throw std::invalid_argument("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> diag) {
  ComplexMatrix m(diag.size());
  std::size_t i = 0;
  for (double d : diag) {
    m(i, i) = d;
    ++i;
  }
  if (!m.is_finite()) throw std::invalid_argument("matrix entries must be finite");
  return m;
}

ComplexMatrix ComplexMatrix::projector(const std::vector<Complex>& v) {
  ComplexMatrix m(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
  if (!m.is_finite()) throw std::invalid_argument("matrix entries must be finite");
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_ * dim_; ++i) out.data_[i] = std::conj(data_[i]);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_ * dim_; ++i) s += std::norm(data_[i]);
  return std::sqrt(s);
}

bool ComplexMatrix::is_finite() const {
  return std::all_of(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(dim_ * dim_),
                     [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs);
  for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).frobenius_norm(); }

double hermiticity_error(const ComplexMatrix& m) { return frobenius_distance(m, m.adjoint()); }

ComplexMatrix pauli(int k) {
  using namespace std::complex_literals;
  switch (k) {
    case 0: return ComplexMatrix::identity(2);
    case 1: return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0});
    case 2: return ComplexMatrix(2, {0.0, -1i, 1i, 0.0});
    case 3: return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0});
    default: throw std::invalid_argument("Pauli index must be in 0..3, got " + std::to_string(k));
  }
}

ComplexMatrix stokes_operator(Vec3 n) {
  using namespace std::complex_literals;
  return ComplexMatrix(2, {n.z, n.x - 1i * n.y, n.x + 1i * n.y, -n.z});
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw std::invalid_argument("kron expects two 2x2 operators");
  }
  ComplexMatrix out(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Qubit keep) {
  if (m.dim() != 4) throw std::invalid_argument("partial_trace expects a 4x4 operator");
  ComplexMatrix out(2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t j = 0; j < 2; ++j) {
        switch (keep) {
          case Qubit::A: out(i, k) += m(2 * i + j, 2 * k + j); break;
          case Qubit::B: out(i, k) += m(2 * j + i, 2 * j + k); break;
          default: throw std::invalid_argument("partial_trace: invalid qubit index");
        }
      }
  return out;
}

EigenDecomposition hermitian_eig(const ComplexMatrix& m) {
  if (!m.is_finite()) throw std::invalid_argument("hermitian_eig: non-finite entries");
  const double herr = hermiticity_error(m);
  if (herr > kHermitianTolerance) {
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian (||m - m^dagger||_F = " +
                                std::to_string(herr) + ")");
  }
  const std::size_t n = m.dim();
  // Work on the Hermitian part so rounding asymmetry does not leak in.
  std::vector<Complex> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = 0.5 * (m(i, j) + std::conj(m(j, i)));

  std::vector<Complex> v;
  jacobi_hermitian(a, v, n);

  const auto order = descending_order(a, n);
  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = a[src * n + src].real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v[i * n + src];
  }
  return out;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
  const auto eig = hermitian_eig(m);
  for (double lambda : eig.eigenvalues) {
    if (lambda < -kPsdTolerance) {
      throw std::domain_error("matrix_sqrt_psd: negative eigenvalue " + std::to_string(lambda));
    }
  }
  return apply_spectral(eig, [](double lambda) { return lambda > 0.0 ? std::sqrt(lambda) : 0.0; });
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  const std::size_t big = 2 * n;
  std::vector<Complex> h(big * big);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      h[i * big + (n + j)] = m(i, j);
      h[(n + j) * big + i] = std::conj(m(i, j));
    }
  std::vector<Complex> v;
  jacobi_hermitian(h, v, big);
  std::vector<double> diag(big);
  for (std::size_t i = 0; i < big; ++i) diag[i] = h[i * big + i].real();
  std::sort(diag.begin(), diag.end(), std::greater<>());
  // The dilation spectrum is {+s_i} U {-s_i}; the top half are the singular values.
  std::vector<double> out(diag.begin(), diag.begin() + static_cast<std::ptrdiff_t>(n));
  for (double& s : out) s = std::max(s, 0.0);
  return out;
}

}  // namespace qfilter
