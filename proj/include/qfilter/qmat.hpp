#pragma once

// Dense complex kernel for one- and two-qubit operators.
//
// Everything here works on 2x2 (Jones space, one qubit) or 4x4 (two qubits)
// matrices stored row-major. Two-qubit operators use the computational basis
// order |HH>, |HV>, |VH>, |VV>, i.e. index 2*a + b for qubit A in state a and
// qubit B in state b.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace qfilter {

using Complex = std::complex<double>;

/// Real 3-vector in Stokes space.
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr bool operator==(Vec3, Vec3) = default;
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
double norm(Vec3 a);
/// Throws std::invalid_argument for the zero vector.
Vec3 normalized(Vec3 a);

inline constexpr Vec3 kAxisX{1.0, 0.0, 0.0};
inline constexpr Vec3 kAxisY{0.0, 1.0, 0.0};
inline constexpr Vec3 kAxisZ{0.0, 0.0, 1.0};

class ComplexMatrix {
 public:
  static constexpr std::size_t kMaxDim = 4;

  /// Zero matrix. dim must be 2 or 4.
  explicit ComplexMatrix(std::size_t dim);
  /// Row-major entries; the list length must be dim*dim and all entries finite.
  ComplexMatrix(std::size_t dim, std::initializer_list<Complex> row_major);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::initializer_list<double> diag);
  /// |v><v| for a 2- or 4-component vector.
  static ComplexMatrix projector(const std::vector<Complex>& v);

  std::size_t dim() const { return dim_; }

  Complex operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double frobenius_norm() const;
  bool is_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex(s, 0.0); }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

/// Frobenius distance ||a - b||_F. Dimensions must agree.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||m - m^dagger||_F
double hermiticity_error(const ComplexMatrix& m);

/// Pauli matrix sigma_k for k in {0,1,2,3}; sigma_0 is the identity,
/// sigma_1 = X (bit flip), sigma_2 = Y, sigma_3 = Z (phase flip).
ComplexMatrix pauli(int k);

/// n . sigma for a Stokes vector n.
ComplexMatrix stokes_operator(Vec3 n);

/// Kronecker product of two 2x2 matrices, entry[(2i+k),(2j+l)] = a[i,j] * b[k,l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Qubit { A, B };

/// Reduced 2x2 operator of a 4x4 matrix, tracing out the other qubit.
ComplexMatrix partial_trace(const ComplexMatrix& m, Qubit keep);

struct EigenDecomposition {
  /// Real eigenvalues, descending.
  std::vector<double> eigenvalues;
  /// Column k is the unit eigenvector for eigenvalues[k].
  ComplexMatrix eigenvectors;
};

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;

/// Cyclic complex Jacobi diagonalization. Throws std::invalid_argument when
/// ||m - m^dagger||_F exceeds kHermitianTolerance.
EigenDecomposition hermitian_eig(const ComplexMatrix& m);

/// V f(Lambda) V^dagger for a Hermitian matrix.
template <typename F>
ComplexMatrix apply_spectral(const EigenDecomposition& eig, F&& f) {
  const std::size_t n = eig.eigenvectors.dim();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(eig.eigenvalues[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.eigenvectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) {
        out(i, j) += vik * std::conj(eig.eigenvectors(j, k));
      }
    }
  }
  return out;
}

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-kPsdTolerance, 0) are clipped to zero; anything more negative throws
/// std::domain_error.
ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m);

/// Singular values of a square matrix, descending. Computed from the
/// Hermitian dilation [[0, m], [m^dagger, 0]] so small values keep absolute
/// accuracy instead of passing through a square root.
std::vector<double> singular_values(const ComplexMatrix& m);

}  // namespace qfilter
