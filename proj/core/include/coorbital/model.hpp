#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace coorbital {

/// Gap angles between consecutive satellites on the simplex sum = 2pi.
class AngleConfig {
  public:
    static constexpr double sum_tolerance = 1e-12;

    /// Throws DomainError unless N >= 3, every angle is positive and the
    /// angles sum to 2pi within sum_tolerance.
    explicit AngleConfig(std::vector<double> thetas);

    [[nodiscard]] std::span<const double> thetas() const { return thetas_; }
    [[nodiscard]] std::size_t size() const { return thetas_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return thetas_[i]; }

  private:
    std::vector<double> thetas_;
};

/// Positive infinitesimal mass factors mu_1..mu_N.
class MassVector {
  public:
    /// Throws DomainError if empty or any entry is not strictly positive.
    explicit MassVector(std::vector<double> mus);

    [[nodiscard]] std::span<const double> mus() const { return mus_; }
    [[nodiscard]] std::size_t size() const { return mus_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return mus_[i]; }

  private:
    std::vector<double> mus_;
};

/// Four-satellite configuration symmetric about an axis through the central
/// body that carries no satellite: theta3 = theta1.
struct SymmetricConfig {
    double theta1;
    double theta2;
    double theta4;

    /// Validating constructor; theta4 must close the simplex within 1e-12.
    static SymmetricConfig make(double theta1, double theta2, double theta4);
    /// theta4 = 2pi - 2 theta1 - theta2.
    static SymmetricConfig from_pair(double theta1, double theta2);

    [[nodiscard]] double theta3() const { return theta1; }
    [[nodiscard]] AngleConfig expand() const;
};

/// The four kernel values entering the symmetric system.
enum class KernelTerm { F1, F2, F4, F12 };

const char* to_string(KernelTerm term);

struct KernelValues {
    double f1;   ///< f(theta1)
    double f2;   ///< f(theta2)
    double f4;   ///< f(theta4)
    double f12;  ///< f(theta1 + theta2)

    [[nodiscard]] double get(KernelTerm term) const;
};

KernelValues kernel_values(const SymmetricConfig& sym);

/// Terms whose magnitude falls below tol, in F1, F2, F4, F12 order.
std::vector<KernelTerm> vanishing_terms(const KernelValues& kv, double tol = 1e-9);

using Vector4 = std::array<double, 4>;
using Matrix4 = std::array<Vector4, 4>;

Vector4 multiply(const Matrix4& m, const Vector4& v);
/// Determinant by Gaussian elimination with partial pivoting.
double determinant(const Matrix4& m);
/// Largest absolute entry.
double max_abs(const Matrix4& m);

/// Left-hand sides of the general 1+N central-configuration equations. Row i
/// is sum_{k=1}^{N-1} mu_{i+k} f(theta_i + ... + theta_{i+k-1}), indices
/// cyclic. Throws DomainError on a size mismatch or when a partial sum lies
/// within 1e-12 of 0 or 2pi.
std::vector<double> residual_general(const AngleConfig& config, const MassVector& masses);

/// The four rows of the reduced symmetric system:
///   mu2 f1 + mu3 f12 - mu4 f4,   -mu1 f1 + mu3 f2 + mu4 f12,
///   mu4 f1 - mu1 f12 - mu2 f2,    mu1 f4 - mu2 f12 - mu3 f1.
Vector4 residual_four(const SymmetricConfig& sym, const MassVector& masses);

/// Antisymmetric matrix M with M * mu == residual_four(sym, mu). Its Pfaffian
/// is f1^2 - f12^2 - f2 f4, so det M equals the square of the curve function.
Matrix4 mass_matrix(const SymmetricConfig& sym);

/// Coefficient matrix of the same system read as linear in the kernel
/// vector X = (f1, f2, f4, f12) with the masses as coefficients. Singular for
/// every mass vector.
Matrix4 kernel_coefficient_matrix(const MassVector& masses);

struct NullSpaceMasses {
    int rank = 4;
    std::vector<Vector4> basis;           ///< orthonormal basis of ker M
    std::optional<MassVector> positive;   ///< canonical positive representative
};

/// Null space of M by Gauss-Jordan elimination with full pivoting; a pivot
/// counts toward the rank when it exceeds rank_tol times the largest pivot.
///
/// When a strictly positive mass vector exists in the kernel, the returned
/// representative is the one with mu1 = mu4, mu2 = mu3 and mu2 + mu3 = 1 if
/// that vector is in the kernel and positive; otherwise the kernel vector
/// maximising its smallest component, normalised to sum 2.
/// Throws RankDeficiencyAbsent when the kernel is trivial.
NullSpaceMasses positive_null_masses(const Matrix4& m, double rank_tol = 1e-9);

}  // namespace coorbital
