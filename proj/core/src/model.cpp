#include "coorbital/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "coorbital/errors.hpp"
#include "coorbital/kernel.hpp"

namespace coorbital {

AngleConfig::AngleConfig(std::vector<double> thetas) : thetas_(std::move(thetas)) {
    if (thetas_.size() < 3) {
        throw DomainError("AngleConfig: need at least 3 angles");
    }
    for (double t : thetas_) {
        if (!(t > 0.0)) {
            throw DomainError("AngleConfig: angle positivity violated (" + std::to_string(t) + ")");
        }
    }
    const double sum = std::accumulate(thetas_.begin(), thetas_.end(), 0.0);
    if (std::abs(sum - two_pi) > sum_tolerance) {
        throw DomainError("AngleConfig: angle sum " + std::to_string(sum) + " differs from 2pi");
    }
}

MassVector::MassVector(std::vector<double> mus) : mus_(std::move(mus)) {
    if (mus_.empty()) {
        throw DomainError("MassVector: empty");
    }
    for (double m : mus_) {
        if (!(m > 0.0) || !std::isfinite(m)) {
            throw DomainError("MassVector: mass positivity violated (" + std::to_string(m) + ")");
        }
    }
}

SymmetricConfig SymmetricConfig::make(double theta1, double theta2, double theta4) {
    if (!(theta1 > 0.0 && theta1 < pi)) {
        throw DomainError("SymmetricConfig: theta1 must lie in (0, pi)");
    }
    if (!(theta2 > 0.0 && theta2 < two_pi) || !(theta4 > 0.0 && theta4 < two_pi)) {
        throw DomainError("SymmetricConfig: theta2 and theta4 must lie in (0, 2pi)");
    }
    if (std::abs(2.0 * theta1 + theta2 + theta4 - two_pi) > 1e-12) {
        throw DomainError("SymmetricConfig: 2 theta1 + theta2 + theta4 must equal 2pi");
    }
    return SymmetricConfig{theta1, theta2, theta4};
}

SymmetricConfig SymmetricConfig::from_pair(double theta1, double theta2) {
    return make(theta1, theta2, two_pi - 2.0 * theta1 - theta2);
}

AngleConfig SymmetricConfig::expand() const {
    return AngleConfig({theta1, theta2, theta1, theta4});
}

const char* to_string(KernelTerm term) {
    switch (term) {
        case KernelTerm::F1: return "f(theta1)";
        case KernelTerm::F2: return "f(theta2)";
        case KernelTerm::F4: return "f(theta4)";
        case KernelTerm::F12: return "f(theta1+theta2)";
    }
    return "?";
}

double KernelValues::get(KernelTerm term) const {
    switch (term) {
        case KernelTerm::F1: return f1;
        case KernelTerm::F2: return f2;
        case KernelTerm::F4: return f4;
        case KernelTerm::F12: return f12;
    }
    return 0.0;
}

KernelValues kernel_values(const SymmetricConfig& sym) {
    return {kernel::value(sym.theta1), kernel::value(sym.theta2), kernel::value(sym.theta4),
            kernel::value(sym.theta1 + sym.theta2)};
}

std::vector<KernelTerm> vanishing_terms(const KernelValues& kv, double tol) {
    std::vector<KernelTerm> out;
    for (KernelTerm t : {KernelTerm::F1, KernelTerm::F2, KernelTerm::F4, KernelTerm::F12}) {
        if (std::abs(kv.get(t)) < tol) {
            out.push_back(t);
        }
    }
    return out;
}

Vector4 multiply(const Matrix4& m, const Vector4& v) {
    Vector4 out{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            out[i] += m[i][j] * v[j];
        }
    }
    return out;
}

double determinant(const Matrix4& m) {
    Matrix4 a = m;
    double det = 1.0;
    for (std::size_t k = 0; k < 4; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < 4; ++i) {
            if (std::abs(a[i][k]) > std::abs(a[p][k])) {
                p = i;
            }
        }
        if (a[p][k] == 0.0) {
            return 0.0;
        }
        if (p != k) {
            std::swap(a[p], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t i = k + 1; i < 4; ++i) {
            const double factor = a[i][k] / a[k][k];
            for (std::size_t j = k; j < 4; ++j) {
                a[i][j] -= factor * a[k][j];
            }
        }
    }
    return det;
}

double max_abs(const Matrix4& m) {
    double out = 0.0;
    for (const auto& row : m) {
        for (double x : row) {
            out = std::max(out, std::abs(x));
        }
    }
    return out;
}

std::vector<double> residual_general(const AngleConfig& config, const MassVector& masses) {
    const std::size_t n = config.size();
    if (masses.size() != n) {
        throw DomainError("residual_general: " + std::to_string(n) + " angles but " +
                          std::to_string(masses.size()) + " masses");
    }
    std::vector<double> rows(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double partial = 0.0;
        for (std::size_t k = 1; k < n; ++k) {
            partial += config[(i + k - 1) % n];
            if (partial < 1e-12 || partial > two_pi - 1e-12) {
                throw DomainError("residual_general: partial angle sum collides");
            }
            rows[i] += masses[(i + k) % n] * kernel::value(partial);
        }
    }
    return rows;
}

namespace {

void require_four(const MassVector& masses) {
    if (masses.size() != 4) {
        throw DomainError("symmetric system needs exactly 4 masses");
    }
}

}  // namespace

Vector4 residual_four(const SymmetricConfig& sym, const MassVector& masses) {
    require_four(masses);
    const KernelValues k = kernel_values(sym);
    const double m1 = masses[0], m2 = masses[1], m3 = masses[2], m4 = masses[3];
    return {
        m2 * k.f1 + m3 * k.f12 - m4 * k.f4,
        m3 * k.f2 + m4 * k.f12 - m1 * k.f1,
        m4 * k.f1 - m1 * k.f12 - m2 * k.f2,
        m1 * k.f4 - m2 * k.f12 - m3 * k.f1,
    };
}

Matrix4 mass_matrix(const SymmetricConfig& sym) {
    const KernelValues k = kernel_values(sym);
    return Matrix4{{
        {0.0, k.f1, k.f12, -k.f4},
        {-k.f1, 0.0, k.f2, k.f12},
        {-k.f12, -k.f2, 0.0, k.f1},
        {k.f4, -k.f12, -k.f1, 0.0},
    }};
}

Matrix4 kernel_coefficient_matrix(const MassVector& masses) {
    require_four(masses);
    const double m1 = masses[0], m2 = masses[1], m3 = masses[2], m4 = masses[3];
    return Matrix4{{
        {m2, 0.0, -m4, m3},
        {-m1, m3, 0.0, m4},
        {m4, -m2, 0.0, -m1},
        {-m3, 0.0, m1, -m2},
    }};
}

namespace {

double dot(const Vector4& a, const Vector4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double norm(const Vector4& a) { return std::sqrt(dot(a, a)); }

struct Elimination {
    int rank = 0;
    std::vector<Vector4> basis;
};

// Gauss-Jordan with full pivoting; the kernel basis is read off the reduced
// form and orthonormalised.
Elimination null_space(const Matrix4& m, double rank_tol) {
    Matrix4 a = m;
    std::array<std::size_t, 4> col{0, 1, 2, 3};
    double first_pivot = 0.0;
    int rank = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        std::size_t pr = k, pc = k;
        double best = -1.0;
        for (std::size_t i = k; i < 4; ++i) {
            for (std::size_t j = k; j < 4; ++j) {
                if (std::abs(a[i][j]) > best) {
                    best = std::abs(a[i][j]);
                    pr = i;
                    pc = j;
                }
            }
        }
        if (k == 0) {
            first_pivot = best;
        }
        if (best == 0.0 || best <= rank_tol * first_pivot) {
            break;
        }
        std::swap(a[pr], a[k]);
        if (pc != k) {
            for (auto& row : a) {
                std::swap(row[pc], row[k]);
            }
            std::swap(col[pc], col[k]);
        }
        const double piv = a[k][k];
        for (double& x : a[k]) {
            x /= piv;
        }
        for (std::size_t i = 0; i < 4; ++i) {
            if (i == k) {
                continue;
            }
            const double factor = a[i][k];
            if (factor == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < 4; ++j) {
                a[i][j] -= factor * a[k][j];
            }
        }
        ++rank;
    }

    Elimination out;
    out.rank = rank;
    const auto r = static_cast<std::size_t>(rank);
    for (std::size_t free = r; free < 4; ++free) {
        Vector4 v{};
        v[col[free]] = 1.0;
        for (std::size_t i = 0; i < r; ++i) {
            v[col[i]] = -a[i][free];
        }
        for (const Vector4& q : out.basis) {
            const double proj = dot(v, q);
            for (std::size_t j = 0; j < 4; ++j) {
                v[j] -= proj * q[j];
            }
        }
        const double n = norm(v);
        for (double& x : v) {
            x /= n;
        }
        out.basis.push_back(v);
    }
    return out;
}

bool strictly_positive(const Vector4& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
}

Vector4 normalise_inner_pair(Vector4 v) {
    const double s = v[1] + v[2];
    for (double& x : v) {
        x /= s;
    }
    return v;
}

// mu = B c with mu1 = mu4, mu2 = mu3, mu2 + mu3 = 1, solved in the least
// squares sense over the kernel coordinates c.
std::optional<Vector4> symmetric_representative(const std::vector<Vector4>& basis) {
    const std::size_t k = basis.size();
    if (k == 0 || k > 2) {
        return std::nullopt;
    }
    // rows of the constraint system C c = d
    std::array<std::array<double, 2>, 3> c{};
    const std::array<double, 3> d{0.0, 0.0, 1.0};
    for (std::size_t j = 0; j < k; ++j) {
        c[0][j] = basis[j][0] - basis[j][3];
        c[1][j] = basis[j][1] - basis[j][2];
        c[2][j] = basis[j][1] + basis[j][2];
    }
    std::array<double, 2> coef{};
    if (k == 1) {
        double ctc = 0.0, ctd = 0.0;
        for (std::size_t i = 0; i < 3; ++i) {
            ctc += c[i][0] * c[i][0];
            ctd += c[i][0] * d[i];
        }
        if (ctc == 0.0) {
            return std::nullopt;
        }
        coef[0] = ctd / ctc;
    } else {
        double a00 = 0, a01 = 0, a11 = 0, b0 = 0, b1 = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            a00 += c[i][0] * c[i][0];
            a01 += c[i][0] * c[i][1];
            a11 += c[i][1] * c[i][1];
            b0 += c[i][0] * d[i];
            b1 += c[i][1] * d[i];
        }
        const double det = a00 * a11 - a01 * a01;
        if (std::abs(det) < 1e-14 * std::max(1.0, a00 * a11)) {
            return std::nullopt;
        }
        coef[0] = (b0 * a11 - b1 * a01) / det;
        coef[1] = (a00 * b1 - a01 * b0) / det;
    }
    double misfit = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        double ci = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            ci += c[i][j] * coef[j];
        }
        misfit = std::max(misfit, std::abs(ci - d[i]));
    }
    if (misfit > 1e-8) {
        return std::nullopt;
    }
    Vector4 mu{};
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < 4; ++i) {
            mu[i] += coef[j] * basis[j][i];
        }
    }
    return mu;
}

double min_component(const Vector4& v) { return *std::min_element(v.begin(), v.end()); }

// Kernel vector maximising its smallest component on the unit sphere of the
// kernel (only the one- and two-dimensional cases arise for antisymmetric M).
std::optional<Vector4> max_min_representative(const std::vector<Vector4>& basis) {
    if (basis.size() == 1) {
        Vector4 v = basis[0];
        if (min_component(v) < 0.0) {
            for (double& x : v) {
                x = -x;
            }
        }
        return strictly_positive(v) ? std::optional<Vector4>(v) : std::nullopt;
    }
    if (basis.size() == 2) {
        auto at = [&](double phi) {
            Vector4 v{};
            for (std::size_t i = 0; i < 4; ++i) {
                v[i] = std::cos(phi) * basis[0][i] + std::sin(phi) * basis[1][i];
            }
            return v;
        };
        constexpr int steps = 3600;
        double best_phi = 0.0, best = -1.0;
        for (int s = 0; s < steps; ++s) {
            const double phi = two_pi * s / steps;
            const double v = min_component(at(phi));
            if (v > best) {
                best = v;
                best_phi = phi;
            }
        }
        double lo = best_phi - two_pi / steps, hi = best_phi + two_pi / steps;
        for (int it = 0; it < 100; ++it) {
            const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (min_component(at(m1)) < min_component(at(m2))) {
                lo = m1;
            } else {
                hi = m2;
            }
        }
        const Vector4 v = at(0.5 * (lo + hi));
        return strictly_positive(v) ? std::optional<Vector4>(v) : std::nullopt;
    }
    // Higher-dimensional kernels only occur for a (numerically) zero matrix:
    // project the all-ones direction.
    Vector4 p{};
    for (const Vector4& q : basis) {
        const double w = q[0] + q[1] + q[2] + q[3];
        for (std::size_t i = 0; i < 4; ++i) {
            p[i] += w * q[i];
        }
    }
    return strictly_positive(p) ? std::optional<Vector4>(p) : std::nullopt;
}

}  // namespace

NullSpaceMasses positive_null_masses(const Matrix4& m, double rank_tol) {
    Elimination e = null_space(m, rank_tol);
    if (e.basis.empty()) {
        throw RankDeficiencyAbsent("mass matrix has full rank; no mass vector solves the system");
    }
    NullSpaceMasses out;
    out.rank = e.rank;
    out.basis = e.basis;

    std::optional<Vector4> mu = symmetric_representative(e.basis);
    if (!mu || !strictly_positive(*mu)) {
        mu = max_min_representative(e.basis);
    }
    if (mu) {
        const Vector4 v = normalise_inner_pair(*mu);
        out.positive = MassVector({v[0], v[1], v[2], v[3]});
    }
    return out;
}

}  // namespace coorbital
