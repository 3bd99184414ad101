#pragma once

#include <cmath>
#include <complex>
#include <utility>

namespace dww {

/// Real 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    double a = 0, b = 0, c = 0, d = 0;

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }

    Mat2 operator*(const Mat2& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    /// Apply to a complex 2-vector (real matrix, complex data).
    std::pair<std::complex<double>, std::complex<double>> apply(
        std::complex<double> x, std::complex<double> y) const {
        return {a * x + b * y, c * x + d * y};
    }
};

/// Complex 2x2 matrix, used where the spectral API exposes propagators.
struct Mat2c {
    std::complex<double> a, b, c, d;
};

/// Eigenvalues of a real 2x2 matrix as complex numbers (+ branch first).
inline std::pair<std::complex<double>, std::complex<double>> eigenvalues2(const Mat2& m) {
    const double tr = m.trace();
    const std::complex<double> root = std::sqrt(std::complex<double>(tr * tr / 4.0 - m.det(), 0.0));
    return {tr / 2.0 + root, tr / 2.0 - root};
}

/// Matrix exponential e^{A t} of a real 2x2 matrix via the eigen decomposition,
/// with the Jordan-limit formula when the eigenvalues are within 1e-9 of a
/// double root. The result of e^{At} for real A is real; imaginary parts of
/// the complex-arithmetic route cancel and are dropped.
inline Mat2 expm(const Mat2& A, double t) {
    const auto [l1, l2] = eigenvalues2(A);
    if (std::abs(l1 - l2) < 1e-9) {
        // e^{At} = e^{lt} ((1 - lt) I + t A)
        const std::complex<double> el = std::exp(l1 * t);
        const std::complex<double> s = 1.0 - l1 * t;
        return {(el * (s + t * A.a)).real(), (el * (t * A.b)).real(),
                (el * (t * A.c)).real(), (el * (s + t * A.d)).real()};
    }
    const std::complex<double> e1 = std::exp(l1 * t);
    const std::complex<double> e2 = std::exp(l2 * t);
    const std::complex<double> den = l1 - l2;
    auto entry = [&](double aij, bool diag_i, std::complex<double> l1v, std::complex<double> l2v) {
        // (e1 (A - l2 I) - e2 (A - l1 I)) / (l1 - l2), element-wise
        const std::complex<double> m1 = aij - (diag_i ? l2v : std::complex<double>(0.0));
        const std::complex<double> m2 = aij - (diag_i ? l1v : std::complex<double>(0.0));
        return ((e1 * m1 - e2 * m2) / den).real();
    };
    return {entry(A.a, true, l1, l2), entry(A.b, false, l1, l2),
            entry(A.c, false, l1, l2), entry(A.d, true, l1, l2)};
}

}  // namespace dww
