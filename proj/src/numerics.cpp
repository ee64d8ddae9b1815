// SPDX-License-Identifier: Apache-2.0
//
// hybridcr: joint sensing / receive-beamforming design for hybrid SIMO cognitive radio
// Copyright (C) 2026 The hybridcr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "hybridcr/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hybridcr/channel.hpp"

namespace hybridcr {

double q_function(double x) {
    if (std::isnan(x)) throw InvalidParameter("q_function: NaN argument");
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

namespace {

// Rational approximation of the standard normal quantile (P. J. Acklam), |rel err| < 1.2e-9.
double normal_quantile_guess(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double plow = 0.02425;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - plow) {
        const double q = std::sqrt(-2.0 * std::log1p(-p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

} // namespace

double q_inverse(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("q_inverse: p must lie in (0,1)");
    if (p == 0.5) return 0.0;
    // Solve Phi(y) = p, then Q^{-1}(p) = -y.
    double y = normal_quantile_guess(p);
    for (int step = 0; step < 2; ++step) {
        const double e = 0.5 * std::erfc(-y / std::numbers::sqrt2) - p;
        const double pdf = std::exp(-0.5 * y * y) / std::sqrt(2.0 * std::numbers::pi);
        if (!(pdf > 0.0) || !std::isfinite(pdf)) break;
        const double u = e / pdf;
        y -= u / (1.0 + 0.5 * y * u);
    }
    return -y;
}

double exp_e1(double x) {
    if (!(x > 0.0)) throw DomainError("exp_e1: x must be > 0");
    if (std::isinf(x)) return 0.0;
    if (x < 1.0) {
        // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
        double sum = 0.0;
        double term = 1.0;
        for (int k = 1; k < 60; ++k) {
            term *= -x / k;
            const double add = term / k;
            sum += add;
            if (std::abs(add) < 1e-17 * std::abs(sum)) break;
        }
        return std::exp(x) * (-kEulerGamma - std::log(x) - sum);
    }
    if (x < 1e8) {
        // Modified Lentz on E1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
        constexpr double tiny = 1e-300;
        double b = x + 1.0;
        double c = 1.0 / tiny;
        double d = 1.0 / b;
        double h = d;
        for (int i = 1; i < 1000; ++i) {
            const double an = -static_cast<double>(i) * i;
            b += 2.0;
            d = 1.0 / (an * d + b);
            c = b + an / c;
            const double del = c * d;
            h *= del;
            if (std::abs(del - 1.0) < 1e-16) break;
        }
        return h;
    }
    const double r = 1.0 / x;
    return r * (1.0 - r * (1.0 - 2.0 * r * (1.0 - 3.0 * r)));
}

void fix_phase(CVec &w) {
    if (w.size() == 0) return;
    Eigen::Index imax = 0;
    w.cwiseAbs().maxCoeff(&imax);
    const double mag = std::abs(w(imax));
    if (mag == 0.0) return;
    w *= std::conj(w(imax)) / mag;
    w(imax) = cdouble(w(imax).real(), 0.0);
}

GeneralizedEigen dominant_generalized_eigvec(const CMat &A, const CMat &B) {
    if (A.rows() != B.rows() || A.rows() != A.cols() || B.rows() != B.cols())
        throw InvalidParameter("dominant_generalized_eigvec: dimension mismatch");
    if (!is_hermitian(A, 1e-10) || !is_hermitian(B, 1e-10))
        throw InvalidParameter("dominant_generalized_eigvec: inputs must be Hermitian");
    Eigen::LLT<CMat> llt(B);
    if (llt.info() != Eigen::Success) throw NotPositiveDefinite("dominant_generalized_eigvec: B is not PD");
    // Reduce to the standard problem C = L^{-1} A L^{-H}, then w = L^{-H} v.
    const CMat Linv_A = llt.matrixL().solve(A);
    const CMat C = llt.matrixL().solve(Linv_A.adjoint()).adjoint();
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (C + C.adjoint()));
    if (es.info() != Eigen::Success) throw NumericError("dominant_generalized_eigvec: eigensolver failed", 0, 0);
    const Eigen::Index n = A.rows();
    CVec v = es.eigenvectors().col(n - 1);
    CVec w = llt.matrixU().solve(v);
    w.normalize();
    fix_phase(w);
    const double num = std::real(w.dot(A * w));
    const double den = std::real(w.dot(B * w));
    return {w, num / den};
}

std::pair<double, double> generalized_eigen_range(const CMat &A, const CMat &B) {
    Eigen::LLT<CMat> llt(B);
    if (llt.info() != Eigen::Success) throw NotPositiveDefinite("generalized_eigen_range: B is not PD");
    const CMat Linv_A = llt.matrixL().solve(A);
    const CMat C = llt.matrixL().solve(Linv_A.adjoint()).adjoint();
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (C + C.adjoint()), Eigen::EigenvaluesOnly);
    return {es.eigenvalues().maxCoeff(), es.eigenvalues().minCoeff()};
}

CVec dominant_eigvec(const CMat &A) {
    Eigen::SelfAdjointEigenSolver<CMat> es(A);
    CVec w = es.eigenvectors().col(A.rows() - 1);
    w.normalize();
    fix_phase(w);
    return w;
}

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw InvalidParameter("quadrature tolerances must be > 0");
    if (max_subdivisions < 1) throw InvalidParameter("max_subdivisions must be >= 1");
}

double ratio_quadform_mean(const CMat &A, const CMat &B, const QuadratureSpec &quad) {
    quad.validate();
    if (A.rows() != B.rows() || A.rows() != A.cols() || B.rows() != B.cols() || A.rows() == 0)
        throw InvalidParameter("ratio_quadform_mean: dimension mismatch");
    if (!is_hermitian(A, 1e-10) || !is_hermitian(B, 1e-10))
        throw InvalidParameter("ratio_quadform_mean: inputs must be Hermitian");
    Eigen::SelfAdjointEigenSolver<CMat> es(A);
    const RVec a = es.eigenvalues();
    if (a.minCoeff() <= 0.0) throw NotPositiveDefinite("ratio_quadform_mean: A is not PD");
    const CMat &V = es.eigenvectors();
    const RVec b = (V.adjoint() * B * V).diagonal().real();
    const double scale = a.mean();
    const Eigen::Index M = a.size();

    // Dimensionless variable s = t * scale keeps the integrand O(1) near the origin.
    auto integrand = [&](double s) {
        const double t = s / scale;
        double prod = 1.0;
        double sum = 0.0;
        for (Eigen::Index j = 0; j < M; ++j) {
            const double inv = 1.0 / (1.0 + t * a(j));
            prod *= inv;
            sum += b(j) * inv;
        }
        return sum * prod / scale;
    };

    double err = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        integrand, 0.0, std::numeric_limits<double>::infinity(), static_cast<unsigned>(quad.max_subdivisions),
        quad.rel_tol, &err, &l1);
    if (!std::isfinite(value) || err > std::max(quad.abs_tol, quad.rel_tol * l1))
        throw NumericError("ratio_quadform_mean: quadrature did not converge (estimate " +
                               std::to_string(value) + ", error " + std::to_string(err) + ")",
                           value, err);
    return value;
}

} // namespace hybridcr
