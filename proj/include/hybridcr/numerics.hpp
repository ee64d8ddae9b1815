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

#pragma once

#include <cmath>
#include <string>

#include "hybridcr/types.hpp"

namespace hybridcr {

// ---------------------------------------------------------------------------
// Special functions
// ---------------------------------------------------------------------------

/// Gaussian tail Q(x) = P(N(0,1) > x). NaN input throws InvalidParameter.
double q_function(double x);

/// Inverse of q_function on (0,1). Rational initial guess followed by a Halley step,
/// round-trip residual below 1e-12 relative over [1e-300, 1 - 1e-16].
double q_inverse(double p);

/// Scaled exponential integral e^x E1(x) for x > 0.
///
/// Power series for x < 1, Lentz continued fraction for 1 <= x < 1e8 and a three-term
/// asymptotic series beyond. The product is formed directly, so arguments up to
/// DBL_MAX neither overflow e^x nor underflow E1(x).
double exp_e1(double x);

/// Derivative-free companion: d/dx [e^x E1(x)] = e^x E1(x) - 1/x.
inline double exp_e1_derivative(double x) { return exp_e1(x) - 1.0 / x; }

// ---------------------------------------------------------------------------
// Scalar solvers
// ---------------------------------------------------------------------------

/// Bisection on a sign change. Stops when |f| <= tol or the bracket is narrower than
/// tol * max(1, |x|). Throws BracketError if f(lo) and f(hi) share a sign.
template <class F>
double bisect_root(F &&f, double lo, double hi, double tol, int max_iter = 400) {
    if (!(lo < hi)) throw DomainError("bisect_root: need lo < hi");
    double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) throw BracketError("bisect_root: endpoints do not bracket a root");
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < max_iter; ++it) {
        mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::abs(fm) <= tol || (hi - lo) <= tol * std::max(1.0, std::abs(mid))) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if (hi - lo <= 0.0) break; // no representable midpoint left
    }
    return mid;
}

struct Maximum1d {
    double argmax;
    double max;
    bool at_boundary; ///< best value found at lo or hi rather than inside
};

/// Golden-section search for the maximizer of a unimodal (e.g. concave) function.
/// The bracket is shrunk until its width is below tol; both endpoints are also
/// evaluated so a monotone g returns the boundary with at_boundary set.
template <class G>
Maximum1d maximize_concave_1d(G &&g, double lo, double hi, double tol, int max_iter = 500) {
    if (!(lo < hi)) throw DomainError("maximize_concave_1d: need lo < hi");
    constexpr double invphi = 0.61803398874989484820;
    const double glo = g(lo);
    const double ghi = g(hi);
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double gc = g(c), gd = g(d);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (gc >= gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - invphi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + invphi * (b - a);
            gd = g(d);
        }
    }
    Maximum1d best = gc >= gd ? Maximum1d{c, gc, false} : Maximum1d{d, gd, false};
    if (glo > best.max) best = {lo, glo, true};
    if (ghi > best.max) best = {hi, ghi, true};
    return best;
}

// ---------------------------------------------------------------------------
// Matrix primitives
// ---------------------------------------------------------------------------

/// Rotates w so its largest-magnitude entry is real and positive.
void fix_phase(CVec &w);

struct GeneralizedEigen {
    CVec w;        ///< unit norm, phase fixed
    double lambda; ///< Rayleigh quotient wᴴAw / wᴴBw at w
};

/// Unit vector maximizing wᴴAw / wᴴBw for Hermitian A and Hermitian PD B.
/// Throws NotPositiveDefinite if B has no Cholesky factor.
GeneralizedEigen dominant_generalized_eigvec(const CMat &A, const CMat &B);

/// Largest and smallest generalized eigenvalues of the pencil (A, B), B PD.
std::pair<double, double> generalized_eigen_range(const CMat &A, const CMat &B);

/// Dominant eigenvector of a Hermitian matrix (unit norm, phase fixed).
CVec dominant_eigvec(const CMat &A);

struct QuadratureSpec {
    std::string scheme = "gauss-kronrod-15-adaptive";
    double abs_tol = 1e-13;
    double rel_tol = 1e-11;
    int max_subdivisions = 15; ///< maximum bisection depth

    void validate() const;
};

/// E[wᴴBw / wᴴAw] for w ~ CN(0, I), A Hermitian PD and B Hermitian PSD.
///
/// Uses 1/q = ∫_0^∞ e^{-tq} dt together with E[wᴴBw e^{-t wᴴAw}] = tr(B (I+tA)^{-1}) / det(I+tA);
/// in A's eigenbasis the integrand is Σ_j b_jj/(1+t a_j) · Π_k 1/(1+t a_k).
/// Throws NumericError when the quadrature error estimate exceeds the requested tolerance.
double ratio_quadform_mean(const CMat &A, const CMat &B, const QuadratureSpec &quad = {});

} // namespace hybridcr
