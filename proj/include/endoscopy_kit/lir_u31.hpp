#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "endoscopy_kit/halfint.hpp"

namespace ek {

using Complex = std::complex<double>;
using Mat4 = std::array<std::array<Complex, 4>, 4>;
using Mat2 = std::array<std::array<Complex, 2>, 2>;

// --- small dense-matrix helpers -------------------------------------------

Mat4 mat4_zero();
Mat4 mat4_identity();
Mat4 mat4_mul(const Mat4& a, const Mat4& b);
Mat4 mat4_conj(const Mat4& m);
Mat4 mat4_transpose(const Mat4& m);
Mat4 mat4_inverse(const Mat4& m); // Gauss-Jordan with partial pivoting
double mat4_max_abs_diff(const Mat4& a, const Mat4& b);

// --- the rank-one real form of size four ----------------------------------

/// The hermitian form preserved by this realization: corner antidiagonal
/// entries (-i, i) with identity middle block, of signature (3, 1). Every
/// group element g satisfies conj(g)^T * form * g = form.
Mat4 hermitian_form();

/// Conjugation matrix of the nontrivial Galois action in this realization.
Mat4 galois_matrix();

/// The Galois twist g -> A conj(g)^{-T} A^{-1}; points of the real group
/// are its fixed points.
Mat4 galois_sigma(const Mat4& g);

/// Representative of the nontrivial Weyl element attached to the Siegel
/// parabolic.
Mat4 weyl_representative();

/// Exponential (exact: the nilpotents have square zero in degree three) of
/// the upper unipotent radical element with coordinates (y1, y2, y3).
Mat4 exp_upper(Complex y1, Complex y2, double y3);

/// Same for the opposite radical with coordinates (x1, x2, x3).
Mat4 exp_lower(Complex x1, Complex x2, double x3);

/// Block-diagonal Levi element diag(a, B, conj(a)^{-1}).
Mat4 levi_element(Complex a, const Mat2& B);

// --- Bruhat coordinates ----------------------------------------------------

struct BruhatPoint {
    Complex X1{0.0, 0.0}, X2{0.0, 0.0};
    double X3 = 0.0;
    Complex c{0.0, 0.0}; // X3 - (i/2)(|X1|^2 + |X2|^2)
    Complex a{0.0, 0.0}; // -1 / conj(c)
    Complex Y1{0.0, 0.0}, Y2{0.0, 0.0};
    double Y3 = 0.0;
};

/// Solve exp(lower(X)) = n' m w exp(upper(Y)) in coordinates. Throws
/// std::domain_error when c = 0 (the big cell misses the point).
BruhatPoint bruhat_decompose(Complex X1, Complex X2, double X3);

/// Largest deviation of the 4x4 matrix identity behind bruhat_decompose:
/// builds T = exp(lower(X)) exp(upper(Y))^{-1} w^{-1} and checks that it is
/// upper-unipotent times the expected Levi element.
double bruhat_matrix_residual(const BruhatPoint& bp);

// --- the seven verified spectral values ------------------------------------

struct LirCase {
    HalfInt x;
    Complex prefactor;                            ///< lambda^{-1} epsilon factor
    std::string l_ratio_formula;                  ///< human-readable Gamma product
    int pi_power = 2;                             ///< 8 pi^p convention of the row
    Complex integral_constant;                    ///< tabulated C with integral = 8 pi^p Gamma(2v) C
    int expected_scalar = -1;
    int expected_pairing = -1;
    std::vector<std::string> centralizer_factors; ///< factor names of the dual-side table row, in row order
};

const std::vector<LirCase>& lir_table();

/// lambda(w, psi): the square of the quadratic-extension constant, -1.
double lambda_w_psi();

/// Value of the invariant top form on the standard basis of the opposite
/// radical (fixes the measure normalization).
double eta_basis_value();

/// The factor relating the two-variable measure to 4C, C = 2 pi^2.
double measure_prefactor();

/// The constant J(x): the one-variable integral that carries all the
/// x-dependence of the closed form (evaluated by adaptive quadrature after
/// compactifying the half-line).
Complex j_constant(HalfInt x);

/// The Gamma-quotient L(0)/L(1) of the row (no prefactor).
Complex gamma_l_product(HalfInt x, double v);

/// prefactor * L(0)/L(1).
Complex normalizing_ratio(HalfInt x, double v);

/// Closed form of the full radical integral: 8 pi^2 Gamma(2v) (-1)^{2x} J(x).
Complex integral_closed(HalfInt x, double v);

/// Direct two-dimensional numerical evaluation of the radical integral
/// (both halves combined), for cross-checking integral_closed. Needs
/// v >= 0.25 for enough decay.
Complex integral_bruteforce(HalfInt x, double v, double rel_tol = 1e-8);

/// Normalized scalar at finite v: prefactor * L(1)/L(0) * integral.
Complex lir_scalar_at(HalfInt x, double v);

/// Analytic v -> 0+ limit of lir_scalar_at (Gamma-duplication cancellation).
Complex lir_scalar(HalfInt x);

/// The character pairing of the table row, computed from the explicit
/// component-group representative matrices.
int pi_a3_pairing(HalfInt x);

// --- end-to-end verification -----------------------------------------------

struct LirRow {
    HalfInt x{0};
    Complex prefactor;
    Complex l_ratio_at_v;
    Complex integral_constant_measured;
    double scalar_limit = 0.0;
    int pairing = 0;
    std::string centralizer;
    bool pass = false;
};

struct LirVerification {
    std::vector<LirRow> rows;
    bool all_pass = false;
    double v_probe = 0.5;
    bool used_bruteforce = false;
};

/// Run the whole table: scalar limits vs pairings, measured integral
/// constants vs tabulated ones, and the dual-side centralizer row; with
/// bruteforce set, also cross-check the two-dimensional integral.
LirVerification verify_u31(bool bruteforce = false, double v_probe = 0.5,
                           double tol = 1e-6);

/// Same checks restricted to the given spectral values.
LirVerification verify_u31_rows(const std::vector<HalfInt>& xs,
                                bool bruteforce = false, double v_probe = 0.5,
                                double tol = 1e-6);

} // namespace ek
