#include "endoscopy_kit/lir_u31.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "endoscopy_kit/centralizers.hpp"
#include "endoscopy_kit/gamma.hpp"
#include "endoscopy_kit/params.hpp"
#include "endoscopy_kit/quadrature.hpp"

namespace ek {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
const Complex kImag{0.0, 1.0};

/// Integer power of a complex number (negative exponents by reciprocal);
/// keeps everything single-valued.
Complex cpow_int(Complex z, long long n) {
    bool invert = n < 0;
    unsigned long long k = invert ? static_cast<unsigned long long>(-n)
                                  : static_cast<unsigned long long>(n);
    Complex acc{1.0, 0.0}, base = z;
    while (k) {
        if (k & 1ULL) acc *= base;
        base *= base;
        k >>= 1ULL;
    }
    return invert ? 1.0 / acc : acc;
}

int sign_of_two_x(const HalfInt& x) { return (x.two_x() % 2 == 0) ? +1 : -1; }

} // namespace

// ---------------------------------------------------------------------------
// matrix helpers
// ---------------------------------------------------------------------------

Mat4 mat4_zero() {
    Mat4 m{};
    for (auto& row : m) row.fill(Complex{0.0, 0.0});
    return m;
}

Mat4 mat4_identity() {
    Mat4 m = mat4_zero();
    for (int i = 0; i < 4; ++i) m[(size_t)i][(size_t)i] = 1.0;
    return m;
}

Mat4 mat4_mul(const Mat4& a, const Mat4& b) {
    Mat4 c = mat4_zero();
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const Complex aik = a[(size_t)i][(size_t)k];
            if (aik == Complex{0.0, 0.0}) continue;
            for (int j = 0; j < 4; ++j) c[(size_t)i][(size_t)j] += aik * b[(size_t)k][(size_t)j];
        }
    return c;
}

Mat4 mat4_conj(const Mat4& m) {
    Mat4 c = m;
    for (auto& row : c)
        for (auto& z : row) z = std::conj(z);
    return c;
}

Mat4 mat4_transpose(const Mat4& m) {
    Mat4 t = m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t[(size_t)i][(size_t)j] = m[(size_t)j][(size_t)i];
    return t;
}

Mat4 mat4_inverse(const Mat4& m) {
    // Gauss-Jordan with partial pivoting on [m | I]
    std::array<std::array<Complex, 8>, 4> aug{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) aug[(size_t)i][(size_t)j] = m[(size_t)i][(size_t)j];
        aug[(size_t)i][(size_t)(4 + i)] = 1.0;
    }
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        double best = std::abs(aug[(size_t)col][(size_t)col]);
        for (int r = col + 1; r < 4; ++r) {
            double cand = std::abs(aug[(size_t)r][(size_t)col]);
            if (cand > best) { best = cand; pivot = r; }
        }
        if (best == 0.0) throw std::domain_error("singular matrix");
        std::swap(aug[(size_t)col], aug[(size_t)pivot]);
        const Complex inv = 1.0 / aug[(size_t)col][(size_t)col];
        for (int j = 0; j < 8; ++j) aug[(size_t)col][(size_t)j] *= inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const Complex f = aug[(size_t)r][(size_t)col];
            if (f == Complex{0.0, 0.0}) continue;
            for (int j = 0; j < 8; ++j) aug[(size_t)r][(size_t)j] -= f * aug[(size_t)col][(size_t)j];
        }
    }
    Mat4 out = mat4_zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[(size_t)i][(size_t)j] = aug[(size_t)i][(size_t)(4 + j)];
    return out;
}

double mat4_max_abs_diff(const Mat4& a, const Mat4& b) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            d = std::max(d, std::abs(a[(size_t)i][(size_t)j] - b[(size_t)i][(size_t)j]));
    return d;
}

// ---------------------------------------------------------------------------
// the group realization
// ---------------------------------------------------------------------------

Mat4 hermitian_form() {
    // -i times galois_matrix(); conjugation-invariance under the group is
    // insensitive to that scalar, but this representative is hermitian.
    Mat4 j = mat4_zero();
    j[0][3] = -kImag;
    j[1][1] = 1.0;
    j[2][2] = 1.0;
    j[3][0] = kImag;
    return j;
}

Mat4 galois_matrix() {
    Mat4 a = mat4_zero();
    a[0][3] = 1.0;
    a[1][1] = kImag;
    a[2][2] = kImag;
    a[3][0] = -1.0;
    return a;
}

Mat4 galois_sigma(const Mat4& g) {
    const Mat4 a = galois_matrix();
    const Mat4 ct = mat4_transpose(mat4_conj(g));
    return mat4_mul(mat4_mul(a, mat4_inverse(ct)), mat4_inverse(a));
}

Mat4 weyl_representative() {
    Mat4 w = mat4_zero();
    w[0][3] = 1.0;
    w[1][1] = -1.0;
    w[2][2] = -1.0;
    w[3][0] = -1.0;
    return w;
}

Mat4 exp_upper(Complex y1, Complex y2, double y3) {
    Mat4 m = mat4_identity();
    m[0][1] = y1;
    m[0][2] = y2;
    m[0][3] = Complex{y3, 0.0} + 0.5 * kImag * (std::norm(y1) + std::norm(y2));
    m[1][3] = kImag * std::conj(y1);
    m[2][3] = kImag * std::conj(y2);
    return m;
}

Mat4 exp_lower(Complex x1, Complex x2, double x3) {
    Mat4 m = mat4_identity();
    m[1][0] = x1;
    m[2][0] = x2;
    m[3][0] = Complex{x3, 0.0} - 0.5 * kImag * (std::norm(x1) + std::norm(x2));
    m[3][1] = -kImag * std::conj(x1);
    m[3][2] = -kImag * std::conj(x2);
    return m;
}

Mat4 levi_element(Complex a, const Mat2& B) {
    Mat4 m = mat4_zero();
    m[0][0] = a;
    m[1][1] = B[0][0];
    m[1][2] = B[0][1];
    m[2][1] = B[1][0];
    m[2][2] = B[1][1];
    m[3][3] = 1.0 / std::conj(a);
    return m;
}

// ---------------------------------------------------------------------------
// Bruhat coordinates
// ---------------------------------------------------------------------------

BruhatPoint bruhat_decompose(Complex X1, Complex X2, double X3) {
    BruhatPoint bp;
    bp.X1 = X1;
    bp.X2 = X2;
    bp.X3 = X3;
    bp.c = Complex{X3, 0.0} - 0.5 * kImag * (std::norm(X1) + std::norm(X2));
    if (std::abs(bp.c) == 0.0)
        throw std::domain_error("point lies outside the big cell (c = 0)");
    bp.a = -1.0 / std::conj(bp.c);
    const Complex abar = std::conj(bp.a);
    bp.Y1 = kImag * abar * std::conj(X1);
    bp.Y2 = kImag * abar * std::conj(X2);
    bp.Y3 = std::norm(bp.a) * X3;
    return bp;
}

double bruhat_matrix_residual(const BruhatPoint& bp) {
    const Mat4 lower = exp_lower(bp.X1, bp.X2, bp.X3);
    const Mat4 upper = exp_upper(bp.Y1, bp.Y2, bp.Y3);
    const Mat4 t = mat4_mul(mat4_mul(lower, mat4_inverse(upper)),
                            mat4_inverse(weyl_representative()));
    double res = 0.0;
    auto upd = [&res](double d) { res = std::max(res, d); };
    // t must be (upper unipotent) * levi: vanishing lower-left block
    upd(std::abs(t[1][0]));
    upd(std::abs(t[2][0]));
    upd(std::abs(t[3][0]));
    upd(std::abs(t[3][1]));
    upd(std::abs(t[3][2]));
    upd(std::abs(t[0][0] - bp.a));
    upd(std::abs(t[3][3] - 1.0 / std::conj(bp.a)));
    const Mat2 b{{{t[1][1], t[1][2]}, {t[2][1], t[2][2]}}};
    const Mat4 u = mat4_mul(t, mat4_inverse(levi_element(bp.a, b)));
    for (int i = 0; i < 4; ++i) upd(std::abs(u[(size_t)i][(size_t)i] - 1.0));
    upd(std::abs(u[1][0]));
    upd(std::abs(u[2][0]));
    upd(std::abs(u[3][0]));
    upd(std::abs(u[3][1]));
    upd(std::abs(u[3][2]));
    upd(std::abs(u[1][2]));
    upd(std::abs(u[2][1]));
    upd(std::abs(u[1][3] - kImag * std::conj(u[0][1])));
    upd(std::abs(u[2][3] - kImag * std::conj(u[0][2])));
    const Complex coord = u[0][3] - 0.5 * kImag * (std::norm(u[0][1]) + std::norm(u[0][2]));
    upd(std::abs(coord.imag()));
    return res;
}

// ---------------------------------------------------------------------------
// the verified table
// ---------------------------------------------------------------------------

const std::vector<LirCase>& lir_table() {
    static const std::vector<LirCase> table = [] {
        const std::string ratio_pm2 =
            "4 pi^{5/2} Gamma(v) Gamma(v+3/2) / (Gamma(v+1/2) Gamma(v+7/2))";
        const std::string ratio_pm1 = "4 pi^{5/2} Gamma(v) / Gamma(v+5/2)";
        const std::string ratio_half =
            "4 pi^{5/2} Gamma(v) Gamma(v+1/2) / (Gamma(v+1) Gamma(v+2))";
        const std::string ratio_zero =
            "4 pi^{5/2} Gamma(v) Gamma(v+1/2) / Gamma(v+3/2)^2";
        const std::vector<std::string> sp_row = {"O(1)", "O(1)", "Sp(2)"};
        std::vector<LirCase> t;
        t.push_back({HalfInt(-4), {1, 0}, ratio_pm2, 2, {-4.0 / 15.0, 0}, -1, -1, sp_row});
        t.push_back({HalfInt(-2), {1, 0}, ratio_pm1, 2, {-4.0 / 3.0, 0}, -1, -1, sp_row});
        t.push_back({HalfInt(-1), {0, -1}, ratio_half, 3, {0, -1}, -1, -1, {"O(1)", "O(3)"}});
        t.push_back({HalfInt(0), {-1, 0}, ratio_zero, 2, {4.0, 0}, -1, -1, sp_row});
        t.push_back({HalfInt(1), {0, -1}, ratio_half, 3, {0, 1}, 1, 1, {"O(3)", "O(1)"}});
        t.push_back({HalfInt(2), {1, 0}, ratio_pm1, 2, {-4.0 / 3.0, 0}, -1, -1, sp_row});
        t.push_back({HalfInt(4), {1, 0}, ratio_pm2, 2, {-4.0 / 15.0, 0}, -1, -1, sp_row});
        return t;
    }();
    return table;
}

double lambda_w_psi() { return -1.0; }

double eta_basis_value() { return -4.0; }

double measure_prefactor() { return -eta_basis_value(); }

Complex j_constant(HalfInt x) {
    const long long n = x.two_x();
    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    auto f = [n, sgn](double th) -> Complex {
        const Complex e_minus = std::exp(-kImag * static_cast<double>(n) * th);
        const Complex e_plus = std::exp(kImag * static_cast<double>(n) * th);
        return 2.0 * std::sin(th) * (e_minus + sgn * e_plus);
    };
    QuadratureResult q = integrate(f, 0.0, 0.5 * kPi, 1e-14, 1e-13);
    if (!q.converged) throw std::runtime_error("quadrature failed for the x-constant");
    return q.value;
}

namespace {

const LirCase& table_case(const HalfInt& x) {
    for (const auto& c : lir_table())
        if (c.x.two_x() == x.two_x()) return c;
    throw std::invalid_argument("unsupported spectral value x = " + x.str());
}

/// The Gamma product of the row with the leading Gamma(v) stripped,
/// evaluated at the given argument (used at v = 0 for the limit).
double gamma_tail_product(const HalfInt& x, double v) {
    switch (std::abs(x.two_x())) {
        case 4: return gamma(v + 1.5) / (gamma(v + 0.5) * gamma(v + 3.5));
        case 2: return 1.0 / gamma(v + 2.5);
        case 1: return gamma(v + 0.5) / (gamma(v + 1.0) * gamma(v + 2.0));
        case 0: return gamma(v + 0.5) / (gamma(v + 1.5) * gamma(v + 1.5));
        default: throw std::invalid_argument("unsupported spectral value x = " + x.str());
    }
}

} // namespace

Complex gamma_l_product(HalfInt x, double v) {
    if (v <= 0.0) throw std::invalid_argument("v must be positive");
    table_case(x); // validates x
    return 4.0 * std::pow(kPi, 2.5) * gamma(v) * gamma_tail_product(x, v);
}

Complex normalizing_ratio(HalfInt x, double v) {
    return table_case(x).prefactor * gamma_l_product(x, v);
}

Complex integral_closed(HalfInt x, double v) {
    if (v <= 0.0) throw std::invalid_argument("v must be positive");
    table_case(x);
    const double sgn = sign_of_two_x(x);
    return 8.0 * kPi * kPi * gamma(2.0 * v) * sgn * j_constant(x);
}

Complex integral_bruteforce(HalfInt x, double v, double rel_tol) {
    if (v < 0.25)
        throw std::invalid_argument("direct quadrature needs v >= 0.25");
    table_case(x);
    const long long n = x.two_x();
    const double xv = static_cast<double>(n) / 2.0;
    const double sgn = sign_of_two_x(x);
    const double big_c = 2.0 * kPi * kPi;
    const double prefactor = measure_prefactor() * 4.0 * big_c; // 16 C

    // compactify both half-lines: a = tan(alpha), r = tan(beta)
    auto f = [n, xv, v](double beta, double alpha) -> Complex {
        const double r = std::tan(beta);
        const double a = std::tan(alpha);
        if (!(r > 0.0)) return {0.0, 0.0};
        const double r2 = r * r;
        const double base = a * a + r2 * r2;
        if (!(base > 0.0) || !std::isfinite(base)) return {0.0, 0.0};
        const double jac = (1.0 + a * a) * (1.0 + r * r);
        const Complex osc = cpow_int(Complex{a, -r2}, n);
        const double decay = std::pow(base, -1.5 - xv - v);
        const double damp = std::exp(-1.0 / std::sqrt(base));
        const Complex val = (r2 * r) * osc * decay * damp * jac;
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) return {0.0, 0.0};
        return val;
    };
    QuadratureResult q = integrate2d(f, 0.0, 0.5 * kPi, 0.0, 0.5 * kPi,
                                     1e-9, rel_tol, 24);
    if (!q.converged)
        throw std::runtime_error("two-dimensional quadrature did not converge");
    const Complex half = prefactor * sgn * q.value;
    return half + sgn * std::conj(half);
}

Complex lir_scalar_at(HalfInt x, double v) {
    const LirCase& row = table_case(x);
    return row.prefactor * integral_closed(x, v) / gamma_l_product(x, v);
}

Complex lir_scalar(HalfInt x) {
    const LirCase& row = table_case(x);
    const double sgn = sign_of_two_x(x);
    // lim Gamma(2v)/Gamma(v) = 1/2, so 8 pi^2 / (4 pi^{5/2}) * 1/2 = 1/sqrt(pi)
    return row.prefactor * sgn * j_constant(x) /
           (std::sqrt(kPi) * gamma_tail_product(x, 0.0));
}

int pi_a3_pairing(HalfInt x) {
    Mat4 sprime = mat4_zero();
    sprime[0][3] = 1.0;
    sprime[1][1] = -1.0;
    sprime[2][2] = -1.0;
    sprime[3][0] = -1.0;

    Mat4 a3 = mat4_zero();
    Mat4 m = mat4_identity();
    if (x.is_integer()) {
        a3[0][3] = 1.0;
        a3[1][1] = 1.0;
        a3[2][2] = 1.0;
        a3[3][0] = -1.0;
    } else if (x.two_x() == 1) {
        m[0][0] = -1.0;
        a3[0][3] = 1.0;
        a3[1][1] = -1.0;
        a3[2][2] = 1.0;
        a3[3][0] = 1.0;
    } else if (x.two_x() == -1) {
        m[0][0] = -1.0;
        a3[0][3] = 1.0;
        a3[1][1] = 1.0;
        a3[2][2] = -1.0;
        a3[3][0] = 1.0;
    } else {
        throw std::invalid_argument("unsupported spectral value x = " + x.str());
    }
    const Mat4 s = mat4_mul(m, mat4_mul(a3, sprime));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && std::abs(s[(size_t)i][(size_t)j]) > 1e-12)
                throw std::logic_error("component representative is not diagonal");
    if (std::abs(s[0][0] * s[3][3] - 1.0) > 1e-12)
        throw std::logic_error("representative has a nontrivial similitude part");
    const double t1 = s[1][1].real();
    const double t2 = s[2][2].real();
    if (std::abs(std::abs(t1) - 1.0) > 1e-12 || std::abs(std::abs(t2) - 1.0) > 1e-12)
        throw std::logic_error("torus entries of the representative are not signs");
    // the character sends the first sign generator to -1, the second to +1
    return t1 > 0.0 ? +1 : -1;
}

LirVerification verify_u31(bool bruteforce, double v_probe, double tol) {
    std::vector<HalfInt> xs;
    for (const auto& row : lir_table()) xs.push_back(row.x);
    return verify_u31_rows(xs, bruteforce, v_probe, tol);
}

LirVerification verify_u31_rows(const std::vector<HalfInt>& xs, bool bruteforce,
                                double v_probe, double tol) {
    LirVerification out;
    out.v_probe = v_probe;
    out.used_bruteforce = bruteforce;
    out.all_pass = true;
    for (const HalfInt& x : xs) {
        const LirCase& row = table_case(x);
        LirRow r;
        r.x = row.x;
        r.prefactor = row.prefactor;
        r.l_ratio_at_v = gamma_l_product(row.x, v_probe);
        const Complex closed = integral_closed(row.x, v_probe);
        r.integral_constant_measured =
            closed / (8.0 * std::pow(kPi, row.pi_power) * gamma(2.0 * v_probe));
        const Complex scal = lir_scalar(row.x);
        r.scalar_limit = scal.real();
        r.pairing = pi_a3_pairing(row.x);

        FormalParameter p = u31_arch_parameter(row.x);
        GroupProduct s = centralizer(p);
        r.centralizer = s.str();
        std::vector<std::string> names;
        for (const auto& fac : s.factors) names.push_back(fac.str());

        bool ok = true;
        ok = ok && std::abs(scal - Complex{static_cast<double>(row.expected_scalar), 0.0}) <= tol;
        ok = ok && (r.pairing == row.expected_pairing);
        ok = ok && (row.expected_scalar == row.expected_pairing);
        ok = ok && std::abs(r.integral_constant_measured - row.integral_constant) <=
                       1e-8 * std::abs(row.integral_constant);
        ok = ok && (names == row.centralizer_factors);
        if (bruteforce) {
            const Complex bf = integral_bruteforce(row.x, std::max(v_probe, 0.25));
            const Complex cl = integral_closed(row.x, std::max(v_probe, 0.25));
            ok = ok && std::abs(bf - cl) <= 1e-6 * std::abs(cl);
        }
        r.pass = ok;
        out.all_pass = out.all_pass && ok;
        out.rows.push_back(std::move(r));
    }
    return out;
}

} // namespace ek
