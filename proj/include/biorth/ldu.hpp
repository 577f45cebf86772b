#pragma once

// Lower/upper unit-triangular factors of the bimoment matrix, their inverses,
// the diagonal factor, and the B = L D U check at finite truncation.

#include <vector>

#include "biorth/bimoment.hpp"
#include "biorth/qseries.hpp"

namespace biorth {

enum class FactorKind { lower, upper, lower_inverse, upper_inverse };

inline const char* to_string(FactorKind k)
{
    switch (k) {
        case FactorKind::lower: return "L";
        case FactorKind::upper: return "U";
        case FactorKind::lower_inverse: return "L^-1";
        case FactorKind::upper_inverse: return "U^-1";
    }
    return "?";
}

struct TriangularFactor {
    FactorKind kind;
    long order = 0;
    Matrix<Rational> entries;  // (order+1) x (order+1)

    const Rational& operator()(long i, long j) const
    {
        return entries(static_cast<size_t>(i), static_cast<size_t>(j));
    }
    bool is_lower() const { return kind == FactorKind::lower || kind == FactorKind::lower_inverse; }
};

struct DiagonalFactor {
    long order = 0;
    std::vector<Rational> entries;  // D_0 .. D_order

    const Rational& operator[](long k) const { return entries[static_cast<size_t>(k)]; }
};

/// g_0..g_{count-1}, d^natural and e^natural sequences, computed once per build.
struct CoefficientTable {
    std::vector<Rational> g, d_nat, e_nat;

    CoefficientTable(const AWParams& p, long count)
    {
        for (long k = 0; k < count; ++k) {
            g.push_back(g_coeff(p, k));
            d_nat.push_back(d_natural(p, k));
            e_nat.push_back(e_natural(p, k));
        }
    }
};

/// L_{i,j} = L_{i-1,j-1} + d_j L_{i-1,j} - bd q^j g_j L_{i-1,j+1}, L_{0,0} = 1.
inline TriangularFactor build_L(const AWParams& p, long n)
{
    const CoefficientTable c(p, n + 1);
    const size_t N = static_cast<size_t>(n) + 1;
    Matrix<Rational> L(N, N + 1);  // one spare column for the j+1 reference
    L(0, 0) = 1;
    const Rational bd = p.b * p.d;
    for (size_t i = 1; i < N; ++i)
        for (size_t j = 0; j <= i; ++j) {
            Rational v = c.d_nat[j] * L(i - 1, j) - bd * qpow(p.q, long(j)) * c.g[j] * L(i - 1, j + 1);
            if (j > 0) v += L(i - 1, j - 1);
            L(i, j) = std::move(v);
        }
    Matrix<Rational> out(N, N);
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j <= i; ++j) out(i, j) = L(i, j);
    return TriangularFactor{FactorKind::lower, n, std::move(out)};
}

/// U_{i,j} = U_{i-1,j-1} + e_i U_{i,j-1} - ac q^i g_i U_{i+1,j-1}, U_{0,0} = 1.
inline TriangularFactor build_U(const AWParams& p, long n)
{
    const CoefficientTable c(p, n + 1);
    const size_t N = static_cast<size_t>(n) + 1;
    Matrix<Rational> U(N + 1, N);
    U(0, 0) = 1;
    const Rational ac = p.a * p.c;
    for (size_t j = 1; j < N; ++j)
        for (size_t i = 0; i <= j; ++i) {
            Rational v = c.e_nat[i] * U(i, j - 1) - ac * qpow(p.q, long(i)) * c.g[i] * U(i + 1, j - 1);
            if (i > 0) v += U(i - 1, j - 1);
            U(i, j) = std::move(v);
        }
    Matrix<Rational> out(N, N);
    for (size_t j = 0; j < N; ++j)
        for (size_t i = 0; i <= j; ++i) out(i, j) = U(i, j);
    return TriangularFactor{FactorKind::upper, n, std::move(out)};
}

/// L^-1_{i,j} = L^-1_{i-1,j-1} - d_{i-1} L^-1_{i-1,j} + bd q^{i-2} g_{i-2} L^-1_{i-2,j}.
inline TriangularFactor build_L_inverse(const AWParams& p, long n)
{
    const CoefficientTable c(p, n + 1);
    const size_t N = static_cast<size_t>(n) + 1;
    Matrix<Rational> M(N, N);
    M(0, 0) = 1;
    const Rational bd = p.b * p.d;
    for (size_t i = 1; i < N; ++i)
        for (size_t j = 0; j <= i; ++j) {
            Rational v = -c.d_nat[i - 1] * M(i - 1, j);
            if (j > 0) v += M(i - 1, j - 1);
            if (i >= 2) v += bd * qpow(p.q, long(i) - 2) * c.g[i - 2] * M(i - 2, j);
            M(i, j) = std::move(v);
        }
    return TriangularFactor{FactorKind::lower_inverse, n, std::move(M)};
}

/// U^-1_{i,j} = U^-1_{i-1,j-1} - e_{j-1} U^-1_{i,j-1} + ac q^{j-2} g_{j-2} U^-1_{i,j-2}.
inline TriangularFactor build_U_inverse(const AWParams& p, long n)
{
    const CoefficientTable c(p, n + 1);
    const size_t N = static_cast<size_t>(n) + 1;
    Matrix<Rational> M(N, N);
    M(0, 0) = 1;
    const Rational ac = p.a * p.c;
    for (size_t j = 1; j < N; ++j)
        for (size_t i = 0; i <= j; ++i) {
            Rational v = -c.e_nat[j - 1] * M(i, j - 1);
            if (i > 0) v += M(i - 1, j - 1);
            if (j >= 2) v += ac * qpow(p.q, long(j) - 2) * c.g[j - 2] * M(i, j - 2);
            M(i, j) = std::move(v);
        }
    return TriangularFactor{FactorKind::upper_inverse, n, std::move(M)};
}

/// D_k = prod_{i<k} g_i.
inline DiagonalFactor build_D(const AWParams& p, long n)
{
    DiagonalFactor D{n, {Rational(1)}};
    for (long k = 1; k <= n; ++k) D.entries.push_back(D.entries.back() * g_coeff(p, k - 1));
    return D;
}

inline Matrix<Rational> as_matrix(const DiagonalFactor& D)
{
    const size_t N = D.entries.size();
    Matrix<Rational> m(N, N);
    for (size_t k = 0; k < N; ++k) m(k, k) = D.entries[k];
    return m;
}

namespace detail {

inline void compare_into(VerificationReport& rep, const std::string& name, const Matrix<Rational>& expected,
                         const Matrix<Rational>& actual)
{
    if (auto mm = first_mismatch(expected, actual))
        rep.fail(name, Counterexample{{long(mm->first), long(mm->second)}, to_string(expected(mm->first, mm->second)),
                                      to_string(actual(mm->first, mm->second)), ""});
    else
        rep.pass(name);
}

inline void unit_triangular_into(VerificationReport& rep, const TriangularFactor& f)
{
    const size_t N = f.entries.rows();
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) {
            const bool wrong_side = f.is_lower() ? j > i : j < i;
            const Rational want = i == j ? Rational(1) : Rational(0);
            if ((i == j || wrong_side) && f.entries(i, j) != want) {
                rep.fail(std::string(to_string(f.kind)) + "_unit_triangular",
                         Counterexample{{long(i), long(j)}, to_string(want), to_string(f.entries(i, j)), ""});
                return;
            }
        }
    rep.pass(std::string(to_string(f.kind)) + "_unit_triangular");
}

}  // namespace detail

/// B = L D U on the (n+1) x (n+1) block, plus the inverse identities.
inline VerificationReport verify_ldu(const AWParams& p, long n)
{
    VerificationReport rep;
    rep.suite = "ldu";
    rep.params = to_key_values(p);
    rep.n = n;
    Stopwatch sw;

    const Matrix<Rational> B = bimoment_block(p, n).entries;
    rep.timings_ms["bimoment"] = sw.elapsed_ms();
    const TriangularFactor L = build_L(p, n), U = build_U(p, n);
    const TriangularFactor Li = build_L_inverse(p, n), Ui = build_U_inverse(p, n);
    const DiagonalFactor D = build_D(p, n);
    rep.timings_ms["factors"] = sw.elapsed_ms();

    for (const auto* f : {&L, &U, &Li, &Ui}) detail::unit_triangular_into(rep, *f);
    detail::compare_into(rep, "B_equals_LDU", B, L.entries * as_matrix(D) * U.entries);
    const auto I = Matrix<Rational>::identity(B.rows());
    detail::compare_into(rep, "L_Linv_identity", I, L.entries * Li.entries);
    detail::compare_into(rep, "Linv_L_identity", I, Li.entries * L.entries);
    detail::compare_into(rep, "Uinv_U_identity", I, Ui.entries * U.entries);
    detail::compare_into(rep, "U_Uinv_identity", I, U.entries * Ui.entries);
    bool nonzero = true;
    for (const auto& d : D.entries) nonzero = nonzero && d != 0;
    rep.record("D_nonzero", nonzero);
    rep.timings_ms["total"] = sw.elapsed_ms();
    return rep;
}

struct DeterminantRoutes {
    Rational diagonal_product;  ///< prod_{k<=n} D_k
    Rational closed_form;       ///< product formula, denominator read in base q^2
    Rational elimination;       ///< fraction-free elimination of the block

    bool agree() const { return diagonal_product == closed_form && closed_form == elimination; }
};

/// prod_{i=1}^n (abcd/q, q, ab, bc, ad, cd; q)_i / (abcd/q, abcd, abcd, abcd q; q^2)_i.
inline Rational det_closed_form(const AWParams& p, long n)
{
    const Rational A = p.abcd();
    const Rational q2 = p.q * p.q;
    Rational result = 1;
    for (long i = 1; i <= n; ++i) {
        const unsigned k = static_cast<unsigned>(i);
        const Rational num = qpoch_multi({A / p.q, p.q, p.a * p.b, p.b * p.c, p.a * p.d, p.c * p.d}, p.q, k);
        const Rational den = qpoch_multi({A / p.q, A, A, A * p.q}, q2, k);
        if (den == 0) throw SingularParams("det_closed_form: vanishing denominator at i = " + std::to_string(i));
        result *= num / den;
    }
    return result;
}

inline DeterminantRoutes det_bimoment(const AWParams& p, long n)
{
    DeterminantRoutes r;
    const DiagonalFactor D = build_D(p, n);
    r.diagonal_product = 1;
    for (const auto& d : D.entries) r.diagonal_product *= d;
    r.closed_form = det_closed_form(p, n);
    r.elimination = determinant(bimoment_block(p, n).entries);
    return r;
}

inline nlohmann::ordered_json to_json(const TriangularFactor& f)
{
    nlohmann::ordered_json j;
    j["kind"] = to_string(f.kind);
    j["n"] = f.order;
    j["entries"] = matrix_to_json(f.entries);
    return j;
}

}  // namespace biorth
