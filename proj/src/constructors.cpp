#include "subrepro/constructors.hpp"

#include "subrepro/error.hpp"

namespace subrepro {

LaurentPoly box_spline_symbol(int h, int i, int j) {
    if (h < 0 || i < 0 || j < 0) throw Error(ErrorCode::DimensionMismatch, "box spline exponents must be non-negative");
    const Rational half(1, 2);
    const LaurentPoly f1 = LaurentPoly::monomial({0, 0}, half) + LaurentPoly::monomial({1, 0}, half);
    const LaurentPoly f2 = LaurentPoly::monomial({0, 0}, half) + LaurentPoly::monomial({0, 1}, half);
    const LaurentPoly f3 = LaurentPoly::monomial({0, 0}, half) + LaurentPoly::monomial({1, 1}, half);
    return pow(f1, static_cast<unsigned>(h)) * pow(f2, static_cast<unsigned>(i)) * pow(f3, static_cast<unsigned>(j)) *
           Rational(4);
}

LaurentPoly tile_symbol(const DilationMatrix& m) {
    LaurentPoly out(m.dim());
    for (const auto& e : primal_cosets(m).reps) out.add_term(e, 1);
    return out;
}

// ---------------------------------------------------------------------------
// Registry

namespace {

LaurentPoly sqrt3_approximating() {
    LaurentPoly a(2);
    const Rational sixth(1, 6), third(1, 3);
    for (const Index& e : {Index{1, 1}, Index{-1, -1}, Index{-1, 2}, Index{-2, 1}, Index{1, -2}, Index{2, -1}})
        a.add_term(e, sixth);
    for (const Index& e : {Index{-1, 0}, Index{0, 1}, Index{1, -1}}) a.add_term(e, third);
    for (const Index& e : {Index{0, -1}, Index{1, 0}, Index{-1, 1}}) a.add_term(e, third);
    return a;
}

LaurentPoly sqrt3_interpolatory() {
    LaurentPoly a = LaurentPoly::constant(2, 1);
    const Rational outer(-1, 9), inner(4, 9);
    for (const Index& e : {Index{-2, 0}, Index{-2, 2}, Index{0, 2}, Index{2, 0}, Index{2, -2}, Index{0, -2}})
        a.add_term(e, outer);
    for (const Index& e : {Index{-1, 0}, Index{-1, 1}, Index{0, 1}, Index{1, 0}, Index{1, -1}, Index{0, -1}})
        a.add_term(e, inner);
    return a;
}

std::vector<Builtin> make_registry() {
    const IntMatrix sqrt3{{1, 2}, {-2, -1}};
    const IntMatrix shear{{2, 1}, {0, 2}};
    const IntMatrix dyadic{{2, 0}, {0, 2}};

    std::vector<Builtin> reg;
    reg.push_back(Builtin{
        "sqrt3-approx",
        "approximating sqrt(3) symbol, M = [[1,2],[-2,-1]]",
        sqrt3_approximating(),
        DilationMatrix(sqrt3),
        std::nullopt,
        {"the four approximating sqrt(3) symbols with order-3 zero conditions used in the published affine "
         "combination are not bundled: their coefficients are not available here"}});
    reg.push_back(Builtin{"sqrt3-interp",
                          "interpolatory sqrt(3) symbol, M = [[1,2],[-2,-1]]",
                          sqrt3_interpolatory(),
                          DilationMatrix(sqrt3),
                          3,
                          {"the published claim of degree-3 reproduction conditions needs eps-zeros up to |j| = 3, "
                           "i.e. Condition Z_4, while only approximation order 3 is claimed; kZ and kR are computed "
                           "exactly and reported as is"}});

    const DilationMatrix shear_m(shear);
    const LaurentPoly tile = tile_symbol(shear_m);
    reg.push_back(Builtin{"tile-2120-conv2",
                          "(1/4) a(z)^2 with a the tile symbol of M = [[2,1],[0,2]]",
                          tile * tile * Rational(1, 4),
                          shear_m,
                          std::nullopt,
                          {"canonical E = {(0,0),(1,0),(1,1),(2,1)}; the representative (1,2) that is sometimes "
                           "listed for this matrix equals M(0,1) and is congruent to (0,0)"}});

    const DilationMatrix dyadic_m(dyadic);
    const int box_exponents[][3] = {{2, 2, 1}, {2, 1, 2}, {1, 2, 2}, {3, 3, 0}, {3, 0, 3}, {0, 3, 3}};
    for (const auto& e : box_exponents) {
        const std::string tag = std::to_string(e[0]) + std::to_string(e[1]) + std::to_string(e[2]);
        reg.push_back(Builtin{"box-" + tag,
                              "three-direction box spline B_" + tag + ", M = 2I",
                              box_spline_symbol(e[0], e[1], e[2]),
                              dyadic_m,
                              std::nullopt,
                              {}});
    }
    reg.push_back(Builtin{"box-combo",
                          "5 B_221 - B_212 - B_122 - 2 B_330, M = 2I",
                          box_spline_symbol(2, 2, 1) * Rational(5) - box_spline_symbol(2, 1, 2) -
                              box_spline_symbol(1, 2, 2) - box_spline_symbol(3, 3, 0) * Rational(2),
                          dyadic_m,
                          3,
                          {}});
    return reg;
}

}  // namespace

const std::vector<Builtin>& builtin_symbols() {
    static const std::vector<Builtin> registry = make_registry();
    return registry;
}

const Builtin& find_builtin(std::string_view name) {
    for (const auto& b : builtin_symbols())
        if (b.name == name) return b;
    throw Error(ErrorCode::UnknownName, "no built-in symbol named '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Affine solver

RationalVector AffineSolution::member(const RationalVector& params) const {
    if (params.size() != basis.size()) throw Error(ErrorCode::DimensionMismatch, "wrong number of family parameters");
    RationalVector lambda = basepoint;
    for (std::size_t f = 0; f < basis.size(); ++f)
        for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] += params[f] * basis[f][i];
    return lambda;
}

bool AffineSolution::contains(const RationalVector& lambda) const {
    if (lambda.size() != basepoint.size()) return false;
    RationalVector params(free_columns.size());
    for (std::size_t f = 0; f < free_columns.size(); ++f) params[f] = lambda[free_columns[f]];
    return member(params) == lambda;
}

namespace {

struct LinearSystem {
    std::size_t unknowns = 0;
    std::vector<RationalVector> rows;  // unknowns coefficients + right-hand side

    void add(RationalVector coeffs, Rational rhs) {
        coeffs.push_back(std::move(rhs));
        rows.push_back(std::move(coeffs));
    }
};

// Reduced row echelon form; pivots chosen as the first nonzero entry.
// Returns nullopt when inconsistent.
std::optional<AffineSolution> solve(LinearSystem sys) {
    const std::size_t n = sys.unknowns;
    auto& a = sys.rows;
    std::vector<std::size_t> pivot_cols;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < a.size(); ++col) {
        std::size_t p = row;
        while (p < a.size() && a[p][col] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[row]);
        const Rational pivot = a[row][col];
        for (auto& x : a[row]) x /= pivot;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (std::size_t c = col; c <= n; ++c) a[i][c] -= f * a[row][c];
        }
        pivot_cols.push_back(col);
        ++row;
    }
    for (std::size_t i = row; i < a.size(); ++i)
        if (a[i][n] != 0) return std::nullopt;

    AffineSolution sol;
    sol.basepoint.assign(n, Rational(0));
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) sol.basepoint[pivot_cols[r]] = a[r][n];
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RationalVector dir(n, Rational(0));
        dir[f] = 1;
        for (std::size_t r = 0; r < pivot_cols.size(); ++r) dir[pivot_cols[r]] = -a[r][f];
        sol.free_columns.push_back(f);
        sol.basis.push_back(std::move(dir));
    }
    return sol;
}

}  // namespace

AffineSolution affine_solver(std::span<const LaurentPoly> symbols, const DilationMatrix& m, int k, const TauMode& mode) {
    if (symbols.empty()) throw Error(ErrorCode::DimensionMismatch, "affine solver needs at least one symbol");
    const std::size_t s = m.dim();
    for (const auto& a : symbols)
        if (a.dim() != s) throw Error(ErrorCode::DimensionMismatch, "symbol dimension differs from the dilation matrix");
    if (k < 0) throw Error(ErrorCode::DimensionMismatch, "degree must be non-negative");
    const std::size_t n = symbols.size();
    const Rational mm(static_cast<long>(m.m()));
    const auto* fixed = std::get_if<FixedTau>(&mode);
    if (fixed && fixed->tau.size() != s) throw Error(ErrorCode::DimensionMismatch, "tau has the wrong length");

    LinearSystem sys;
    sys.unknowns = n;
    sys.add(RationalVector(n, Rational(1)), 1);

    // Conditions at z = 1; in free mode only j = 0 is linear (|j| = 1 defines tau).
    const int linear_order_at_one = fixed ? k : 0;
    for (int order = 0; order <= linear_order_at_one; ++order) {
        for (const auto& j : multi_indices_of_order(s, order)) {
            RationalVector row(n);
            for (std::size_t i = 0; i < n; ++i) row[i] = eval_deriv_at(symbols[i], j, One{});
            sys.add(std::move(row), fixed ? mm * falling_factorial_q(j, fixed->tau) : mm);
        }
    }

    // Zero conditions on Xi', one real equation per power-basis coordinate.
    const DualCosets dual = dual_coset_points(m);
    for (int order = 0; order <= k; ++order) {
        for (const auto& j : multi_indices_of_order(s, order)) {
            for (std::size_t e = 1; e < dual.points.size(); ++e) {
                std::vector<std::vector<Rational>> coords(n);
                for (std::size_t i = 0; i < n; ++i) coords[i] = eval_deriv_at(symbols[i], j, dual.points[e]).reduced();
                for (std::size_t c = 0; c < coords.front().size(); ++c) {
                    RationalVector row(n);
                    for (std::size_t i = 0; i < n; ++i) row[i] = coords[i][c];
                    sys.add(std::move(row), 0);
                }
            }
        }
    }

    auto solved = solve(std::move(sys));
    if (!solved) throw Error(ErrorCode::Infeasible, "no affine combination meets the conditions for k = " + std::to_string(k));
    AffineSolution sol = std::move(*solved);

    // lambda_i(t) as affine polynomials in the free parameters.
    const std::size_t f_dim = sol.free_dim();
    std::vector<LaurentPoly> lambda(n, LaurentPoly(f_dim));
    for (std::size_t i = 0; i < n; ++i) {
        lambda[i].add_term(Index(f_dim, 0), sol.basepoint[i]);
        for (std::size_t f = 0; f < f_dim; ++f) {
            Index e(f_dim, 0);
            e[f] = 1;
            lambda[i].add_term(e, sol.basis[f][i]);
        }
    }

    sol.tau.assign(s, LaurentPoly(f_dim));
    if (fixed) {
        for (std::size_t l = 0; l < s; ++l) sol.tau[l] = LaurentPoly::constant(f_dim, fixed->tau[l]);
        return sol;
    }
    for (std::size_t l = 0; l < s; ++l)
        for (std::size_t i = 0; i < n; ++i)
            sol.tau[l] += lambda[i] * (eval_deriv_at(symbols[i], MultiIndex::unit(s, l), One{}) / mm);

    for (int order = 2; order <= k; ++order) {
        for (const auto& j : multi_indices_of_order(s, order)) {
            LaurentPoly residual(f_dim);
            for (std::size_t i = 0; i < n; ++i) residual += lambda[i] * eval_deriv_at(symbols[i], j, One{});
            LaurentPoly q = LaurentPoly::constant(f_dim, mm);
            for (std::size_t l = 0; l < s; ++l)
                for (int c = 0; c < j[l]; ++c) q = q * (sol.tau[l] - LaurentPoly::constant(f_dim, c));
            residual -= q;
            if (!residual.is_zero()) sol.residuals.push_back(Residual{j, std::move(residual)});
        }
    }
    return sol;
}

}  // namespace subrepro
