#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "subrepro/analysis.hpp"
#include "subrepro/constructors.hpp"
#include "subrepro/error.hpp"

using namespace subrepro;

namespace {

const DilationMatrix& two() {
    static const DilationMatrix m({{2, 0}, {0, 2}});
    return m;
}

std::vector<LaurentPoly> four_boxes() {
    return {box_spline_symbol(2, 2, 1), box_spline_symbol(2, 1, 2), box_spline_symbol(1, 2, 2), box_spline_symbol(3, 3, 0)};
}

Rational evaluate(const LaurentPoly& p, const RationalVector& t) {
    Rational sum = 0;
    for (const auto& [e, c] : p.terms()) {
        Rational term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::int64_t k = 0; k < e[i]; ++k) term *= t[i];
        sum += term;
    }
    return sum;
}

RationalVector random_params(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> num(-20, 20);
    std::uniform_int_distribution<int> den(1, 7);
    RationalVector t(n);
    for (auto& x : t) {
        x = Rational(num(rng), den(rng));
        x.canonicalize();
    }
    return t;
}

}  // namespace

TEST_SUITE("constructors") {
    TEST_CASE("box splines match a dense convolution") {
        CHECK(box_spline_symbol(0, 0, 0) == LaurentPoly::constant(2, 4));
        LaurentPoly b111(2);
        for (auto [e, c] : std::vector<std::pair<Index, int>>{
                 {{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 1}, {{1, 1}, 2}, {{2, 1}, 1}, {{1, 2}, 1}, {{2, 2}, 1}})
            b111.add_term(e, Rational(c) / 2);
        CHECK(box_spline_symbol(1, 1, 1) == b111);

        for (int h = 0; h <= 3; ++h)
            for (int i = 0; i <= 3; ++i)
                for (int j = 0; j <= 3; ++j) {
                    const oracle::Dense dense = oracle::dense_box_spline(h, i, j);
                    LaurentPoly expected(2);
                    for (std::size_t p = 0; p < dense.size(); ++p)
                        for (std::size_t q = 0; q < dense[p].size(); ++q)
                            expected.add_term({static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)}, dense[p][q]);
                    const LaurentPoly b = box_spline_symbol(h, i, j);
                    CHECK(b == expected);
                    CHECK(b.value_at_one() == 4);
                }
        CHECK(compute_tau(box_spline_symbol(2, 2, 1), two()) == RationalVector{Rational(3, 2), Rational(3, 2)});
        CHECK_THROWS_AS(box_spline_symbol(-1, 0, 0), Error);
    }

    TEST_CASE("tile symbols vanish on the nontrivial dual points") {
        for (const IntMatrix& e : std::vector<IntMatrix>{{{2, 1}, {0, 2}}, {{1, 2}, {-2, -1}}, {{1, -1}, {1, 1}}, {{3, 0}, {0, 3}}}) {
            const DilationMatrix m(e);
            const LaurentPoly t = tile_symbol(m);
            CHECK(t.value_at_one() == m.m());
            const auto pts = dual_coset_points(m).points;
            for (std::size_t i = 1; i < pts.size(); ++i) CHECK(eval_deriv_at(t, MultiIndex::zero(2), pts[i]).is_zero());
        }
    }

    TEST_CASE("registry") {
        const auto& all = builtin_symbols();
        CHECK(all.size() == 10);
        CHECK_THROWS_AS(find_builtin("nope"), Error);

        const Builtin& approx = find_builtin("sqrt3-approx");
        CHECK(approx.symbol.size() == 12);
        CHECK(approx.symbol.value_at_one() == 3);
        CHECK(approx.symbol.coeff({1, 1}) == Rational(1, 6));
        CHECK(approx.symbol.coeff({-1, 0}) == Rational(1, 3));

        const Builtin& interp = find_builtin("sqrt3-interp");
        CHECK(interp.symbol.size() == 13);
        CHECK(interp.symbol.value_at_one() == 3);
        CHECK(interp.symbol.coeff({0, 0}) == 1);
        for (const auto& [alpha, c] : interp.symbol.terms())
            if (alpha != Index{0, 0}) CHECK_FALSE(interp.dilation.lattice_preimage(alpha).has_value());
        CHECK(interp.claimed_reproduction_degree == 3);

        const Builtin& conv = find_builtin("tile-2120-conv2");
        const LaurentPoly t = tile_symbol(conv.dilation);
        CHECK(conv.symbol == Rational(1, 4) * (t * t));

        const std::vector<Rational> lambda{5, -1, -1, -2};
        CHECK(find_builtin("box-combo").symbol == affine_combine(four_boxes(), lambda));
    }

    TEST_CASE("the six Z_3 box splines, checked with a float oracle") {
        const auto pts = dual_coset_points(two()).points;
        for (auto [h, i, j] : std::vector<std::array<int, 3>>{{2, 2, 1}, {2, 1, 2}, {1, 2, 2}, {3, 3, 0}, {3, 0, 3}, {0, 3, 3}}) {
            const LaurentPoly b = box_spline_symbol(h, i, j);
            bool all_vanish_below_3 = true;
            bool some_nonzero_at_3 = false;
            for (int n = 0; n <= 3; ++n)
                for (const auto& jj : multi_indices_of_order(2, n))
                    for (std::size_t e = 1; e < pts.size(); ++e) {
                        std::vector<double> ex;
                        for (const auto& q : pts[e].exponents) ex.push_back(q.get_d());
                        const double mag = std::abs(oracle::deriv_at(b, jj.values(), ex));
                        if (n < 3) all_vanish_below_3 = all_vanish_below_3 && mag < 1e-9;
                        else some_nonzero_at_3 = some_nonzero_at_3 || mag > 1e-3;
                    }
            CHECK(all_vanish_below_3);
            CHECK(some_nonzero_at_3);
            CHECK(zero_condition_order(b, two()).order == 3);
        }
    }

    TEST_CASE("affine solver on the box-spline combination") {
        const auto boxes = four_boxes();
        const RationalVector tau{1, 1};
        const RationalVector lambda{5, -1, -1, -2};

        // Degree 2 pins the combination down uniquely.
        const AffineSolution two_sol = affine_solver(boxes, two(), 2, FixedTau{tau});
        CHECK(two_sol.contains(lambda));
        CHECK(two_sol.free_dim() == 0);
        CHECK(two_sol.residuals.empty());

        // No combination reaches degree 3: the |j| = 3 eps-conditions fail.
        CHECK_THROWS_AS(affine_solver(boxes, two(), 3, FixedTau{tau}), Error);
        for (const auto& b : boxes) CHECK(reproduction_degree(b, two(), tau).degree < 2);

        const std::vector<LaurentPoly> b330{box_spline_symbol(3, 3, 0)};
        try {
            affine_solver(b330, two(), 3, FixedTau{tau});
            FAIL("expected Infeasible");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::Infeasible);
        }
        CHECK_THROWS_AS(affine_solver(boxes, two(), 1, FixedTau{{1}}), Error);
    }

    TEST_CASE("single compliant symbol") {
        const Builtin& approx = find_builtin("sqrt3-approx");
        const std::vector<LaurentPoly> one{approx.symbol};
        const AffineSolution sol = affine_solver(one, approx.dilation, 1, FixedTau{{0, 0}});
        CHECK(sol.basepoint == RationalVector{1});
        CHECK(sol.free_dim() == 0);
    }

    TEST_CASE("random members of solved families reach the degree") {
        std::mt19937 rng(53);
        std::vector<LaurentPoly> six;
        for (auto [h, i, j] : std::vector<std::array<int, 3>>{{2, 2, 1}, {2, 1, 2}, {1, 2, 2}, {3, 3, 0}, {3, 0, 3}, {0, 3, 3}})
            six.push_back(box_spline_symbol(h, i, j));
        const Builtin& approx = find_builtin("sqrt3-approx");
        const Builtin& interp = find_builtin("sqrt3-interp");
        const std::vector<LaurentPoly> sqrt3{approx.symbol, interp.symbol};

        struct Case {
            std::vector<LaurentPoly> syms;
            const DilationMatrix* m;
            int k;
            RationalVector tau;
        };
        const std::vector<Case> cases{
            {six, &two(), 1, {1, 1}},
            {six, &two(), 2, {1, 1}},
            {six, &two(), 1, {Rational(3, 2), Rational(3, 2)}},
            {sqrt3, &approx.dilation, 1, {0, 0}},
        };
        for (const auto& c : cases) {
            const AffineSolution sol = affine_solver(c.syms, *c.m, c.k, FixedTau{c.tau});
            REQUIRE(sol.residuals.empty());
            for (int sample = 0; sample < 5; ++sample) {
                const RationalVector lambda = sol.member(random_params(rng, sol.free_dim()));
                Rational total = 0;
                for (const auto& l : lambda) total += l;
                CHECK(total == 1);
                CHECK(sol.contains(lambda));
                const LaurentPoly a = affine_combine(c.syms, lambda);
                CHECK(reproduction_degree(a, *c.m, c.tau).degree >= c.k);
            }
        }
    }

    TEST_CASE("free tau residuals") {
        const auto boxes = four_boxes();
        const AffineSolution sol = affine_solver(boxes, two(), 2, FreeTau{});
        CHECK(sol.free_dim() == 3);
        CHECK_FALSE(sol.residuals.empty());

        // parameters of the known combination
        const RationalVector lambda{5, -1, -1, -2};
        REQUIRE(sol.contains(lambda));
        RationalVector params(sol.free_dim());
        for (std::size_t f = 0; f < params.size(); ++f) params[f] = lambda[sol.free_columns[f]];
        CHECK(sol.member(params) == lambda);
        for (const auto& r : sol.residuals) CHECK(evaluate(r.poly, params) == 0);
        CHECK(evaluate(sol.tau[0], params) == 1);
        CHECK(evaluate(sol.tau[1], params) == 1);

        // away from the residual zero set the degree drops
        RationalVector off = params;
        off[0] += 1;
        bool some_nonzero = false;
        for (const auto& r : sol.residuals) some_nonzero = some_nonzero || evaluate(r.poly, off) != 0;
        CHECK(some_nonzero);
        CHECK(reproduction_degree(affine_combine(boxes, sol.member(off)), two()).degree < 2);

        // k = 1 needs no residuals: every member reproduces linears with its own tau
        const AffineSolution lin = affine_solver(boxes, two(), 1, FreeTau{});
        CHECK(lin.residuals.empty());
        std::mt19937 rng(59);
        for (int sample = 0; sample < 5; ++sample) {
            const RationalVector p = random_params(rng, lin.free_dim());
            const LaurentPoly a = affine_combine(boxes, lin.member(p));
            const RationalVector tau{evaluate(lin.tau[0], p), evaluate(lin.tau[1], p)};
            CHECK(compute_tau(a, two()) == tau);
            CHECK(reproduction_degree(a, two()).degree >= 1);
        }
    }
}
