#include <doctest.h>

#include <algorithm>
#include <array>

#include "oracles.hpp"
#include "subrepro/analysis.hpp"
#include "subrepro/constructors.hpp"
#include "subrepro/error.hpp"

using namespace subrepro;

namespace {

const Builtin& get(const char* name) { return find_builtin(name); }

bool has_witness(const std::vector<Witness>& ws, const MultiIndex& j, std::size_t eps, const Rational& value) {
    return std::any_of(ws.begin(), ws.end(), [&](const Witness& w) {
        return w.j == j && w.epsilon_index == eps && w.value.equals(CycloValue(value));
    });
}

std::size_t point_index(const DilationMatrix& m, const RationalVector& exponents) {
    const auto pts = dual_coset_points(m).points;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (pts[i].exponents == exponents) return i;
    FAIL("point not found");
    return 0;
}

SupportBox padded_support(const LaurentPoly& a) {
    SupportBox box = a.support_box();
    std::int64_t radius = 0;
    for (std::size_t i = 0; i < box.lo.size(); ++i) radius = std::max({radius, std::abs(box.lo[i]), std::abs(box.hi[i])});
    for (std::size_t i = 0; i < box.lo.size(); ++i) {
        box.lo[i] -= radius;
        box.hi[i] += radius;
    }
    return box;
}

}  // namespace

TEST_SUITE("analysis") {
    TEST_CASE("sum rules") {
        const Builtin& approx = get("sqrt3-approx");
        const SumRules sr = sum_rules_check(approx.symbol, approx.dilation);
        CHECK(sr.holds);
        CHECK(sr.coset_sums == std::vector<Rational>{1, 1, 1});

        const SumRules bad = sum_rules_check(LaurentPoly::constant(2, 3), approx.dilation);
        CHECK_FALSE(bad.holds);
        CHECK(bad.coset_sums == std::vector<Rational>{3, 0, 0});

        const Builtin& conv = get("tile-2120-conv2");
        CHECK(sum_rules_check(conv.symbol, conv.dilation).holds);

        // sum rules hold exactly when Condition Z_1 does
        for (const auto& b : builtin_symbols()) {
            CHECK(sum_rules_check(b.symbol, b.dilation).holds == (zero_condition_order(b.symbol, b.dilation).order >= 1));
            const LaurentPoly shifted = b.symbol + LaurentPoly::monomial(Index(2, 0), 1) - LaurentPoly::monomial({1, 0}, 1);
            CHECK(sum_rules_check(shifted, b.dilation).holds == (zero_condition_order(shifted, b.dilation).order >= 1));
        }
    }

    TEST_CASE("zero condition order") {
        const Builtin& approx = get("sqrt3-approx");
        CHECK(zero_condition_order(approx.symbol, approx.dilation).order == 2);

        const Builtin& conv = get("tile-2120-conv2");
        const auto z = zero_condition_order(conv.symbol, conv.dilation);
        CHECK(z.order == 2);
        CHECK_FALSE(z.capped);
        const std::size_t eps = point_index(conv.dilation, {Rational(0), Rational(1, 2)});
        CHECK(has_witness(z.witnesses, MultiIndex({0, 2}), eps, 2));

        const DilationMatrix two({{2, 0}, {0, 2}});
        for (auto [h, i, j] : {std::array{2, 2, 1}, {2, 1, 2}, {1, 2, 2}, {3, 3, 0}, {3, 0, 3}, {0, 3, 3}})
            CHECK(zero_condition_order(box_spline_symbol(h, i, j), two).order == 3);

        // a(1) != m
        const auto scaled = zero_condition_order(approx.symbol * Rational(2), approx.dilation);
        CHECK(scaled.order == 0);
        REQUIRE(scaled.witnesses.size() == 1);
        CHECK(scaled.witnesses[0].epsilon_index == 0);
        CHECK(scaled.witnesses[0].value.equals(CycloValue(Rational(3))));

        // every witness is a genuine nonzero value of order k_Z
        for (const auto& b : builtin_symbols()) {
            const auto r = zero_condition_order(b.symbol, b.dilation);
            CHECK_FALSE(r.witnesses.empty());
            for (const auto& w : r.witnesses) {
                CHECK_FALSE(w.value.is_zero());
                CHECK(w.j.order() == r.order);
            }
        }
    }

    TEST_CASE("zero condition order against a float brute force") {
        // Largest k with |(D^j a)(eps)| tiny for all |j| < k, computed in doubles.
        for (const auto& b : builtin_symbols()) {
            const auto pts = dual_coset_points(b.dilation).points;
            int k = 0;
            for (int n = 0; n < 12; ++n) {
                bool ok = true;
                for (const auto& j : multi_indices_of_order(2, n))
                    for (std::size_t e = 1; e < pts.size(); ++e) {
                        std::vector<double> ex;
                        for (const auto& q : pts[e].exponents) ex.push_back(q.get_d());
                        ok = ok && std::abs(oracle::deriv_at(b.symbol, j.values(), ex)) < 1e-7;
                    }
                if (!ok) break;
                k = n + 1;
            }
            CHECK_MESSAGE(zero_condition_order(b.symbol, b.dilation).order == k, b.name);
        }
    }

    TEST_CASE("tau") {
        CHECK(compute_tau(get("sqrt3-approx").symbol, get("sqrt3-approx").dilation) == RationalVector{0, 0});
        CHECK(compute_tau(get("tile-2120-conv2").symbol, get("tile-2120-conv2").dilation) == RationalVector{2, 1});
        const DilationMatrix two({{2, 0}, {0, 2}});
        CHECK(compute_tau(box_spline_symbol(2, 2, 1), two) == RationalVector{Rational(3, 2), Rational(3, 2)});
        CHECK(compute_tau(get("box-combo").symbol, two) == RationalVector{1, 1});
        CHECK_THROWS_AS(compute_tau(box_spline_symbol(2, 2, 1) * Rational(1, 2), two), Error);
    }

    TEST_CASE("reproduction degree") {
        const Builtin& approx = get("sqrt3-approx");
        auto r = reproduction_degree(approx.symbol, approx.dilation);
        CHECK(r.degree == 1);
        CHECK(r.tau == RationalVector{0, 0});

        const Builtin& conv = get("tile-2120-conv2");
        r = reproduction_degree(conv.symbol, conv.dilation);
        CHECK(r.degree == 1);
        CHECK(r.tau == RationalVector{2, 1});

        const Builtin& interp = get("sqrt3-interp");
        r = reproduction_degree(interp.symbol, interp.dilation, RationalVector{0, 0});
        CHECK(r.degree >= 2);
        CHECK(r.degree == 2);  // the ε-conditions at |j| = 3 fail

        // Independently computed: the combination reaches degree 2 but not 3
        // (D^(3,0) a(-1,1) = 6).
        const Builtin& combo = get("box-combo");
        r = reproduction_degree(combo.symbol, combo.dilation);
        CHECK(r.degree == 2);
        CHECK(r.tau == RationalVector{1, 1});
        const std::size_t eps = point_index(combo.dilation, {Rational(1, 2), Rational(0)});
        CHECK(has_witness(r.witnesses, MultiIndex({3, 0}), eps, 6));

        // a wrong tau fails already at |j| = 1
        r = reproduction_degree(approx.symbol, approx.dilation, RationalVector{1, 0});
        CHECK(r.degree == 0);

        // constant reproduction fails: degree -1
        LaurentPoly bad = approx.symbol;
        bad.add_term({1, 0}, 1);
        bad.add_term({0, 0}, -1);
        CHECK(reproduction_degree(bad, approx.dilation, RationalVector{0, 0}).degree == -1);

        CHECK_THROWS_AS(reproduction_degree(approx.symbol * Rational(3), approx.dilation), Error);
        CHECK_THROWS_AS(reproduction_degree(approx.symbol, approx.dilation, RationalVector{0}), Error);
    }

    TEST_CASE("k_R is bounded by k_Z - 1") {
        for (const auto& b : builtin_symbols()) {
            const int kz = zero_condition_order(b.symbol, b.dilation).order;
            const int kr = reproduction_degree(b.symbol, b.dilation).degree;
            CHECK(kr <= kz - 1);
        }
    }

    TEST_CASE("tau is unique") {
        const std::vector<Rational> deltas{1, -1, Rational(1, 2), Rational(-7, 3)};
        for (const auto& b : builtin_symbols()) {
            if (zero_condition_order(b.symbol, b.dilation).order < 2) continue;
            const RationalVector tau = compute_tau(b.symbol, b.dilation);
            CHECK(reproduction_degree(b.symbol, b.dilation, tau).degree >= 1);
            for (std::size_t l = 0; l < tau.size(); ++l)
                for (const auto& d : deltas) {
                    RationalVector t = tau;
                    t[l] += d;
                    CHECK(reproduction_degree(b.symbol, b.dilation, t).degree < 1);
                }
        }
    }

    TEST_CASE("moment condition examples") {
        const Builtin& approx = get("sqrt3-approx");
        const SupportBox window{{-3, -3}, {3, 3}};
        for (unsigned r = 0; r <= 2; ++r) {
            CHECK(moment_condition_check(approx.symbol, approx.dilation, {0, 0}, 0, r, window).holds);
            CHECK(moment_condition_check(approx.symbol, approx.dilation, {0, 0}, 1, r, window).holds);
            CHECK_FALSE(moment_condition_check(approx.symbol, approx.dilation, {0, 0}, 2, r, window).holds);
        }
        const MomentCheck bad = moment_condition_check(approx.symbol, approx.dilation, {1, 0}, 1, 0, window);
        CHECK_FALSE(bad.holds);
        REQUIRE(bad.failure);
        CHECK(bad.failure->lhs != bad.failure->rhs);
        CHECK(bad.failure->j.order() == 1);
    }

    TEST_CASE("moment condition agrees with the derivative conditions") {
        const DilationMatrix two({{2, 0}, {0, 2}});
        std::vector<std::pair<LaurentPoly, DilationMatrix>> masks;
        for (const auto& b : builtin_symbols()) masks.emplace_back(b.symbol, b.dilation);
        masks.emplace_back(box_spline_symbol(1, 1, 1), two);
        masks.emplace_back(box_spline_symbol(2, 2, 2), two);
        for (const auto& [a, m] : masks) {
            const RationalVector tau = compute_tau(a, m);
            const int kr = reproduction_degree(a, m, tau).degree;
            const SupportBox window = padded_support(a);
            for (int k = 0; k <= 3; ++k) {
                bool holds = true;
                for (unsigned r = 0; r <= 2; ++r) holds = holds && moment_condition_check(a, m, tau, k, r, window).holds;
                CHECK_MESSAGE(holds == (k <= kr), to_string(a));
            }
        }
    }

    TEST_CASE("report") {
        const Builtin& conv = get("tile-2120-conv2");
        const ReproductionReport rep = analyze(conv.symbol, conv.dilation, {}, conv.name);
        CHECK(rep.m == 4);
        CHECK(rep.E == std::vector<Index>{{0, 0}, {1, 0}, {1, 1}, {2, 1}});
        CHECK(rep.Xi.size() == 4);
        CHECK(rep.kZ == 2);
        CHECK(rep.tau == RationalVector{2, 1});
        CHECK(rep.tau_from_gradient);
        CHECK(rep.tau_meaningful);
        CHECK(rep.kR == 1);
        CHECK(rep.claimed_approx_order == 2);
        CHECK(rep.assumed_convergent);
        CHECK(rep.expanding_exact);

        const Builtin& approx = get("sqrt3-approx");
        const ReproductionReport scaled = analyze(approx.symbol * Rational(2), approx.dilation);
        CHECK(scaled.kZ == 0);
        CHECK_FALSE(scaled.tau.has_value());
        CHECK_FALSE(scaled.kR.has_value());
        CHECK_FALSE(scaled.notes.empty());

        AnalysisOptions opts;
        opts.tau = RationalVector{1, 0};
        const ReproductionReport forced = analyze(approx.symbol, approx.dilation, opts);
        CHECK_FALSE(forced.tau_from_gradient);
        CHECK(forced.kR == 0);
    }
}
