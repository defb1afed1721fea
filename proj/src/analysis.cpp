#include "subrepro/analysis.hpp"

#include <sstream>

#include "subrepro/error.hpp"

namespace subrepro {

std::string to_string(WitnessKind kind) {
    return kind == WitnessKind::ZeroCondition ? "zero-condition" : "reproduction";
}

std::string describe(const Witness& w) {
    std::ostringstream os;
    os << "D^" << to_string(w.j) << "a";
    if (w.epsilon_index == 0) {
        os << (w.j.order() == 0 && w.kind == WitnessKind::ZeroCondition ? "(1) - m" : "(1) - m*q_j(tau)");
    } else {
        os << "(eps_" << w.epsilon_index << ")";
    }
    const auto f = w.value.to_float();
    os << " = " << to_string(w.value) << " ~ (" << f.real() << "," << f.imag() << ")";
    return os.str();
}

SumRules sum_rules_check(const LaurentPoly& a, const DilationMatrix& m) {
    const CosetReps reps = primal_cosets(m);
    SumRules out;
    out.holds = true;
    for (const auto& sub : submasks(a, reps, m)) {
        out.coset_sums.push_back(sub.value_at_one());
        if (out.coset_sums.back() != 1) out.holds = false;
    }
    return out;
}

namespace {

Rational dilation_m(const DilationMatrix& m) { return Rational(static_cast<long>(m.m())); }

// Zero tests of every |j| == order derivative on Xi' (points[1..]).
void collect_epsilon_failures(const LaurentPoly& a, const DualCosets& dual, int order, WitnessKind kind,
                              std::vector<Witness>& out) {
    for (const auto& j : multi_indices_of_order(a.dim(), order)) {
        for (std::size_t e = 1; e < dual.points.size(); ++e) {
            CycloValue v = eval_deriv_at(a, j, dual.points[e]);
            if (!v.is_zero()) out.push_back(Witness{kind, j, e, std::move(v)});
        }
    }
}

void check_dimension(const LaurentPoly& a, const DilationMatrix& m) {
    if (a.dim() != m.dim()) throw Error(ErrorCode::DimensionMismatch, "symbol and dilation dimensions differ");
}

}  // namespace

ZeroConditionResult zero_condition_order(const LaurentPoly& a, const DilationMatrix& m, int cap) {
    check_dimension(a, m);
    ZeroConditionResult out;
    const Rational at_one = a.value_at_one();
    if (at_one != dilation_m(m)) {
        out.witnesses.push_back(Witness{WitnessKind::ZeroCondition, MultiIndex::zero(a.dim()), 0,
                                        CycloValue(at_one - dilation_m(m))});
        return out;
    }
    const DualCosets dual = dual_coset_points(m);
    for (int n = 0; n < cap; ++n) {
        collect_epsilon_failures(a, dual, n, WitnessKind::ZeroCondition, out.witnesses);
        if (!out.witnesses.empty()) {
            out.order = n;
            return out;
        }
    }
    out.order = cap;
    out.capped = true;
    return out;
}

RationalVector compute_tau(const LaurentPoly& a, const DilationMatrix& m) {
    check_dimension(a, m);
    const Rational at_one = a.value_at_one();
    if (at_one != dilation_m(m)) {
        throw Error(ErrorCode::NotNormalized, "a(1) = " + to_string(at_one) + " but m = " + std::to_string(m.m()));
    }
    RationalVector tau(a.dim());
    for (std::size_t l = 0; l < a.dim(); ++l) tau[l] = eval_deriv_at(a, MultiIndex::unit(a.dim(), l), One{}) / dilation_m(m);
    return tau;
}

ReproductionResult reproduction_degree(const LaurentPoly& a, const DilationMatrix& m,
                                       const std::optional<RationalVector>& tau, int cap) {
    check_dimension(a, m);
    ReproductionResult out;
    out.tau = tau ? *tau : compute_tau(a, m);
    if (out.tau.size() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "tau has the wrong length");
    if (a.value_at_one() != dilation_m(m)) {
        throw Error(ErrorCode::NotNormalized, "a(1) = " + to_string(a.value_at_one()) + " but m = " + std::to_string(m.m()));
    }
    const DualCosets dual = dual_coset_points(m);
    for (int n = 0; n <= cap; ++n) {
        for (const auto& j : multi_indices_of_order(a.dim(), n)) {
            const Rational defect = eval_deriv_at(a, j, One{}) - dilation_m(m) * falling_factorial_q(j, out.tau);
            if (defect != 0) out.witnesses.push_back(Witness{WitnessKind::Reproduction, j, 0, CycloValue(defect)});
        }
        collect_epsilon_failures(a, dual, n, WitnessKind::Reproduction, out.witnesses);
        if (!out.witnesses.empty()) {
            out.degree = n - 1;
            return out;
        }
    }
    out.degree = cap;
    out.capped = true;
    return out;
}

MomentCheck moment_condition_check(const LaurentPoly& a, const DilationMatrix& m, const RationalVector& tau, int k,
                                   unsigned r, const SupportBox& window) {
    check_dimension(a, m);
    const std::size_t s = a.dim();
    if (tau.size() != s || window.lo.size() != s || window.hi.size() != s) {
        throw Error(ErrorCode::DimensionMismatch, "moment check arguments");
    }
    const RatMatrix inv_r = m.inverse_power(r);
    const RatMatrix inv_r1 = inv_r * m.inverse();

    std::vector<MultiIndex> js;
    for (int n = 0; n <= k; ++n)
        for (auto& j : multi_indices_of_order(s, n)) js.push_back(std::move(j));

    auto power = [](const RationalVector& v, const MultiIndex& j) {
        Rational p = 1;
        for (std::size_t i = 0; i < v.size(); ++i)
            for (int e = 0; e < j[i]; ++e) p *= v[i];
        return p;
    };

    MomentCheck out;
    Index alpha = window.lo;
    for (std::size_t i = 0; i < s; ++i)
        if (window.lo[i] > window.hi[i]) return out;
    while (true) {
        // Terms a_gamma (M^{-r} beta) with gamma = alpha - M beta.
        std::vector<std::pair<Rational, RationalVector>> terms;
        for (const auto& [gamma, c] : a.terms()) {
            Index diff(s);
            for (std::size_t i = 0; i < s; ++i) diff[i] = alpha[i] - gamma[i];
            if (auto beta = m.lattice_preimage(diff)) terms.emplace_back(c, inv_r.apply(*beta));
        }
        RationalVector shifted(s);
        for (std::size_t i = 0; i < s; ++i) shifted[i] = Rational(static_cast<long>(alpha[i])) - tau[i];
        const RationalVector target = inv_r1.apply(shifted);

        for (const auto& j : js) {
            Rational lhs = 0;
            for (const auto& [c, v] : terms) lhs += c * power(v, j);
            const Rational rhs = power(target, j);
            if (lhs != rhs) {
                out.holds = false;
                out.failure = MomentFailure{alpha, j, lhs, rhs};
                return out;
            }
        }

        std::size_t d = 0;
        while (d < s && alpha[d] == window.hi[d]) alpha[d] = window.lo[d], ++d;
        if (d == s) break;
        ++alpha[d];
    }
    return out;
}

namespace {

ReportWitness to_report(const Witness& w) {
    return ReportWitness{to_string(w.kind), w.j.values(), w.epsilon_index, describe(w)};
}

}  // namespace

ReproductionReport analyze(const LaurentPoly& a, const DilationMatrix& m, const AnalysisOptions& options,
                           const std::string& name) {
    check_dimension(a, m);
    ReproductionReport rep;
    rep.name = name;
    rep.dilation = m.entries().row_major();
    rep.m = m.m();
    rep.E = primal_cosets(m).reps;
    const DualCosets dual = dual_coset_points(m);
    for (const auto& p : dual.points) rep.Xi.push_back(p.exponents);
    rep.expanding_exact = m.expanding().exact;

    const ZeroConditionResult zc = zero_condition_order(a, m, options.cap);
    rep.kZ = zc.order;
    rep.kZ_capped = zc.capped;
    rep.claimed_approx_order = zc.order;
    for (const auto& w : zc.witnesses) rep.witnesses.push_back(to_report(w));

    const Rational at_one = a.value_at_one();
    if (at_one == dilation_m(m)) {
        const ReproductionResult rr = reproduction_degree(a, m, options.tau, options.cap);
        rep.tau = rr.tau;
        rep.tau_from_gradient = !options.tau.has_value();
        rep.tau_meaningful = zc.order >= 2;
        rep.kR = rr.degree;
        rep.kR_capped = rr.capped;
        for (const auto& w : rr.witnesses) rep.witnesses.push_back(to_report(w));
        if (!rep.tau_meaningful) rep.notes.push_back("Condition Z_2 fails: tau is not reproduction-meaningful");
    } else {
        rep.notes.push_back("a(1) = " + to_string(at_one) + " differs from m = " + std::to_string(rep.m) +
                            ": symbol not normalized, tau and kR undefined");
    }
    if (zc.capped) rep.notes.push_back("zero-condition search reached cap " + std::to_string(options.cap));
    if (rep.kR_capped) rep.notes.push_back("reproduction search reached cap " + std::to_string(options.cap));
    if (!rep.expanding_exact) rep.notes.push_back("expanding check is numeric (tolerance 1e-9)");
    if (!m.expanding().expanding) rep.notes.push_back("dilation matrix is not expanding (forced)");
    rep.notes.push_back("claimedApproxOrder equals kZ and is reported as a claim, not verified");
    rep.notes.push_back("convergence assumed, not verified");
    return rep;
}

}  // namespace subrepro
