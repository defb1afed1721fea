#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "subrepro/cyclotomic.hpp"
#include "subrepro/lattice.hpp"
#include "subrepro/symbol.hpp"

namespace subrepro {

inline constexpr int kDefaultCap = 32;

enum class WitnessKind { ZeroCondition, Reproduction };

std::string to_string(WitnessKind kind);

/// A condition that fails at the first failing derivative order.
struct Witness {
    WitnessKind kind = WitnessKind::ZeroCondition;
    MultiIndex j;
    /// Index into the dual point list; 0 is the point 1.
    std::size_t epsilon_index = 0;
    /// (D^j a)(eps) for eps != 1; at the point 1 the defect
    /// (D^j a)(1) - m q_j(tau) (or a(1) - m for the zero condition).
    CycloValue value;
};

std::string describe(const Witness& w);

struct SumRules {
    bool holds = false;
    /// One sum per primal representative, in primal_cosets order.
    std::vector<Rational> coset_sums;
};

/// Every submask sums to exactly 1.
SumRules sum_rules_check(const LaurentPoly& a, const DilationMatrix& m);

struct ZeroConditionResult {
    /// Largest k <= cap with Condition Z_k.
    int order = 0;
    bool capped = false;
    /// Every failing (j, eps) of the first failing derivative order.
    std::vector<Witness> witnesses;
};

ZeroConditionResult zero_condition_order(const LaurentPoly& a, const DilationMatrix& m, int cap = kDefaultCap);

/// tau = m^{-1} grad a(1). Throws NotNormalized when a(1) != m.
RationalVector compute_tau(const LaurentPoly& a, const DilationMatrix& m);

struct ReproductionResult {
    /// Largest k <= cap such that (D^j a)(1) = m q_j(tau) and
    /// (D^j a)(eps) = 0 on Xi' for all |j| <= k; -1 if k = 0 already fails.
    int degree = -1;
    RationalVector tau;
    bool capped = false;
    std::vector<Witness> witnesses;
};

/// Throws NotNormalized when a(1) != m, DimensionMismatch for a wrong-sized tau.
ReproductionResult reproduction_degree(const LaurentPoly& a, const DilationMatrix& m,
                                       const std::optional<RationalVector>& tau = std::nullopt, int cap = kDefaultCap);

struct MomentFailure {
    Index alpha;
    MultiIndex j;
    Rational lhs;
    Rational rhs;
};

struct MomentCheck {
    bool holds = true;
    std::optional<MomentFailure> failure;
};

/// Checks sum_beta a_{alpha - M beta} (M^{-r} beta)^j == (M^{-(r+1)}(alpha - tau))^j
/// for every alpha in `window` (inclusive box) and |j| <= k.
MomentCheck moment_condition_check(const LaurentPoly& a, const DilationMatrix& m, const RationalVector& tau, int k,
                                   unsigned r, const SupportBox& window);

/// Plain-data analysis summary; this is what the CLI serializes.
struct ReportWitness {
    std::string kind;
    std::vector<int> j;
    std::size_t epsilon_index = 0;
    std::string value_description;

    friend bool operator==(const ReportWitness&, const ReportWitness&) = default;
};

struct ReproductionReport {
    std::string name;
    std::vector<std::int64_t> dilation;  // row-major
    std::int64_t m = 0;
    std::vector<Index> E;
    /// Exponent vectors of Xi, the point 1 first.
    std::vector<RationalVector> Xi;
    int kZ = 0;
    bool kZ_capped = false;
    std::optional<RationalVector> tau;
    /// False when the caller supplied tau.
    bool tau_from_gradient = false;
    /// Condition Z_2 holds, so tau parametrizes linear reproduction.
    bool tau_meaningful = false;
    std::optional<int> kR;
    bool kR_capped = false;
    std::vector<ReportWitness> witnesses;
    /// Reported as k_Z; never verified here.
    int claimed_approx_order = 0;
    /// Convergence is assumed, not checked.
    bool assumed_convergent = true;
    bool expanding_exact = true;
    std::vector<std::string> notes;

    friend bool operator==(const ReproductionReport&, const ReproductionReport&) = default;
};

struct AnalysisOptions {
    int cap = kDefaultCap;
    std::optional<RationalVector> tau;
};

ReproductionReport analyze(const LaurentPoly& a, const DilationMatrix& m, const AnalysisOptions& options = {},
                           const std::string& name = {});

}  // namespace subrepro
