#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "subrepro/lattice.hpp"
#include "subrepro/symbol.hpp"

namespace subrepro {

/// 4 ((1+z1)/2)^h ((1+z2)/2)^i ((1+z1 z2)/2)^j, refinable under M = 2I.
LaurentPoly box_spline_symbol(int h, int i, int j);

/// sum_{e in E} z^e over the canonical primal representatives.
LaurentPoly tile_symbol(const DilationMatrix& m);

struct Builtin {
    std::string name;
    std::string description;
    LaurentPoly symbol;
    DilationMatrix dilation;
    /// Degree of reproduction claimed in the literature for this symbol, if any.
    std::optional<int> claimed_reproduction_degree;
    std::vector<std::string> notes;
};

/// Registry in a fixed order.
const std::vector<Builtin>& builtin_symbols();

/// Throws UnknownName.
const Builtin& find_builtin(std::string_view name);

struct FixedTau {
    RationalVector tau;
};
struct FreeTau {};
using TauMode = std::variant<FixedTau, FreeTau>;

/// A condition at z = 1 that is nonlinear in the weights, expressed in the
/// family's free parameters t1..tF.
struct Residual {
    MultiIndex j;
    LaurentPoly poly;
};

/// lambda(t) = basepoint + sum_f t_f basis[f].
struct AffineSolution {
    RationalVector basepoint;
    std::vector<RationalVector> basis;
    /// Weight index that each free parameter sets directly.
    std::vector<std::size_t> free_columns;
    /// tau(t), one affine polynomial per coordinate.
    std::vector<LaurentPoly> tau;
    /// Non-vanishing residuals; empty when every member satisfies all conditions.
    std::vector<Residual> residuals;

    std::size_t free_dim() const noexcept { return basis.size(); }
    RationalVector member(const RationalVector& params) const;
    bool contains(const RationalVector& lambda) const;
};

/// Weights lambda with sum lambda = 1 such that sum lambda_i a_i meets the
/// reproduction conditions for all |j| <= k. Throws Infeasible or
/// DimensionMismatch.
AffineSolution affine_solver(std::span<const LaurentPoly> symbols, const DilationMatrix& m, int k, const TauMode& mode);

}  // namespace subrepro
