#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "subrepro/lattice.hpp"
#include "subrepro/symbol.hpp"

namespace subrepro {

/// Level-r data d^{(r)} on a finite index set. Every stored value is exact
/// with respect to the infinite computation: indices whose value would
/// depend on data outside the window are dropped, never stored.
template <class T>
struct GridData {
    std::size_t dim = 0;
    std::map<Index, T> values;
    /// Data is known to vanish outside `values` (finitely supported input),
    /// so nothing is lost to truncation.
    bool zero_outside = false;
};

using ExactGrid = GridData<Rational>;
using NumericGrid = GridData<double>;

/// d^{(r+1)}_alpha = sum_beta a_{alpha - M beta} d^{(r)}_beta, restricted to
/// indices whose every contributing beta is known.
template <class T>
GridData<T> subdivide_step(const LaurentPoly& a, const DilationMatrix& m, const GridData<T>& d);

extern template GridData<Rational> subdivide_step(const LaurentPoly&, const DilationMatrix&, const GridData<Rational>&);
extern template GridData<double> subdivide_step(const LaurentPoly&, const DilationMatrix&, const GridData<double>&);

/// Parameter values t_alpha^{(r)} = t_0^{(r)} + M^{-r} alpha with
/// t_0^{(r)} = t_0^{(r-1)} - M^{-r} tau and t_0^{(0)} = 0.
class ParamState {
   public:
    ParamState(const DilationMatrix& m, RationalVector tau);

    unsigned level() const noexcept { return r_; }
    const RationalVector& t0() const noexcept { return t0_; }
    const RatMatrix& inverse_power() const noexcept { return inv_r_; }

    void advance();
    RationalVector point(const Index& alpha) const;

   private:
    RatMatrix inv_m_;
    RationalVector tau_;
    unsigned r_ = 0;
    RationalVector t0_;
    RatMatrix inv_r_;
};

/// Integer points of an inclusive box.
std::vector<Index> box_points(const SupportBox& box);
SupportBox symmetric_box(std::size_t s, std::int64_t radius);

std::map<Index, RationalVector> parameter_grid(const DilationMatrix& m, const RationalVector& tau, unsigned r,
                                               const SupportBox& box);

/// A polynomial pi in x_1..x_s, stored as a LaurentPoly with non-negative
/// exponents.
class PolySpec {
   public:
    /// Throws DimensionMismatch for a negative exponent.
    explicit PolySpec(LaurentPoly p);
    static PolySpec monomial(const Index& exponent, const Rational& c = 1);

    std::size_t dim() const noexcept { return poly_.dim(); }
    const LaurentPoly& poly() const noexcept { return poly_; }
    /// -1 for the zero polynomial.
    int total_degree() const;

    Rational operator()(const RationalVector& x) const;
    Rational operator()(const Index& x) const;

   private:
    LaurentPoly poly_;
};

ExactGrid sample_polynomial(const PolySpec& pi, const SupportBox& box);

struct OracleMismatch {
    unsigned level = 0;
    Index alpha;
    Rational expected;  // pi(t_alpha^{(r)})
    Rational got;       // d^{(r)}_alpha
};

struct OracleResult {
    bool pass = true;
    std::optional<OracleMismatch> mismatch;
    /// Number of compared indices per level, level 0 first.
    std::vector<std::size_t> compared;
};

/// Samples d^{(0)}_alpha = pi(alpha) on `box`, runs `steps` exact steps and
/// compares d^{(r)}_alpha with pi(t_alpha^{(r)}) everywhere it is known.
/// Throws WindowTooSmall if some level has no valid index left.
OracleResult reproduction_oracle(const LaurentPoly& a, const DilationMatrix& m, const RationalVector& tau,
                                 const PolySpec& pi, unsigned steps, const SupportBox& box);

/// CSV with header "level,t1,..,ts,value"; rows by level, then index order.
void write_refinement_csv(std::ostream& out, const LaurentPoly& a, const DilationMatrix& m, const RationalVector& tau,
                          const NumericGrid& d0, unsigned steps);

/// Throws IoError when the file cannot be written.
void export_refinement(const LaurentPoly& a, const DilationMatrix& m, const RationalVector& tau, const NumericGrid& d0,
                       unsigned steps, const std::filesystem::path& path);

}  // namespace subrepro
