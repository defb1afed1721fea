#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "subrepro/cyclotomic.hpp"
#include "subrepro/lattice.hpp"
#include "subrepro/rational.hpp"

namespace subrepro {

/// Derivative order j in N_0^s.
class MultiIndex {
   public:
    MultiIndex() = default;
    /// Throws DimensionMismatch on a negative entry.
    explicit MultiIndex(std::vector<int> j);
    static MultiIndex zero(std::size_t s) { return MultiIndex(std::vector<int>(s, 0)); }
    /// The l-th unit vector u_l.
    static MultiIndex unit(std::size_t s, std::size_t l);

    std::size_t dim() const noexcept { return j_.size(); }
    int operator[](std::size_t i) const { return j_[i]; }
    const std::vector<int>& values() const noexcept { return j_; }
    int order() const noexcept;

    friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
    friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;

   private:
    std::vector<int> j_;
};

std::string to_string(const MultiIndex& j);

/// All j in N_0^s with |j| == order, lexicographically descending
/// ((n,0,..) first).
std::vector<MultiIndex> multi_indices_of_order(std::size_t s, int order);

struct SupportBox {
    Index lo;
    Index hi;
};

/// Finitely supported map Z^s -> Q, read either as a mask {a_alpha} or as
/// the symbol a(z) = sum a_alpha z^alpha. Zero coefficients are never stored.
class LaurentPoly {
   public:
    using Terms = std::map<Index, Rational>;

    LaurentPoly() = default;
    explicit LaurentPoly(std::size_t s) : s_(s) {}

    static LaurentPoly constant(std::size_t s, const Rational& c);
    static LaurentPoly monomial(const Index& alpha, const Rational& c = 1);

    std::size_t dim() const noexcept { return s_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }

    Rational coeff(const Index& alpha) const;
    void add_term(const Index& alpha, const Rational& c);

    /// Componentwise min/max over the support; the zero polynomial has an
    /// empty box (lo > hi).
    SupportBox support_box() const;

    /// Sum of the coefficients, i.e. a(1).
    Rational value_at_one() const;

    LaurentPoly& operator+=(const LaurentPoly& rhs);
    LaurentPoly& operator-=(const LaurentPoly& rhs);
    LaurentPoly& operator*=(const Rational& c);

    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(LaurentPoly a, const Rational& c) { return a *= c; }
    friend LaurentPoly operator*(const Rational& c, LaurentPoly a) { return a *= c; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
    friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

   private:
    std::size_t s_ = 0;
    Terms terms_;
};

/// e.g. "1/2 + z1*z2^-1 - 3*z2^2".
std::string to_string(const LaurentPoly& a, const std::string& var = "z");

LaurentPoly pow(const LaurentPoly& a, unsigned k);

/// sum lambda_i a_i; throws AffineWeightsInvalid unless sum lambda == 1.
LaurentPoly affine_combine(std::span<const LaurentPoly> symbols, std::span<const Rational> lambdas);

/// z^alpha -> z^{B alpha}. Throws SingularMatrix for det B = 0.
LaurentPoly substitute_monomial(const LaurentPoly& a, const IntMatrix& b);

/// Restriction of a to alpha == e (mod M Z^s), exponents kept in place.
LaurentPoly submask_symbol(const LaurentPoly& a, const Index& e, const DilationMatrix& m);

/// One submask per representative; throws NotARepresentative if two of the
/// given representatives are congruent.
std::vector<LaurentPoly> submasks(const LaurentPoly& a, const CosetReps& reps, const DilationMatrix& m);

/// D^j term by term: D^j z^alpha = q_j(alpha) z^{alpha - j}.
LaurentPoly formal_derivative(const LaurentPoly& a, const MultiIndex& j);

/// q_j(x) = prod_i prod_{l < j_i} (x_i - l); q_0 = 1.
Rational falling_factorial_q(const MultiIndex& j, const RationalVector& x);
Rational falling_factorial_q(const MultiIndex& j, const Index& x);

/// The point (1, ..., 1).
struct One {};
using EvalPoint = std::variant<One, UnityPoint>;
using EvalValue = std::variant<Rational, CycloValue>;

/// Route (i): differentiate, then evaluate.
Rational eval_via_derivative(const LaurentPoly& a, const MultiIndex& j, One);
CycloValue eval_via_derivative(const LaurentPoly& a, const MultiIndex& j, const UnityPoint& p);
/// Route (ii): sum_alpha a_alpha q_j(alpha) p^{alpha - j} directly.
Rational eval_direct_sum(const LaurentPoly& a, const MultiIndex& j, One);
CycloValue eval_direct_sum(const LaurentPoly& a, const MultiIndex& j, const UnityPoint& p);

/// (D^j a)(p). Both routes are always computed; a disagreement throws
/// SelfCheckFailed.
Rational eval_deriv_at(const LaurentPoly& a, const MultiIndex& j, One);
CycloValue eval_deriv_at(const LaurentPoly& a, const MultiIndex& j, const UnityPoint& p);
EvalValue eval_deriv_at(const LaurentPoly& a, const MultiIndex& j, const EvalPoint& p);

}  // namespace subrepro
