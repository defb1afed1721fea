#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "subrepro/rational.hpp"

namespace subrepro {

/// A point of the integer lattice Z^s.
using Index = std::vector<std::int64_t>;

/// Square integer matrix, row-major.
class IntMatrix {
   public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t n) : n_(n), a_(n * n, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);
    /// Throws DimensionMismatch unless `row_major.size() == n * n`.
    IntMatrix(std::size_t n, std::vector<std::int64_t> row_major);

    static IntMatrix identity(std::size_t n);

    std::size_t dim() const noexcept { return n_; }
    std::int64_t& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    std::int64_t operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
    const std::vector<std::int64_t>& row_major() const noexcept { return a_; }

    IntMatrix transpose() const;
    Index apply(const Index& v) const;

    friend IntMatrix operator*(const IntMatrix& lhs, const IntMatrix& rhs);
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

   private:
    std::size_t n_ = 0;
    std::vector<std::int64_t> a_;
};

std::string to_string(const IntMatrix& m);
std::string to_string(const Index& v);

/// Square rational matrix, row-major.
class RatMatrix {
   public:
    RatMatrix() = default;
    explicit RatMatrix(std::size_t n) : n_(n), a_(n * n) {}
    explicit RatMatrix(const IntMatrix& m);

    static RatMatrix identity(std::size_t n);

    std::size_t dim() const noexcept { return n_; }
    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    RatMatrix transpose() const;
    RationalVector apply(const RationalVector& v) const;
    RationalVector apply(const Index& v) const;

    friend RatMatrix operator*(const RatMatrix& lhs, const RatMatrix& rhs);
    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

   private:
    std::size_t n_ = 0;
    std::vector<Rational> a_;
};

struct DetInverse {
    Integer det;
    RatMatrix inverse;
};

/// Fraction-free (Bareiss) determinant.
Integer determinant(const IntMatrix& m);

/// Exact determinant and rational inverse; throws SingularMatrix when det = 0.
DetInverse determinant_and_inverse(const IntMatrix& m);

/// U * A * V == D with U, V unimodular and D = diag(d_1, ..., d_s),
/// d_i >= 0 and d_i | d_{i+1}.
struct SmithForm {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;

    std::vector<std::int64_t> diagonal() const;
};

/// Throws SingularMatrix for det(A) = 0.
SmithForm smith_normal_form(const IntMatrix& a);

struct ExpandingCertificate {
    bool expanding = false;
    /// False when the verdict came from floating point eigenvalues (s >= 3).
    bool exact = true;
    /// Smallest eigenvalue modulus; only filled in by the numeric route.
    std::optional<double> min_modulus;
    std::string method;
};

/// Tolerance used by the numeric route: expanding iff min |lambda| > 1 + tol.
inline constexpr double kExpandingTolerance = 1e-9;

/// All eigenvalues of modulus strictly greater than one. Exact for s <= 2.
ExpandingCertificate is_expanding(const IntMatrix& m);

/// Integer expanding dilation matrix M with m = |det M| >= 2.
class DilationMatrix {
   public:
    /// Throws SingularMatrix, NotExpanding (unless `allow_non_expanding`),
    /// or NotExpanding for |det| < 2.
    explicit DilationMatrix(IntMatrix entries, bool allow_non_expanding = false);

    std::size_t dim() const noexcept { return entries_.dim(); }
    const IntMatrix& entries() const noexcept { return entries_; }
    std::int64_t det() const noexcept { return det_; }
    std::int64_t m() const noexcept { return det_ < 0 ? -det_ : det_; }
    const RatMatrix& inverse() const noexcept { return inverse_; }
    const ExpandingCertificate& expanding() const noexcept { return expanding_; }

    /// beta with M beta == v, if v lies in M Z^s.
    std::optional<Index> lattice_preimage(const Index& v) const;
    bool congruent(const Index& a, const Index& b) const;

    /// alpha - M floor(M^{-1} alpha); the canonical representative of the
    /// class of alpha with M^{-1} e in [0,1)^s.
    Index reduce(const Index& alpha) const;

    /// Exact M^{-r}.
    RatMatrix inverse_power(unsigned r) const;

    DilationMatrix transpose() const;

    friend bool operator==(const DilationMatrix& a, const DilationMatrix& b) {
        return a.entries_ == b.entries_;
    }

   private:
    IntMatrix entries_;
    IntMatrix adjugate_;
    std::int64_t det_ = 0;
    RatMatrix inverse_;
    ExpandingCertificate expanding_;
};

enum class CosetKind { Primal, Dual };

struct CosetReps {
    CosetKind kind = CosetKind::Primal;
    /// m vectors, the zero vector first.
    std::vector<Index> reps;
};

/// A torus point whose coordinates are exp(2 pi i * exponent).
struct UnityPoint {
    /// Each in [0,1).
    RationalVector exponents;

    bool is_one() const;
    /// Least common multiple of the exponent denominators.
    std::int64_t order() const;

    friend bool operator==(const UnityPoint&, const UnityPoint&) = default;
};

std::string to_string(const UnityPoint& p);

struct DualCosets {
    CosetReps reps;
    /// points[i] corresponds to reps.reps[i]; points[0] is the point 1.
    std::vector<UnityPoint> points;
};

/// Canonical representatives of Z^s / M Z^s, enumerated through the Smith
/// form digit box and reduced into M [0,1)^s.
CosetReps primal_cosets(const DilationMatrix& m);

/// Representatives xi of Z^s / M^T Z^s and the evaluation points
/// exp(2 pi i M^{-T} xi).
DualCosets dual_coset_points(const DilationMatrix& m);

}  // namespace subrepro
