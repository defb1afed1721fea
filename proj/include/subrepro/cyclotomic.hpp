#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "subrepro/rational.hpp"

namespace subrepro {

/// Integer coefficients of the N-th cyclotomic polynomial, lowest degree
/// first. Degree is phi(N).
std::vector<Integer> cyclotomic_polynomial(std::int64_t n);

/// An element sum_t c_t zeta_N^t of Q(zeta_N), zeta_N = exp(2 pi i / N),
/// stored in the redundant length-N coefficient form.
class CycloValue {
   public:
    CycloValue() : order_(1), coeffs_(1) {}
    explicit CycloValue(const Rational& r) : order_(1), coeffs_{r} {}
    /// Zero value of order n.
    static CycloValue zero(std::int64_t n);
    /// zeta_n^t for any integer t.
    static CycloValue root_power(std::int64_t n, std::int64_t t);

    std::int64_t order() const noexcept { return order_; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    /// Same value expressed in order n; n must be a multiple of order().
    CycloValue lifted(std::int64_t n) const;

    /// Accumulates c * zeta_N^t without re-allocating.
    void add_term(const Rational& c, std::int64_t t);

    /// Remainder modulo Phi_N: phi(N) coordinates in the power basis.
    std::vector<Rational> reduced() const;

    bool is_zero() const;
    std::complex<double> to_float() const;

    CycloValue& operator+=(const CycloValue& rhs);
    CycloValue& operator-=(const CycloValue& rhs);
    CycloValue& operator*=(const CycloValue& rhs);
    CycloValue& operator*=(const Rational& rhs);

    friend CycloValue operator+(CycloValue a, const CycloValue& b) { return a += b; }
    friend CycloValue operator-(CycloValue a, const CycloValue& b) { return a -= b; }
    friend CycloValue operator*(CycloValue a, const CycloValue& b) { return a *= b; }
    friend CycloValue operator*(CycloValue a, const Rational& b) { return a *= b; }

    /// Value equality in Q(zeta), independent of representation.
    bool equals(const CycloValue& other) const { return (*this - other).is_zero(); }

   private:
    std::int64_t order_;
    std::vector<Rational> coeffs_;
};

bool is_zero(const CycloValue& v);
std::complex<double> to_float(const CycloValue& v);

/// Canonical rendering from the reduced form, e.g. "2", "1/2 - z4", with
/// zN standing for exp(2 pi i / N).
std::string to_string(const CycloValue& v);

}  // namespace subrepro
