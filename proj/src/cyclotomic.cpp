#include "subrepro/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "subrepro/error.hpp"

namespace subrepro {

namespace {

using IntPoly = std::vector<Integer>;

// Exact quotient of monic-divisor division; remainder must vanish.
IntPoly divide_exact(IntPoly num, const IntPoly& den) {
    const std::size_t dd = den.size() - 1;
    IntPoly q(num.size() - dd, 0);
    for (std::size_t k = num.size(); k-- > dd;) {
        const Integer c = num[k];  // den is monic
        q[k - dd] = c;
        if (c == 0) continue;
        for (std::size_t i = 0; i <= dd; ++i) num[k - dd + i] -= c * den[i];
    }
    return q;
}

IntPoly compute_cyclotomic(std::int64_t n);

const IntPoly& cached_cyclotomic(std::int64_t n) {
    static std::mutex mutex;
    static std::map<std::int64_t, IntPoly> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(n); it != cache.end()) return it->second;
    }
    IntPoly p = compute_cyclotomic(n);
    std::lock_guard lock(mutex);
    // std::map never invalidates references on insertion.
    return cache.emplace(n, std::move(p)).first->second;
}

IntPoly compute_cyclotomic(std::int64_t n) {
    // x^n - 1 divided by every Phi_d, d | n, d < n.
    IntPoly p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(n)] = 1;
    for (std::int64_t d = 1; d < n; ++d) {
        if (n % d == 0) p = divide_exact(std::move(p), cached_cyclotomic(d));
    }
    return p;
}

std::int64_t mod(std::int64_t t, std::int64_t n) {
    const std::int64_t r = t % n;
    return r < 0 ? r + n : r;
}

}  // namespace

std::vector<Integer> cyclotomic_polynomial(std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::DimensionMismatch, "cyclotomic order must be positive");
    return cached_cyclotomic(n);
}

CycloValue CycloValue::zero(std::int64_t n) {
    if (n < 1) throw Error(ErrorCode::DimensionMismatch, "cyclotomic order must be positive");
    CycloValue v;
    v.order_ = n;
    v.coeffs_.assign(static_cast<std::size_t>(n), Rational(0));
    return v;
}

CycloValue CycloValue::root_power(std::int64_t n, std::int64_t t) {
    CycloValue v = zero(n);
    v.coeffs_[static_cast<std::size_t>(mod(t, n))] = 1;
    return v;
}

CycloValue CycloValue::lifted(std::int64_t n) const {
    if (n % order_ != 0) throw Error(ErrorCode::DimensionMismatch, "lift target is not a multiple of the order");
    if (n == order_) return *this;
    CycloValue v = zero(n);
    const std::int64_t step = n / order_;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) v.coeffs_[t * static_cast<std::size_t>(step)] = coeffs_[t];
    return v;
}

void CycloValue::add_term(const Rational& c, std::int64_t t) { coeffs_[static_cast<std::size_t>(mod(t, order_))] += c; }

std::vector<Rational> CycloValue::reduced() const {
    const auto& phi = cached_cyclotomic(order_);
    const std::size_t deg = phi.size() - 1;
    std::vector<Rational> r = coeffs_;
    for (std::size_t k = r.size(); k-- > deg;) {
        if (r[k] == 0) continue;
        const Rational c = r[k];
        for (std::size_t i = 0; i <= deg; ++i) r[k - deg + i] -= c * Rational(phi[i]);
    }
    r.resize(deg);
    return r;
}

bool CycloValue::is_zero() const {
    for (const auto& c : reduced())
        if (c != 0) return false;
    return true;
}

std::complex<double> CycloValue::to_float() const {
    std::complex<double> sum = 0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
        if (coeffs_[t] == 0) continue;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(order_);
        sum += coeffs_[t].get_d() * std::polar(1.0, angle);
    }
    return sum;
}

CycloValue& CycloValue::operator+=(const CycloValue& rhs) {
    const std::int64_t n = std::lcm(order_, rhs.order_);
    if (n != order_) *this = lifted(n);
    const CycloValue b = rhs.lifted(n);
    for (std::size_t t = 0; t < coeffs_.size(); ++t) coeffs_[t] += b.coeffs_[t];
    return *this;
}

CycloValue& CycloValue::operator-=(const CycloValue& rhs) {
    CycloValue neg = rhs;
    neg *= Rational(-1);
    return *this += neg;
}

CycloValue& CycloValue::operator*=(const CycloValue& rhs) {
    const std::int64_t n = std::lcm(order_, rhs.order_);
    const CycloValue a = lifted(n);
    const CycloValue b = rhs.lifted(n);
    CycloValue out = zero(n);
    for (std::size_t s = 0; s < a.coeffs_.size(); ++s) {
        if (a.coeffs_[s] == 0) continue;
        for (std::size_t t = 0; t < b.coeffs_.size(); ++t) {
            if (b.coeffs_[t] == 0) continue;
            out.coeffs_[(s + t) % static_cast<std::size_t>(n)] += a.coeffs_[s] * b.coeffs_[t];
        }
    }
    return *this = std::move(out);
}

CycloValue& CycloValue::operator*=(const Rational& rhs) {
    for (auto& c : coeffs_) c *= rhs;
    return *this;
}

bool is_zero(const CycloValue& v) { return v.is_zero(); }
std::complex<double> to_float(const CycloValue& v) { return v.to_float(); }

std::string to_string(const CycloValue& v) {
    const auto r = v.reduced();
    std::ostringstream os;
    bool first = true;
    for (std::size_t t = 0; t < r.size(); ++t) {
        if (r[t] == 0) continue;
        Rational c = r[t];
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            c = abs(c);
        }
        if (t == 0) {
            os << c.get_str();
        } else {
            if (c == -1) os << '-';
            else if (c != 1) os << c.get_str() << '*';
            os << 'z' << v.order();
            if (t > 1) os << '^' << t;
        }
        first = false;
    }
    return first ? "0" : os.str();
}

}  // namespace subrepro
