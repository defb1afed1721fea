#include "subrepro/symbol.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "checked.hpp"
#include "subrepro/error.hpp"

namespace subrepro {

using detail::checked_add;
using detail::checked_mul;
using detail::checked_sub;

// ---------------------------------------------------------------------------
// MultiIndex

MultiIndex::MultiIndex(std::vector<int> j) : j_(std::move(j)) {
    for (int x : j_)
        if (x < 0) throw Error(ErrorCode::DimensionMismatch, "multi-index entries must be non-negative");
}

MultiIndex MultiIndex::unit(std::size_t s, std::size_t l) {
    std::vector<int> j(s, 0);
    j.at(l) = 1;
    return MultiIndex(std::move(j));
}

int MultiIndex::order() const noexcept {
    int n = 0;
    for (int x : j_) n += x;
    return n;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
    if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "multi-index sum");
    std::vector<int> j(a.dim());
    for (std::size_t i = 0; i < j.size(); ++i) j[i] = a[i] + b[i];
    return MultiIndex(std::move(j));
}

std::string to_string(const MultiIndex& j) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < j.dim(); ++i) os << (i ? "," : "") << j[i];
    os << ')';
    return os.str();
}

namespace {

void fill_indices(std::vector<int>& cur, std::size_t pos, int remaining, std::vector<MultiIndex>& out) {
    if (pos + 1 == cur.size()) {
        cur[pos] = remaining;
        out.emplace_back(cur);
        return;
    }
    for (int v = remaining; v >= 0; --v) {
        cur[pos] = v;
        fill_indices(cur, pos + 1, remaining - v, out);
    }
}

}  // namespace

std::vector<MultiIndex> multi_indices_of_order(std::size_t s, int order) {
    std::vector<MultiIndex> out;
    if (s == 0) {
        if (order == 0) out.emplace_back();
        return out;
    }
    std::vector<int> cur(s, 0);
    fill_indices(cur, 0, order, out);
    return out;
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly LaurentPoly::constant(std::size_t s, const Rational& c) {
    LaurentPoly p(s);
    p.add_term(Index(s, 0), c);
    return p;
}

LaurentPoly LaurentPoly::monomial(const Index& alpha, const Rational& c) {
    LaurentPoly p(alpha.size());
    p.add_term(alpha, c);
    return p;
}

Rational LaurentPoly::coeff(const Index& alpha) const {
    const auto it = terms_.find(alpha);
    return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPoly::add_term(const Index& alpha, const Rational& c) {
    if (alpha.size() != s_) throw Error(ErrorCode::DimensionMismatch, "exponent " + to_string(alpha) + " in dimension " + std::to_string(s_));
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(alpha, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

SupportBox LaurentPoly::support_box() const {
    SupportBox box{Index(s_, std::numeric_limits<std::int64_t>::max()), Index(s_, std::numeric_limits<std::int64_t>::min())};
    for (const auto& [alpha, c] : terms_) {
        for (std::size_t i = 0; i < s_; ++i) {
            box.lo[i] = std::min(box.lo[i], alpha[i]);
            box.hi[i] = std::max(box.hi[i], alpha[i]);
        }
    }
    return box;
}

Rational LaurentPoly::value_at_one() const {
    Rational sum = 0;
    for (const auto& [alpha, c] : terms_) sum += c;
    return sum;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
    if (rhs.s_ != s_) throw Error(ErrorCode::DimensionMismatch, "sum of symbols in different dimensions");
    for (const auto& [alpha, c] : rhs.terms_) add_term(alpha, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
    if (rhs.s_ != s_) throw Error(ErrorCode::DimensionMismatch, "difference of symbols in different dimensions");
    for (const auto& [alpha, c] : rhs.terms_) add_term(alpha, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [alpha, coef] : terms_) coef *= c;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.s_ != b.s_) throw Error(ErrorCode::DimensionMismatch, "product of symbols in different dimensions");
    LaurentPoly out(a.s_);
    Index gamma(a.s_);
    for (const auto& [alpha, ca] : a.terms_) {
        for (const auto& [beta, cb] : b.terms_) {
            for (std::size_t i = 0; i < a.s_; ++i) gamma[i] = checked_add(alpha[i], beta[i]);
            out.add_term(gamma, ca * cb);
        }
    }
    return out;
}

std::string to_string(const LaurentPoly& a, const std::string& var) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [alpha, c0] : a.terms()) {
        Rational c = c0;
        if (!first) {
            os << (c < 0 ? " - " : " + ");
            c = abs(c);
        }
        first = false;
        const bool constant = std::all_of(alpha.begin(), alpha.end(), [](auto x) { return x == 0; });
        if (constant) {
            os << c.get_str();
            continue;
        }
        if (c == -1) os << '-';
        else if (c != 1) os << c.get_str() << '*';
        bool first_factor = true;
        for (std::size_t i = 0; i < alpha.size(); ++i) {
            if (alpha[i] == 0) continue;
            if (!first_factor) os << '*';
            first_factor = false;
            os << var << (i + 1);
            if (alpha[i] != 1) os << '^' << alpha[i];
        }
    }
    return os.str();
}

LaurentPoly pow(const LaurentPoly& a, unsigned k) {
    LaurentPoly out = LaurentPoly::constant(a.dim(), 1);
    for (unsigned i = 0; i < k; ++i) out = out * a;
    return out;
}

LaurentPoly affine_combine(std::span<const LaurentPoly> symbols, std::span<const Rational> lambdas) {
    if (symbols.empty() || symbols.size() != lambdas.size()) {
        throw Error(ErrorCode::AffineWeightsInvalid, "need one weight per symbol and at least one symbol");
    }
    Rational total = 0;
    for (const auto& l : lambdas) total += l;
    if (total != 1) throw Error(ErrorCode::AffineWeightsInvalid, "weights sum to " + to_string(total) + ", not 1");
    LaurentPoly out(symbols.front().dim());
    for (std::size_t i = 0; i < symbols.size(); ++i) out += symbols[i] * lambdas[i];
    return out;
}

LaurentPoly substitute_monomial(const LaurentPoly& a, const IntMatrix& b) {
    if (b.dim() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "substitution matrix size");
    if (determinant(b) == 0) throw Error(ErrorCode::SingularMatrix, "substitution matrix " + to_string(b));
    LaurentPoly out(a.dim());
    for (const auto& [alpha, c] : a.terms()) out.add_term(b.apply(alpha), c);
    return out;
}

LaurentPoly submask_symbol(const LaurentPoly& a, const Index& e, const DilationMatrix& m) {
    if (e.size() != a.dim() || m.dim() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "submask dimensions");
    LaurentPoly out(a.dim());
    for (const auto& [alpha, c] : a.terms())
        if (m.congruent(alpha, e)) out.add_term(alpha, c);
    return out;
}

std::vector<LaurentPoly> submasks(const LaurentPoly& a, const CosetReps& reps, const DilationMatrix& m) {
    for (std::size_t i = 0; i < reps.reps.size(); ++i)
        for (std::size_t k = 0; k < i; ++k)
            if (m.congruent(reps.reps[i], reps.reps[k])) {
                throw Error(ErrorCode::NotARepresentative,
                            to_string(reps.reps[i]) + " is congruent to " + to_string(reps.reps[k]));
            }
    std::vector<LaurentPoly> out;
    out.reserve(reps.reps.size());
    for (const auto& e : reps.reps) out.push_back(submask_symbol(a, e, m));
    return out;
}

// ---------------------------------------------------------------------------
// Derivatives and evaluation

Rational falling_factorial_q(const MultiIndex& j, const RationalVector& x) {
    if (x.size() != j.dim()) throw Error(ErrorCode::DimensionMismatch, "falling factorial arguments");
    Rational out = 1;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (int l = 0; l < j[i]; ++l) out *= x[i] - l;
    return out;
}

Rational falling_factorial_q(const MultiIndex& j, const Index& x) {
    if (x.size() != j.dim()) throw Error(ErrorCode::DimensionMismatch, "falling factorial arguments");
    Integer out = 1;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (int l = 0; l < j[i]; ++l) out *= Integer(static_cast<long>(x[i])) - l;
    return Rational(out);
}

LaurentPoly formal_derivative(const LaurentPoly& a, const MultiIndex& j) {
    if (j.dim() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "derivative order dimension");
    LaurentPoly out(a.dim());
    Index shifted(a.dim());
    for (const auto& [alpha, c] : a.terms()) {
        const Rational q = falling_factorial_q(j, alpha);
        if (q == 0) continue;
        for (std::size_t i = 0; i < alpha.size(); ++i) shifted[i] = checked_sub(alpha[i], j[i]);
        out.add_term(shifted, c * q);
    }
    return out;
}

namespace {

// Integer phase weights w with p^beta = zeta_N^{<w, beta>}.
std::vector<std::int64_t> phase_weights(const UnityPoint& p, std::int64_t n) {
    std::vector<std::int64_t> w(p.exponents.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        const Rational scaled = p.exponents[i] * n;
        w[i] = to_int64(scaled.get_num());
    }
    return w;
}

std::int64_t phase(const std::vector<std::int64_t>& w, const Index& beta, std::int64_t n) {
    std::int64_t t = 0;
    for (std::size_t i = 0; i < w.size(); ++i) t = (t + checked_mul(w[i] % n, beta[i] % n)) % n;
    return t;
}

void check_point(const LaurentPoly& a, const UnityPoint& p) {
    if (p.exponents.size() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "evaluation point dimension");
}

}  // namespace

Rational eval_via_derivative(const LaurentPoly& a, const MultiIndex& j, One) {
    return formal_derivative(a, j).value_at_one();
}

CycloValue eval_via_derivative(const LaurentPoly& a, const MultiIndex& j, const UnityPoint& p) {
    check_point(a, p);
    const std::int64_t n = p.order();
    const auto w = phase_weights(p, n);
    CycloValue v = CycloValue::zero(n);
    const LaurentPoly da = formal_derivative(a, j);
    for (const auto& [beta, c] : da.terms()) v.add_term(c, phase(w, beta, n));
    return v;
}

Rational eval_direct_sum(const LaurentPoly& a, const MultiIndex& j, One) {
    if (j.dim() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "derivative order dimension");
    Rational sum = 0;
    for (const auto& [alpha, c] : a.terms()) sum += c * falling_factorial_q(j, alpha);
    return sum;
}

CycloValue eval_direct_sum(const LaurentPoly& a, const MultiIndex& j, const UnityPoint& p) {
    check_point(a, p);
    if (j.dim() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "derivative order dimension");
    const std::int64_t n = p.order();
    const auto w = phase_weights(p, n);
    // p^{alpha - j} = p^alpha * p^{-j}
    Index minus_j(a.dim());
    for (std::size_t i = 0; i < minus_j.size(); ++i) minus_j[i] = -j[i];
    const std::int64_t shift = phase(w, minus_j, n);
    CycloValue v = CycloValue::zero(n);
    for (const auto& [alpha, c] : a.terms()) {
        const Rational q = falling_factorial_q(j, alpha);
        if (q != 0) v.add_term(c * q, phase(w, alpha, n) + shift);
    }
    return v;
}

Rational eval_deriv_at(const LaurentPoly& a, const MultiIndex& j, One one) {
    Rational x = eval_via_derivative(a, j, one);
    if (x != eval_direct_sum(a, j, one)) {
        throw Error(ErrorCode::SelfCheckFailed, "derivative evaluation routes disagree at 1 for j = " + to_string(j));
    }
    return x;
}

CycloValue eval_deriv_at(const LaurentPoly& a, const MultiIndex& j, const UnityPoint& p) {
    CycloValue x = eval_via_derivative(a, j, p);
    if (!x.equals(eval_direct_sum(a, j, p))) {
        throw Error(ErrorCode::SelfCheckFailed,
                    "derivative evaluation routes disagree at " + to_string(p) + " for j = " + to_string(j));
    }
    return x;
}

EvalValue eval_deriv_at(const LaurentPoly& a, const MultiIndex& j, const EvalPoint& p) {
    return std::visit([&](const auto& point) -> EvalValue { return eval_deriv_at(a, j, point); }, p);
}

}  // namespace subrepro
