#include "subrepro/lattice.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <utility>

#include "checked.hpp"
#include "subrepro/error.hpp"

namespace subrepro {

using detail::checked_add;
using detail::checked_mul;
using detail::checked_sub;

// ---------------------------------------------------------------------------
// IntMatrix / RatMatrix

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) : n_(rows.size()) {
    a_.reserve(n_ * n_);
    for (const auto& row : rows) {
        if (row.size() != n_) throw Error(ErrorCode::DimensionMismatch, "matrix must be square");
        a_.insert(a_.end(), row.begin(), row.end());
    }
}

IntMatrix::IntMatrix(std::size_t n, std::vector<std::int64_t> row_major) : n_(n), a_(std::move(row_major)) {
    if (a_.size() != n * n) throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(n * n) + " entries");
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix id(n);
    for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
    return id;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Index IntMatrix::apply(const Index& v) const {
    if (v.size() != n_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from matrix size");
    Index out(n_, 0);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out[i] = checked_add(out[i], checked_mul((*this)(i, j), v[j]));
    return out;
}

IntMatrix operator*(const IntMatrix& lhs, const IntMatrix& rhs) {
    if (lhs.n_ != rhs.n_) throw Error(ErrorCode::DimensionMismatch, "matrix product");
    IntMatrix out(lhs.n_);
    for (std::size_t i = 0; i < lhs.n_; ++i)
        for (std::size_t k = 0; k < lhs.n_; ++k)
            for (std::size_t j = 0; j < lhs.n_; ++j)
                out(i, j) = checked_add(out(i, j), checked_mul(lhs(i, k), rhs(k, j)));
    return out;
}

std::string to_string(const IntMatrix& m) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.dim(); ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? "," : "") << m(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

std::string to_string(const Index& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

RatMatrix::RatMatrix(const IntMatrix& m) : n_(m.dim()), a_(m.dim() * m.dim()) {
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) (*this)(i, j) = Rational(static_cast<long>(m(i, j)));
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix id(n);
    for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
    return id;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RationalVector RatMatrix::apply(const RationalVector& v) const {
    if (v.size() != n_) throw Error(ErrorCode::DimensionMismatch, "vector length differs from matrix size");
    RationalVector out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

RationalVector RatMatrix::apply(const Index& v) const {
    RationalVector q(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) q[i] = Rational(static_cast<long>(v[i]));
    return apply(q);
}

RatMatrix operator*(const RatMatrix& lhs, const RatMatrix& rhs) {
    if (lhs.n_ != rhs.n_) throw Error(ErrorCode::DimensionMismatch, "matrix product");
    RatMatrix out(lhs.n_);
    for (std::size_t i = 0; i < lhs.n_; ++i)
        for (std::size_t k = 0; k < lhs.n_; ++k) {
            if (lhs(i, k) == 0) continue;
            for (std::size_t j = 0; j < lhs.n_; ++j) out(i, j) += lhs(i, k) * rhs(k, j);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Determinant, inverse

Integer determinant(const IntMatrix& m) {
    const std::size_t n = m.dim();
    if (n == 0) return 1;
    std::vector<Integer> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = static_cast<long>(m(i, j));
    auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * n + j]; };

    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                // Bareiss: the division is exact.
                Integer num = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            at(i, k) = 0;
        }
        prev = at(k, k);
    }
    return sign * at(n - 1, n - 1);
}

DetInverse determinant_and_inverse(const IntMatrix& m) {
    const std::size_t n = m.dim();
    DetInverse result{determinant(m), RatMatrix::identity(n)};
    if (result.det == 0) throw Error(ErrorCode::SingularMatrix, "matrix " + to_string(m) + " has determinant 0");

    RatMatrix a(m);
    RatMatrix& inv = result.inverse;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t p = col;
        while (a(p, col) == 0) ++p;  // exists, det != 0
        if (p != col) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(p, j), a(col, j));
                std::swap(inv(p, j), inv(col, j));
            }
        }
        const Rational pivot = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) /= pivot;
            inv(col, j) /= pivot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || a(i, col) == 0) continue;
            const Rational f = a(i, col);
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(col, j);
                inv(i, j) -= f * inv(col, j);
            }
        }
    }
    return result;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

void swap_rows(IntMatrix& a, std::size_t r1, std::size_t r2) {
    for (std::size_t j = 0; j < a.dim(); ++j) std::swap(a(r1, j), a(r2, j));
}

void swap_cols(IntMatrix& a, std::size_t c1, std::size_t c2) {
    for (std::size_t i = 0; i < a.dim(); ++i) std::swap(a(i, c1), a(i, c2));
}

// row_dst += f * row_src
void add_row(IntMatrix& a, std::size_t dst, std::size_t src, std::int64_t f) {
    for (std::size_t j = 0; j < a.dim(); ++j) a(dst, j) = checked_add(a(dst, j), checked_mul(f, a(src, j)));
}

void add_col(IntMatrix& a, std::size_t dst, std::size_t src, std::int64_t f) {
    for (std::size_t i = 0; i < a.dim(); ++i) a(i, dst) = checked_add(a(i, dst), checked_mul(f, a(i, src)));
}

IntMatrix integer_inverse_of_unimodular(const IntMatrix& u) {
    const auto di = determinant_and_inverse(u);
    IntMatrix out(u.dim());
    for (std::size_t i = 0; i < u.dim(); ++i)
        for (std::size_t j = 0; j < u.dim(); ++j) {
            const Rational& q = di.inverse(i, j);
            if (q.get_den() != 1) throw Error(ErrorCode::SelfCheckFailed, "transform is not unimodular");
            out(i, j) = to_int64(q.get_num());
        }
    return out;
}

}  // namespace

std::vector<std::int64_t> SmithForm::diagonal() const {
    std::vector<std::int64_t> d(D.dim());
    for (std::size_t i = 0; i < D.dim(); ++i) d[i] = D(i, i);
    return d;
}

SmithForm smith_normal_form(const IntMatrix& input) {
    const std::size_t n = input.dim();
    if (determinant(input) == 0) throw Error(ErrorCode::SingularMatrix, "Smith form of singular matrix " + to_string(input));

    IntMatrix a = input;
    IntMatrix u = IntMatrix::identity(n);
    IntMatrix v = IntMatrix::identity(n);

    for (std::size_t t = 0; t < n; ++t) {
        while (true) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pi = n, pj = n;
            for (std::size_t i = t; i < n; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a(i, j) != 0 && (pi == n || std::llabs(a(i, j)) < std::llabs(a(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
            swap_rows(a, t, pi);
            swap_rows(u, t, pi);
            swap_cols(a, t, pj);
            swap_cols(v, t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                const std::int64_t q = a(i, t) / a(t, t);
                if (q != 0) {
                    add_row(a, i, t, -q);
                    add_row(u, i, t, -q);
                }
                if (a(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                const std::int64_t q = a(t, j) / a(t, t);
                if (q != 0) {
                    add_col(a, j, t, -q);
                    add_col(v, j, t, -q);
                }
                if (a(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            std::size_t bad_row = n;
            for (std::size_t i = t + 1; i < n && bad_row == n; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        bad_row = i;
                        break;
                    }
            if (bad_row == n) break;
            add_row(a, t, bad_row, 1);
            add_row(u, t, bad_row, 1);
        }
        if (a(t, t) < 0) {
            for (std::size_t j = 0; j < n; ++j) {
                a(t, j) = -a(t, j);
                u(t, j) = -u(t, j);
            }
        }
    }
    return SmithForm{std::move(u), std::move(a), std::move(v)};
}

// ---------------------------------------------------------------------------
// Expanding check

ExpandingCertificate is_expanding(const IntMatrix& m) {
    const std::size_t n = m.dim();
    ExpandingCertificate cert;
    if (n == 0) {
        cert.method = "empty matrix";
        return cert;
    }
    const Integer det = determinant(m);
    if (abs(det) <= 1) {
        // Product of the moduli is |det|.
        cert.method = "|det| <= 1";
        return cert;
    }
    if (n == 1) {
        cert.expanding = true;
        cert.method = "scalar |a| > 1";
        return cert;
    }
    if (n == 2) {
        // Roots of x^2 - t x + d all outside the unit circle iff |d| > 1 and
        // |t| < |d| + sgn(d) (Schur-Cohn on the reciprocal polynomial).
        const Integer t = Integer(static_cast<long>(m(0, 0))) + static_cast<long>(m(1, 1));
        const Integer bound = abs(det) + (det > 0 ? 1 : -1);
        cert.expanding = abs(t) < bound;
        cert.method = "Schur-Cohn on trace/det";
        return cert;
    }
    Eigen::MatrixXd dm(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) dm(i, j) = static_cast<double>(m(i, j));
    Eigen::EigenSolver<Eigen::MatrixXd> solver(dm, false);
    double min_mod = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
        min_mod = std::min(min_mod, std::abs(solver.eigenvalues()[k]));
    cert.exact = false;
    cert.min_modulus = min_mod;
    cert.expanding = min_mod > 1.0 + kExpandingTolerance;
    cert.method = "numeric eigenvalues";
    return cert;
}

// ---------------------------------------------------------------------------
// DilationMatrix

DilationMatrix::DilationMatrix(IntMatrix entries, bool allow_non_expanding) : entries_(std::move(entries)) {
    if (entries_.dim() == 0) throw Error(ErrorCode::DimensionMismatch, "dilation matrix of dimension 0");
    auto di = determinant_and_inverse(entries_);
    det_ = to_int64(di.det);
    inverse_ = std::move(di.inverse);
    adjugate_ = IntMatrix(entries_.dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) {
            const Rational q = inverse_(i, j) * det_;
            adjugate_(i, j) = to_int64(q.get_num());
        }
    expanding_ = is_expanding(entries_);
    if (m() < 2) throw Error(ErrorCode::NotExpanding, "|det| = " + std::to_string(m()) + " refines nothing");
    if (!allow_non_expanding && !expanding_.expanding) {
        throw Error(ErrorCode::NotExpanding, "matrix " + to_string(entries_) + " has an eigenvalue of modulus <= 1");
    }
}

std::optional<Index> DilationMatrix::lattice_preimage(const Index& v) const {
    Index w = adjugate_.apply(v);
    for (auto& x : w) {
        if (x % det_ != 0) return std::nullopt;
        x /= det_;
    }
    return w;
}

bool DilationMatrix::congruent(const Index& a, const Index& b) const {
    Index d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = checked_sub(a[i], b[i]);
    return lattice_preimage(d).has_value();
}

Index DilationMatrix::reduce(const Index& alpha) const {
    const Index w = adjugate_.apply(alpha);
    Index fl(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) fl[i] = to_int64(floor(Rational(static_cast<long>(w[i])) / static_cast<long>(det_)));
    const Index shift = entries_.apply(fl);
    Index out(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) out[i] = checked_sub(alpha[i], shift[i]);
    return out;
}

RatMatrix DilationMatrix::inverse_power(unsigned r) const {
    RatMatrix out = RatMatrix::identity(dim());
    for (unsigned k = 0; k < r; ++k) out = out * inverse_;
    return out;
}

DilationMatrix DilationMatrix::transpose() const { return DilationMatrix(entries_.transpose(), true); }

// ---------------------------------------------------------------------------
// Coset representatives

namespace {

// Zero first, remaining vectors in colexicographic order.
bool rep_order(const Index& a, const Index& b) {
    const bool za = std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; });
    const bool zb = std::all_of(b.begin(), b.end(), [](auto x) { return x == 0; });
    if (za != zb) return za;
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

}  // namespace

CosetReps primal_cosets(const DilationMatrix& m) {
    const std::size_t n = m.dim();
    const SmithForm snf = smith_normal_form(m.entries());
    const IntMatrix u_inv = integer_inverse_of_unimodular(snf.U);
    const auto diag = snf.diagonal();

    CosetReps out;
    out.reps.reserve(static_cast<std::size_t>(m.m()));
    Index digit(n, 0);
    while (true) {
        out.reps.push_back(m.reduce(u_inv.apply(digit)));
        std::size_t k = 0;
        while (k < n && ++digit[k] == diag[k]) digit[k++] = 0;
        if (k == n) break;
    }
    std::sort(out.reps.begin(), out.reps.end(), rep_order);
    return out;
}

bool UnityPoint::is_one() const {
    return std::all_of(exponents.begin(), exponents.end(), [](const Rational& q) { return q == 0; });
}

std::int64_t UnityPoint::order() const {
    std::int64_t n = 1;
    for (const auto& q : exponents) n = std::lcm(n, to_int64(q.get_den()));
    return n;
}

std::string to_string(const UnityPoint& p) {
    std::string out = "exp(2pi i*";
    out += to_string(p.exponents);
    return out + ")";
}

DualCosets dual_coset_points(const DilationMatrix& m) {
    const DilationMatrix mt = m.transpose();
    DualCosets out;
    out.reps = primal_cosets(mt);
    out.reps.kind = CosetKind::Dual;
    out.points.reserve(out.reps.reps.size());
    for (const auto& xi : out.reps.reps) {
        UnityPoint p{mt.inverse().apply(xi)};
        for (auto& x : p.exponents) x = frac(x);
        out.points.push_back(std::move(p));
    }
    return out;
}

}  // namespace subrepro
