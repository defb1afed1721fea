#include "subrepro/subdivision.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>

#include "checked.hpp"
#include "subrepro/error.hpp"

namespace subrepro {

namespace {

template <class T>
T coefficient_as(const Rational& c);

template <>
Rational coefficient_as<Rational>(const Rational& c) {
    return c;
}

template <>
double coefficient_as<double>(const Rational& c) {
    return c.get_d();
}

}  // namespace

template <class T>
GridData<T> subdivide_step(const LaurentPoly& a, const DilationMatrix& m, const GridData<T>& d) {
    if (a.dim() != m.dim() || d.dim != a.dim()) throw Error(ErrorCode::DimensionMismatch, "subdivision step dimensions");
    const std::size_t s = a.dim();

    std::vector<std::pair<Index, T>> mask;
    mask.reserve(a.size());
    for (const auto& [gamma, c] : a.terms()) mask.emplace_back(gamma, coefficient_as<T>(c));

    std::set<Index> candidates;
    Index alpha(s);
    for (const auto& [beta, v] : d.values) {
        const Index mb = m.entries().apply(beta);
        for (const auto& [gamma, c] : mask) {
            for (std::size_t i = 0; i < s; ++i) alpha[i] = detail::checked_add(mb[i], gamma[i]);
            candidates.insert(alpha);
        }
    }

    GridData<T> out;
    out.dim = s;
    out.zero_outside = d.zero_outside;
    Index diff(s);
    for (const auto& cand : candidates) {
        T sum{};
        bool known = true;
        for (const auto& [gamma, c] : mask) {
            for (std::size_t i = 0; i < s; ++i) diff[i] = cand[i] - gamma[i];
            const auto beta = m.lattice_preimage(diff);
            if (!beta) continue;
            const auto it = d.values.find(*beta);
            if (it != d.values.end()) {
                sum += c * it->second;
            } else if (!d.zero_outside) {
                known = false;
                break;
            }
        }
        if (known) out.values.emplace_hint(out.values.end(), cand, sum);
    }
    return out;
}

template GridData<Rational> subdivide_step(const LaurentPoly&, const DilationMatrix&, const GridData<Rational>&);
template GridData<double> subdivide_step(const LaurentPoly&, const DilationMatrix&, const GridData<double>&);

// ---------------------------------------------------------------------------

ParamState::ParamState(const DilationMatrix& m, RationalVector tau)
    : inv_m_(m.inverse()), tau_(std::move(tau)), t0_(m.dim()), inv_r_(RatMatrix::identity(m.dim())) {
    if (tau_.size() != m.dim()) throw Error(ErrorCode::DimensionMismatch, "tau has the wrong length");
}

void ParamState::advance() {
    ++r_;
    inv_r_ = inv_r_ * inv_m_;
    const RationalVector shift = inv_r_.apply(tau_);
    for (std::size_t i = 0; i < t0_.size(); ++i) t0_[i] -= shift[i];
}

RationalVector ParamState::point(const Index& alpha) const {
    RationalVector t = inv_r_.apply(alpha);
    for (std::size_t i = 0; i < t.size(); ++i) t[i] += t0_[i];
    return t;
}

std::vector<Index> box_points(const SupportBox& box) {
    const std::size_t s = box.lo.size();
    std::vector<Index> out;
    for (std::size_t i = 0; i < s; ++i)
        if (box.lo[i] > box.hi[i]) return out;
    Index alpha = box.lo;
    while (true) {
        out.push_back(alpha);
        std::size_t d = 0;
        while (d < s && alpha[d] == box.hi[d]) alpha[d] = box.lo[d], ++d;
        if (d == s) break;
        ++alpha[d];
    }
    return out;
}

SupportBox symmetric_box(std::size_t s, std::int64_t radius) { return SupportBox{Index(s, -radius), Index(s, radius)}; }

std::map<Index, RationalVector> parameter_grid(const DilationMatrix& m, const RationalVector& tau, unsigned r,
                                               const SupportBox& box) {
    ParamState state(m, tau);
    for (unsigned k = 0; k < r; ++k) state.advance();
    std::map<Index, RationalVector> out;
    for (const auto& alpha : box_points(box)) out.emplace(alpha, state.point(alpha));
    return out;
}

// ---------------------------------------------------------------------------

PolySpec::PolySpec(LaurentPoly p) : poly_(std::move(p)) {
    for (const auto& [e, c] : poly_.terms())
        for (auto x : e)
            if (x < 0) throw Error(ErrorCode::DimensionMismatch, "polynomial exponents must be non-negative");
}

PolySpec PolySpec::monomial(const Index& exponent, const Rational& c) {
    return PolySpec(LaurentPoly::monomial(exponent, c));
}

int PolySpec::total_degree() const {
    int deg = -1;
    for (const auto& [e, c] : poly_.terms()) {
        std::int64_t sum = 0;
        for (auto x : e) sum += x;
        deg = std::max(deg, static_cast<int>(sum));
    }
    return deg;
}

Rational PolySpec::operator()(const RationalVector& x) const {
    if (x.size() != dim()) throw Error(ErrorCode::DimensionMismatch, "polynomial argument length");
    Rational sum = 0;
    for (const auto& [e, c] : poly_.terms()) {
        Rational term = c;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::int64_t k = 0; k < e[i]; ++k) term *= x[i];
        sum += term;
    }
    return sum;
}

Rational PolySpec::operator()(const Index& x) const {
    RationalVector q(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) q[i] = Rational(static_cast<long>(x[i]));
    return (*this)(q);
}

ExactGrid sample_polynomial(const PolySpec& pi, const SupportBox& box) {
    ExactGrid d;
    d.dim = pi.dim();
    for (const auto& alpha : box_points(box)) d.values.emplace(alpha, pi(alpha));
    return d;
}

OracleResult reproduction_oracle(const LaurentPoly& a, const DilationMatrix& m, const RationalVector& tau,
                                 const PolySpec& pi, unsigned steps, const SupportBox& box) {
    if (pi.dim() != a.dim() || box.lo.size() != a.dim()) throw Error(ErrorCode::DimensionMismatch, "oracle arguments");
    ParamState params(m, tau);
    ExactGrid d = sample_polynomial(pi, box);
    if (d.values.empty()) throw Error(ErrorCode::WindowTooSmall, "empty initial box");

    OracleResult out;
    out.compared.push_back(d.values.size());
    for (unsigned r = 1; r <= steps; ++r) {
        d = subdivide_step(a, m, d);
        if (d.values.empty()) {
            throw Error(ErrorCode::WindowTooSmall, "no uncontaminated index left after step " + std::to_string(r));
        }
        params.advance();
        out.compared.push_back(d.values.size());
        for (const auto& [alpha, value] : d.values) {
            Rational expected = pi(params.point(alpha));
            if (expected != value) {
                out.pass = false;
                out.mismatch = OracleMismatch{r, alpha, std::move(expected), value};
                return out;
            }
        }
    }
    return out;
}

void write_refinement_csv(std::ostream& out, const LaurentPoly& a, const DilationMatrix& m, const RationalVector& tau,
                          const NumericGrid& d0, unsigned steps) {
    const std::size_t s = m.dim();
    out << "level";
    for (std::size_t i = 1; i <= s; ++i) out << ",t" << i;
    out << ",value\n";
    out << std::setprecision(17);

    ParamState params(m, tau);
    NumericGrid d = d0;
    for (unsigned r = 0;; ++r) {
        for (const auto& [alpha, value] : d.values) {
            out << r;
            for (const auto& t : params.point(alpha)) out << ',' << t.get_d();
            out << ',' << value << '\n';
        }
        if (r == steps) break;
        d = subdivide_step(a, m, d);
        params.advance();
    }
}

void export_refinement(const LaurentPoly& a, const DilationMatrix& m, const RationalVector& tau, const NumericGrid& d0,
                       unsigned steps, const std::filesystem::path& path) {
    std::ofstream file(path);
    if (!file) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    write_refinement_csv(file, a, m, tau, d0, steps);
    file.flush();
    if (!file) throw Error(ErrorCode::IoError, "write to " + path.string() + " failed");
}

}  // namespace subrepro
