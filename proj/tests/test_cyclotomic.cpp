#include <doctest.h>

#include <numeric>
#include <random>

#include "subrepro/cyclotomic.hpp"

using namespace subrepro;

namespace {

using IntPoly = std::vector<Integer>;

IntPoly mul(const IntPoly& a, const IntPoly& b) {
    IntPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

IntPoly ints(std::initializer_list<int> cs) {
    IntPoly p;
    for (int c : cs) p.emplace_back(c);
    return p;
}

std::int64_t totient(std::int64_t n) {
    std::int64_t count = 0;
    for (std::int64_t k = 1; k <= n; ++k) count += std::gcd(k, n) == 1;
    return count;
}

CycloValue random_value(std::mt19937& rng, std::int64_t n) {
    std::uniform_int_distribution<int> coef(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    CycloValue v = CycloValue::zero(n);
    for (std::int64_t t = 0; t < n; ++t) v.add_term(Rational(coef(rng)) / den(rng), t);
    return v;
}

// c * sum_{k < p} zeta_n^{t + k n / p}, zero for every prime p | n.
CycloValue random_vanishing_sum(std::mt19937& rng, std::int64_t n) {
    std::vector<std::int64_t> primes;
    for (std::int64_t p = 2; p <= n; ++p) {
        bool prime = true;
        for (std::int64_t d = 2; d * d <= p; ++d) prime = prime && p % d != 0;
        if (prime && n % p == 0) primes.push_back(p);
    }
    CycloValue v = CycloValue::zero(n);
    if (primes.empty()) return v;
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    std::uniform_int_distribution<std::int64_t> shift(0, n - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int rep = 0; rep < 3; ++rep) {
        const std::int64_t p = primes[pick(rng)];
        const std::int64_t t = shift(rng);
        const Rational c = coef(rng);
        for (std::int64_t k = 0; k < p; ++k) v.add_term(c, t + k * (n / p));
    }
    return v;
}

}  // namespace

TEST_SUITE("cyclotomic") {
    TEST_CASE("small cyclotomic polynomials") {
        CHECK(cyclotomic_polynomial(1) == ints({-1, 1}));
        CHECK(cyclotomic_polynomial(2) == ints({1, 1}));
        CHECK(cyclotomic_polynomial(3) == ints({1, 1, 1}));
        CHECK(cyclotomic_polynomial(4) == ints({1, 0, 1}));
        CHECK(cyclotomic_polynomial(6) == ints({1, -1, 1}));
        CHECK(cyclotomic_polynomial(12) == ints({1, 0, -1, 0, 1}));
    }

    TEST_CASE("product over divisors is x^N - 1") {
        for (std::int64_t n = 1; n <= 64; ++n) {
            IntPoly prod = ints({1});
            for (std::int64_t d = 1; d <= n; ++d)
                if (n % d == 0) prod = mul(prod, cyclotomic_polynomial(d));
            IntPoly expected(static_cast<std::size_t>(n) + 1, 0);
            expected.front() = -1;
            expected.back() = 1;
            CHECK(prod == expected);
            CHECK(static_cast<std::int64_t>(cyclotomic_polynomial(n).size()) - 1 == totient(n));
        }
    }

    TEST_CASE("arithmetic examples") {
        CHECK((CycloValue::root_power(2, 1) + CycloValue(Rational(1))).is_zero());
        CHECK((CycloValue::root_power(4, 1) * CycloValue::root_power(4, 1)).equals(CycloValue(Rational(-1))));
        CHECK((CycloValue(Rational(1)) + CycloValue::root_power(3, 1) + CycloValue::root_power(3, 2)).is_zero());
        CHECK(CycloValue::zero(5).is_zero());
        CycloValue v = CycloValue::zero(4);
        v.add_term(1, 0);
        v.add_term(1, 2);
        CHECK(v.is_zero());
        // zeta_4^2 == zeta_2 across orders
        CHECK(CycloValue::root_power(4, 2).equals(CycloValue::root_power(2, 1)));
        CHECK(CycloValue::root_power(6, 5).equals(CycloValue::root_power(3, 1) * CycloValue::root_power(2, 1)));
        CHECK((CycloValue::root_power(4, 1) * Rational(3)).lifted(12).equals(CycloValue::root_power(4, 1) * Rational(3)));
    }

    TEST_CASE("to_float and to_string") {
        CHECK(std::abs(CycloValue::zero(7).to_float()) < 1e-12);
        const auto i = CycloValue::root_power(4, 1).to_float();
        CHECK(i.real() == doctest::Approx(0.0));
        CHECK(i.imag() == doctest::Approx(1.0));
        CHECK(CycloValue(Rational(2)).to_float().real() == doctest::Approx(2.0));
        CHECK(to_string(CycloValue(Rational(2))) == "2");
        CHECK(to_string(CycloValue::zero(3)) == "0");
        CHECK(to_string(CycloValue::root_power(4, 1)) == "z4");
        CHECK(to_string(CycloValue(Rational(1, 2)) - CycloValue::root_power(4, 1)) == "1/2 - z4");
        CHECK(to_string(CycloValue::root_power(3, 2)) == "-1 - z3");
    }

    TEST_CASE("ring laws on random triples") {
        std::mt19937 rng(3);
        std::uniform_int_distribution<std::int64_t> order(1, 12);
        for (int trial = 0; trial < 300; ++trial) {
            const CycloValue a = random_value(rng, order(rng));
            const CycloValue b = random_value(rng, order(rng));
            const CycloValue c = random_value(rng, order(rng));
            CHECK(((a + b) + c).equals(a + (b + c)));
            CHECK(((a * b) * c).equals(a * (b * c)));
            CHECK((a * (b + c)).equals(a * b + a * c));
            CHECK((a * b).equals(b * a));
            CHECK((a - a).is_zero());
        }
    }

    TEST_CASE("exact zero test agrees with the float magnitude") {
        std::mt19937 rng(17);
        std::uniform_int_distribution<std::int64_t> order(1, 24);
        std::bernoulli_distribution vanish(0.5);
        int zeros = 0;
        for (int trial = 0; trial < 10000; ++trial) {
            const std::int64_t n = order(rng);
            CycloValue v = random_vanishing_sum(rng, n);
            if (!vanish(rng)) {
                std::uniform_int_distribution<std::int64_t> t(0, n - 1);
                v.add_term(Rational(1, 1 + trial % 5), t(rng));
            }
            const double mag = std::abs(v.to_float());
            const bool z = v.is_zero();
            if (z) {
                ++zeros;
                CHECK(mag < 1e-9);
            }
            if (mag > 1e-6) CHECK_FALSE(z);
            if (mag < 1e-9) CHECK(z);  // every nonzero sample is a unit-size perturbation
        }
        CHECK(zeros > 1000);
    }
}
