#include "doctest.h"
#include "qh/cyclo.hpp"

#include <random>

using namespace qh;

TEST_CASE("sum of all N-th roots of unity vanishes")
{
    for (i64 N : {2, 3, 4, 6, 8, 9, 12, 15, 20, 30, 36, 60}) {
        Cyclo s(N);
        for (i64 k = 0; k < N; ++k) s.add_root(k, 1);
        CHECK(s.is_zero());
        Cyclo one = Cyclo::scalar(1, N);
        CHECK_FALSE(one.is_zero());
    }
}

TEST_CASE("zero test matches numerical evaluation on random elements")
{
    std::mt19937_64 rng(7);
    for (i64 N : {4, 6, 10, 12, 18, 24, 30}) {
        for (int trial = 0; trial < 200; ++trial) {
            Cyclo x(N);
            // sums of full orbits of subgroups are zero; mix them with noise
            i64 d = 1 + rng() % N;
            while (N % d) d = 1 + rng() % N;
            if (d > 1) {
                i64 shift = rng() % N;
                for (i64 k = 0; k < d; ++k) x.add_root(shift + k * (N / d), 1);
            }
            if (rng() % 2) x.add_root(rng() % N, mpq_class(static_cast<long>(rng() % 5) - 2));
            bool numeric_zero = std::abs(x.value()) < 1e-9;
            CHECK(x.is_zero() == numeric_zero);
        }
    }
}

TEST_CASE("quadratic Gauss sum squares to (-1/p) p exactly")
{
    for (i64 p : {3, 5, 7, 11, 13}) {
        Cyclo g(p);
        for (i64 a = 1; a < p; ++a) g.add_root(a, kronecker(a, p));
        Cyclo sq = g * g;
        mpq_class v;
        REQUIRE(sq.as_rational(v));
        CHECK(v == mpq_class(static_cast<long>(kronecker(-1, p) * p)));
    }
}

TEST_CASE("products across different orders lift to the lcm")
{
    Cyclo z3 = Cyclo::root(RootU(1, 3)), z4 = Cyclo::root(RootU(1, 4));
    Cyclo p = z3 * z4;
    CHECK(p == Cyclo::root(RootU(7, 12)));
    CHECK(std::abs(p.value() - std::polar(1.0, 2 * M_PI * 7 / 12)) < 1e-12);
}

TEST_CASE("Laurent polynomial arithmetic")
{
    Laurent a = Laurent::one() - Laurent::root(RootU(1, 2), 2); // 1 + Y^2
    Laurent b = Laurent::one() + Laurent::root(RootU(1, 2), 2); // 1 - Y^2
    Laurent p = a * b;
    CHECK(p == Laurent::one() - Laurent::mono(Cyclo::scalar(1), 4));
    CHECK(std::abs(p.value(0.5) - cplx(1 - 0.0625)) < 1e-12);
}
