#include "doctest.h"
#include "qh/arith.hpp"

using namespace qh;

TEST_CASE("kronecker agrees with Euler's criterion at odd primes")
{
    for (i64 p : primes_upto(200)) {
        if (p == 2) continue;
        for (i64 a = -30; a <= 30; ++a) {
            int e = 0;
            if (mod(a, p) != 0) e = powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
            CHECK(kronecker(a, p) == e);
        }
    }
}

TEST_CASE("kronecker at 2 follows the mod 8 rule")
{
    CHECK(kronecker(-7, 2) == 1);
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(-4, 2) == 0);
    CHECK(kronecker(-20, 3) == 1);
}

TEST_CASE("sqrtmod returns square roots")
{
    for (i64 p : primes_upto(3000)) {
        if (p == 2) continue;
        for (i64 a = 1; a < 40; ++a) {
            if (kronecker(a, p) != 1) continue;
            i64 s = sqrtmod(a, p);
            CHECK(s * s % p == a % p);
        }
    }
}

TEST_CASE("factorization reconstructs the integer")
{
    for (i64 n = 1; n < 3000; ++n) {
        i64 m = 1;
        for (auto [p, e] : factor(n)) {
            CHECK(is_prime(p));
            m *= ipow(p, e);
        }
        CHECK(m == n);
    }
    CHECK(is_squarefree(30));
    CHECK_FALSE(is_squarefree(12));
    CHECK(is_prime(1000003));
    CHECK_FALSE(is_prime(1000001));
}

TEST_CASE("roots of unity in Q/Z")
{
    RootU a(1, 4), b(3, 4);
    CHECK((a + b).is_one());
    CHECK((a * 4).is_one());
    CHECK(RootU(2, 6) == RootU(1, 3));
    CHECK((RootU(1, 6) + RootU(1, 3)) == RootU(1, 2));
    CHECK((-RootU(1, 5)) == RootU(4, 5));
}
