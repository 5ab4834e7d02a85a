#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qh {

using i64 = long long;
using i128 = __int128;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline i64 mod(i64 a, i64 m)
{
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

inline i64 mod128(i128 a, i64 m)
{
    i128 r = a % m;
    return static_cast<i64>(r < 0 ? r + m : r);
}

// floor division for signed operands
inline i64 fdiv(i64 a, i64 b)
{
    i64 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

i64 gcd(i64 a, i64 b);
i64 lcm(i64 a, i64 b);
// returns g = gcd(a,b) >= 0 with x*a + y*b = g
i64 xgcd(i64 a, i64 b, i64& x, i64& y);
i64 powmod(i64 a, i64 e, i64 m);
i64 invmod(i64 a, i64 m);
i64 ipow(i64 a, int e);

bool is_prime(i64 n);
std::vector<std::pair<i64, int>> factor(i64 n);
bool is_squarefree(i64 n);
int vp(i64 n, i64 p);
std::vector<i64> primes_upto(i64 n);
i64 next_prime(i64 n);

int kronecker(i64 a, i64 n);
// square root of a mod odd prime p, a a residue
i64 sqrtmod(i64 a, i64 p);

// element of Q/Z, stored as num/den with 0 <= num < den
struct RootU {
    i64 num = 0;
    i64 den = 1;

    RootU() = default;
    RootU(i64 n, i64 d);

    RootU operator+(const RootU& o) const;
    RootU operator-(const RootU& o) const;
    RootU operator-() const;
    RootU operator*(i64 k) const;
    bool operator==(const RootU& o) const { return num == o.num && den == o.den; }
    bool operator!=(const RootU& o) const { return !(*this == o); }
    bool operator<(const RootU& o) const
    {
        return (i128)num * o.den < (i128)o.num * den;
    }
    bool is_one() const { return num == 0; }
    double angle() const;
    std::string str() const;
};

} // namespace qh
