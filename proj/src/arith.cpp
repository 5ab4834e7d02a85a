#include "qh/arith.hpp"

#include <cmath>
#include <numbers>

namespace qh {

i64 gcd(i64 a, i64 b)
{
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 lcm(i64 a, i64 b)
{
    if (a == 0 || b == 0) return 0;
    i64 g = gcd(a, b);
    return (a / g) * (b < 0 ? -b : b) * (a < 0 ? -1 : 1);
}

i64 xgcd(i64 a, i64 b, i64& x, i64& y)
{
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i64 q = a / b;
        i64 t = a - q * b;
        a = b;
        b = t;
        t = x0 - q * x1;
        x0 = x1;
        x1 = t;
        t = y0 - q * y1;
        y0 = y1;
        y1 = t;
    }
    if (a < 0) {
        a = -a;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return a;
}

i64 powmod(i64 a, i64 e, i64 m)
{
    if (m == 1) return 0;
    i128 r = 1, b = mod(a, m);
    while (e > 0) {
        if (e & 1) r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<i64>(r);
}

i64 invmod(i64 a, i64 m)
{
    i64 x, y;
    if (xgcd(mod(a, m), m, x, y) != 1)
        throw Error("invmod: not invertible");
    return mod(x, m);
}

i64 ipow(i64 a, int e)
{
    i64 r = 1;
    for (int i = 0; i < e; ++i) r *= a;
    return r;
}

bool is_prime(i64 n)
{
    if (n < 2) return false;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    i64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (i64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        i128 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int r = 1; r < s; ++r) {
            x = x * x % n;
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

std::vector<std::pair<i64, int>> factor(i64 n)
{
    if (n <= 0) throw Error("factor: nonpositive argument");
    std::vector<std::pair<i64, int>> out;
    for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

bool is_squarefree(i64 n)
{
    for (auto [p, e] : factor(n))
        if (e > 1) return false;
    return true;
}

int vp(i64 n, i64 p)
{
    if (n == 0) throw Error("vp of zero");
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

std::vector<i64> primes_upto(i64 n)
{
    std::vector<i64> ps;
    if (n < 2) return ps;
    std::vector<char> sieve(n + 1, 1);
    for (i64 i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        ps.push_back(i);
        for (i64 j = i * i; j <= n; j += i) sieve[j] = 0;
    }
    return ps;
}

i64 next_prime(i64 n)
{
    i64 q = n + 1;
    while (!is_prime(q)) ++q;
    return q;
}

int kronecker(i64 a, i64 n)
{
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    int r = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) r = -r;
    }
    int v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v > 0) {
        if (a % 2 == 0) return 0;
        if ((v & 1) && (mod(a, 8) == 3 || mod(a, 8) == 5)) r = -r;
    }
    a = mod(a, n);
    // Jacobi symbol (a/n), n odd
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            if (n % 8 == 3 || n % 8 == 5) r = -r;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) r = -r;
        a %= n;
    }
    return n == 1 ? r : 0;
}

i64 sqrtmod(i64 a, i64 p)
{
    a = mod(a, p);
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) throw Error("sqrtmod: non-residue");
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    // Tonelli-Shanks
    i64 q = p - 1;
    int s = 0;
    while (q % 2 == 0) {
        q /= 2;
        ++s;
    }
    i64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    i128 m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        int i = 0;
        i128 tt = t;
        while (tt != 1) {
            tt = tt * tt % p;
            ++i;
        }
        i128 b = c;
        for (int j = 0; j < m - i - 1; ++j) b = b * b % p;
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    return static_cast<i64>(r);
}

RootU::RootU(i64 n, i64 d)
{
    if (d <= 0) throw Error("RootU: bad denominator");
    i64 g = gcd(n, d);
    num = mod(n / g, d / g);
    den = d / g;
}

RootU RootU::operator+(const RootU& o) const
{
    i64 l = lcm(den, o.den);
    return RootU(mod128((i128)num * (l / den) + (i128)o.num * (l / o.den), l), l);
}

RootU RootU::operator-(const RootU& o) const { return *this + (-o); }

RootU RootU::operator-() const { return RootU(den - num, den); }

RootU RootU::operator*(i64 k) const
{
    return RootU(mod128((i128)num * k, den), den);
}

double RootU::angle() const
{
    return 2.0 * std::numbers::pi * static_cast<double>(num) / static_cast<double>(den);
}

std::string RootU::str() const
{
    return std::to_string(num) + "/" + std::to_string(den);
}

} // namespace qh
