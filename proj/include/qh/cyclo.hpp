#pragma once

#include "qh/arith.hpp"

#include <gmpxx.h>

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace qh {

using cplx = std::complex<double>;

// Element of Q(zeta_N) as a vector over the group ring Q[C_N].  After
// reduce() only exponents whose top digit in every prime-power component
// differs from q-1 carry coefficients, which is a basis, so equality and
// zero tests are exact.
template <class T>
class CycloT {
public:
    explicit CycloT(i64 N = 1) : N_(N), c_(N, T(0)) {}

    static CycloT scalar(const T& v, i64 N = 1)
    {
        CycloT r(N);
        r.c_[0] = v;
        return r;
    }
    static CycloT root(const RootU& z, const T& coef = T(1))
    {
        CycloT r(z.den);
        r.c_[z.num] = coef;
        return r;
    }

    i64 order() const { return N_; }
    const std::vector<T>& coeffs() const { return c_; }
    std::vector<T>& coeffs() { return c_; }

    // lift to Q(zeta_M), N | M
    CycloT lift(i64 M) const
    {
        if (M == N_) return *this;
        if (M % N_ != 0) throw Error("Cyclo::lift: order does not divide target");
        CycloT r(M);
        i64 s = M / N_;
        for (i64 j = 0; j < N_; ++j)
            if (c_[j] != 0) r.c_[j * s] = c_[j];
        return r;
    }

    void add_root(i64 k, const T& coef)
    {
        c_[mod(k, N_)] += coef;
    }

    CycloT& operator+=(const CycloT& o)
    {
        if (o.N_ != N_) {
            i64 M = lcm(N_, o.N_);
            *this = lift(M);
            CycloT t = o.lift(M);
            for (i64 j = 0; j < M; ++j) c_[j] += t.c_[j];
            return *this;
        }
        for (i64 j = 0; j < N_; ++j) c_[j] += o.c_[j];
        return *this;
    }
    CycloT& operator-=(const CycloT& o)
    {
        CycloT t = o;
        for (auto& x : t.c_) x = -x;
        return *this += t;
    }
    CycloT operator+(const CycloT& o) const { CycloT r = *this; r += o; return r; }
    CycloT operator-(const CycloT& o) const { CycloT r = *this; r -= o; return r; }
    CycloT operator-() const { CycloT r = *this; for (auto& x : r.c_) x = -x; return r; }

    CycloT operator*(const CycloT& o) const
    {
        i64 M = lcm(N_, o.N_);
        CycloT a = lift(M), b = o.lift(M), r(M);
        for (i64 i = 0; i < M; ++i) {
            if (a.c_[i] == 0) continue;
            for (i64 j = 0; j < M; ++j) {
                if (b.c_[j] == 0) continue;
                i64 k = i + j;
                if (k >= M) k -= M;
                r.c_[k] += a.c_[i] * b.c_[j];
            }
        }
        r.reduce();
        return r;
    }
    CycloT operator*(const T& s) const
    {
        CycloT r = *this;
        for (auto& x : r.c_) x *= s;
        return r;
    }
    CycloT& operator*=(const CycloT& o) { return *this = *this * o; }

    // multiply by zeta^k of the given root
    CycloT times_root(const RootU& z) const
    {
        i64 M = lcm(N_, z.den);
        CycloT a = lift(M), r(M);
        i64 sh = z.num * (M / z.den);
        for (i64 j = 0; j < M; ++j)
            if (a.c_[j] != 0) r.c_[(j + sh) % M] = a.c_[j];
        return r;
    }

    void reduce()
    {
        for (auto [q, e] : factor_cached()) {
            i64 qe = ipow(q, e), top = qe / q;
            i64 Eq = crt_idem(qe);
            for (i64 j = 0; j < N_; ++j) {
                if (c_[j] == 0) continue;
                if ((j % qe) / top != q - 1) continue;
                T v = c_[j];
                c_[j] = 0;
                for (i64 ip = 0; ip <= q - 2; ++ip) {
                    i64 shift = mod128((i128)(q - 1 - ip) * top % N_ * Eq, N_);
                    c_[mod(j - shift, N_)] -= v;
                }
            }
        }
    }

    bool is_zero() const
    {
        CycloT t = *this;
        t.reduce();
        for (auto& x : t.c_)
            if (x != 0) return false;
        return true;
    }
    bool operator==(const CycloT& o) const { return (*this - o).is_zero(); }
    bool operator!=(const CycloT& o) const { return !(*this == o); }

    // returns true and sets v if the element is rational
    bool as_rational(T& v) const
    {
        CycloT t = *this;
        t.reduce();
        for (i64 j = 1; j < N_; ++j)
            if (t.c_[j] != 0) return false;
        v = t.c_[0];
        return true;
    }

    cplx value() const
    {
        cplx s = 0;
        for (i64 j = 0; j < N_; ++j) {
            if (c_[j] == 0) continue;
            double ang = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(N_);
            s += to_double(c_[j]) * cplx(std::cos(ang), std::sin(ang));
        }
        return s;
    }

    std::string str() const
    {
        CycloT t = *this;
        t.reduce();
        std::string s;
        for (i64 j = 0; j < N_; ++j) {
            if (t.c_[j] == 0) continue;
            if (!s.empty()) s += " + ";
            s += "(" + to_str(t.c_[j]) + ")";
            if (j) s += "*z" + std::to_string(N_) + "^" + std::to_string(j);
        }
        return s.empty() ? "0" : s;
    }

private:
    i64 N_;
    std::vector<T> c_;

    std::vector<std::pair<i64, int>> factor_cached() const { return factor(N_); }

    i64 crt_idem(i64 qe) const
    {
        i64 rest = N_ / qe;
        if (rest == 1) return 1;
        // Eq = rest * (rest^{-1} mod qe)
        return mod128((i128)rest * invmod(rest, qe), N_);
    }

    static double to_double(const mpq_class& x) { return x.get_d(); }
    static double to_double(i64 x) { return static_cast<double>(x); }
    static std::string to_str(const mpq_class& x) { return x.get_str(); }
    static std::string to_str(i64 x) { return std::to_string(x); }
};

using Cyclo = CycloT<mpq_class>;
using CycloZ = CycloT<i64>;

Cyclo to_q(const CycloZ& z);

// Laurent polynomial in a formal variable Y with cyclotomic coefficients.
// Local induced-vector values are elements of this ring with Y = Nm^{-z/2}.
class Laurent {
public:
    Laurent() = default;
    static Laurent mono(const Cyclo& c, int k)
    {
        Laurent r;
        if (!c.is_zero()) r.t_[k] = c;
        return r;
    }
    static Laurent one() { return mono(Cyclo::scalar(1), 0); }
    static Laurent root(const RootU& z, int k = 0) { return mono(Cyclo::root(z), k); }

    const std::map<int, Cyclo>& terms() const { return t_; }

    Laurent& operator+=(const Laurent& o);
    Laurent operator+(const Laurent& o) const { Laurent r = *this; r += o; return r; }
    Laurent operator-() const;
    Laurent operator-(const Laurent& o) const { return *this + (-o); }
    Laurent operator*(const Laurent& o) const;
    bool is_zero() const;
    bool operator==(const Laurent& o) const { return (*this - o).is_zero(); }
    cplx value(cplx Y) const;
    std::string str() const;

private:
    std::map<int, Cyclo> t_;
    void clean();
};

} // namespace qh
