#include "qh/cyclo.hpp"

namespace qh {

Cyclo to_q(const CycloZ& z)
{
    Cyclo r(z.order());
    for (i64 j = 0; j < z.order(); ++j) r.coeffs()[j] = mpq_class(static_cast<long>(z.coeffs()[j]));
    return r;
}

void Laurent::clean()
{
    for (auto it = t_.begin(); it != t_.end();) {
        if (it->second.is_zero())
            it = t_.erase(it);
        else
            ++it;
    }
}

Laurent& Laurent::operator+=(const Laurent& o)
{
    for (auto& [k, c] : o.t_) {
        auto it = t_.find(k);
        if (it == t_.end())
            t_.emplace(k, c);
        else
            it->second += c;
    }
    clean();
    return *this;
}

Laurent Laurent::operator-() const
{
    Laurent r = *this;
    for (auto& [k, c] : r.t_) c = -c;
    return r;
}

Laurent Laurent::operator*(const Laurent& o) const
{
    Laurent r;
    for (auto& [k1, c1] : t_)
        for (auto& [k2, c2] : o.t_) {
            Cyclo p = c1 * c2;
            auto it = r.t_.find(k1 + k2);
            if (it == r.t_.end())
                r.t_.emplace(k1 + k2, p);
            else
                it->second += p;
        }
    r.clean();
    return r;
}

bool Laurent::is_zero() const
{
    for (auto& [k, c] : t_)
        if (!c.is_zero()) return false;
    return true;
}

cplx Laurent::value(cplx Y) const
{
    cplx s = 0;
    for (auto& [k, c] : t_) s += c.value() * std::pow(Y, k);
    return s;
}

std::string Laurent::str() const
{
    if (t_.empty()) return "0";
    std::string s;
    for (auto& [k, c] : t_) {
        if (!s.empty()) s += " + ";
        s += "[" + c.str() + "]";
        if (k) s += "*Y^" + std::to_string(k);
    }
    return s;
}

} // namespace qh
