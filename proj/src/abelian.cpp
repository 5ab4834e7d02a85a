#include "qh/abelian.hpp"

#include <cstdlib>

namespace qh {

Smith smith_normal_form(IMat A)
{
    size_t n = A.size(), m = n ? A[0].size() : 0;
    Smith S;
    S.V.assign(m, std::vector<i64>(m, 0));
    S.Vinv.assign(m, std::vector<i64>(m, 0));
    for (size_t i = 0; i < m; ++i) S.V[i][i] = S.Vinv[i][i] = 1;

    auto colop = [&](size_t j, size_t t, i64 q) { // col_j -= q col_t
        for (size_t i = 0; i < n; ++i) A[i][j] -= q * A[i][t];
        for (size_t i = 0; i < m; ++i) S.V[i][j] -= q * S.V[i][t];
        for (size_t k = 0; k < m; ++k) S.Vinv[t][k] += q * S.Vinv[j][k];
    };
    auto colswap = [&](size_t a, size_t b) {
        if (a == b) return;
        for (size_t i = 0; i < n; ++i) std::swap(A[i][a], A[i][b]);
        for (size_t i = 0; i < m; ++i) std::swap(S.V[i][a], S.V[i][b]);
        std::swap(S.Vinv[a], S.Vinv[b]);
    };

    size_t kmax = std::min(n, m);
    S.diag.assign(kmax, 0);
    for (size_t t = 0; t < kmax; ++t) {
        for (;;) {
            size_t pr = n, pc = m;
            i64 best = 0;
            for (size_t i = t; i < n; ++i)
                for (size_t j = t; j < m; ++j)
                    if (A[i][j] != 0 && (best == 0 || std::llabs(A[i][j]) < best)) {
                        best = std::llabs(A[i][j]);
                        pr = i;
                        pc = j;
                    }
            if (best == 0) break;
            std::swap(A[t], A[pr]);
            colswap(t, pc);
            bool clean = true;
            for (size_t i = t + 1; i < n; ++i) {
                if (A[i][t] == 0) continue;
                i64 q = A[i][t] / A[t][t];
                for (size_t j = t; j < m; ++j) A[i][j] -= q * A[t][j];
                if (A[i][t] != 0) clean = false;
            }
            for (size_t j = t + 1; j < m; ++j) {
                if (A[t][j] == 0) continue;
                colop(j, t, A[t][j] / A[t][t]);
                if (A[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            bool divisible = true;
            for (size_t i = t + 1; i < n && divisible; ++i)
                for (size_t j = t + 1; j < m; ++j)
                    if (A[i][j] % A[t][t] != 0) {
                        for (size_t k = t; k < m; ++k) A[t][k] += A[i][k];
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        S.diag[t] = std::llabs(A[t][t]);
    }
    return S;
}

AbelianGroup::AbelianGroup(i64 identity, const Mul& mul, const std::vector<i64>& candidates, i64 target_order)
{
    identity_ = identity;
    size_t pos = 0;
    build(mul, [&](i64& g) {
        if (pos >= candidates.size()) return false;
        g = candidates[pos++];
        return true;
    }, target_order);
}

AbelianGroup::AbelianGroup(i64 identity, const Mul& mul, const std::function<i64(i64)>& candidate, i64 target_order)
{
    identity_ = identity;
    i64 pos = 0;
    build(mul, [&](i64& g) {
        g = candidate(pos++);
        return true;
    }, target_order);
}

void AbelianGroup::build(const Mul& mul, const std::function<bool(i64&)>& next, i64 target_order)
{
    keys_ = {identity_};
    index_ = {{identity_, 0}};
    i64 g;
    while ((target_order == 0 || static_cast<i64>(keys_.size()) < target_order) && next(g)) {
        if (index_.count(g)) continue;
        i64 H = static_cast<i64>(keys_.size());
        i64 x = g, nn = 1;
        std::vector<i64> powers = {identity_};
        while (!index_.count(x)) {
            powers.push_back(x);
            x = mul(x, g);
            ++nn;
        }
        // relation g^nn = x, x in H; decode x into mixed-radix coordinates
        std::vector<i64> rel(pc_ord_.size(), 0);
        i64 ix = index_.at(x);
        for (size_t j = 0; j < pc_ord_.size(); ++j) {
            rel[j] = ix % pc_ord_[j];
            ix /= pc_ord_[j];
        }
        pc_ord_.push_back(nn);
        pc_rel_.push_back(rel);
        keys_.reserve(H * nn);
        for (i64 i = 1; i < nn; ++i)
            for (i64 h = 0; h < H; ++h) {
                i64 k = mul(powers[i], keys_[h]);
                index_.emplace(k, static_cast<i64>(keys_.size()));
                keys_.push_back(k);
            }
        if (static_cast<i64>(index_.size()) != static_cast<i64>(keys_.size()))
            throw Error("AbelianGroup: multiplication is not a group law");
    }
    if (target_order && static_cast<i64>(keys_.size()) != target_order)
        throw Error("AbelianGroup: candidates do not generate the target group");

    size_t k = pc_ord_.size();
    IMat R(k, std::vector<i64>(k, 0));
    for (size_t j = 0; j < k; ++j) {
        R[j][j] = pc_ord_[j];
        for (size_t i = 0; i < j; ++i) R[j][i] = -pc_rel_[j][i];
    }
    Smith S = smith_normal_form(R);
    V_ = S.V;
    Vinv_ = S.Vinv;
    keep_.clear();
    inv_.clear();
    for (size_t i = 0; i < k; ++i)
        if (S.diag[i] > 1) {
            keep_.push_back(static_cast<int>(i));
            inv_.push_back(S.diag[i]);
        }

    // coordinates of every element: x*V mod d
    coords_.assign(keys_.size(), std::vector<i64>(keep_.size(), 0));
    std::vector<i64> x(k);
    for (size_t idx = 0; idx < keys_.size(); ++idx) {
        i64 r = static_cast<i64>(idx);
        for (size_t j = 0; j < k; ++j) {
            x[j] = r % pc_ord_[j];
            r /= pc_ord_[j];
        }
        for (size_t c = 0; c < keep_.size(); ++c) {
            i128 s = 0;
            for (size_t j = 0; j < k; ++j) s += (i128)x[j] * V_[j][keep_[c]];
            coords_[idx][c] = mod128(s, inv_[c]);
        }
    }
    gens_.clear();
    for (size_t c = 0; c < keep_.size(); ++c) {
        std::vector<i64> e(keep_.size(), 0);
        e[c] = 1;
        gens_.push_back(element(e));
    }
}

const std::vector<i64>& AbelianGroup::dlog(i64 key) const
{
    auto it = index_.find(key);
    if (it == index_.end()) throw Error("AbelianGroup::dlog: element not in group");
    return coords_[it->second];
}

i64 AbelianGroup::element(const std::vector<i64>& e) const
{
    size_t k = pc_ord_.size();
    std::vector<i128> x(k, 0);
    for (size_t c = 0; c < keep_.size(); ++c)
        for (size_t j = 0; j < k; ++j) x[j] += (i128)e[c] * Vinv_[keep_[c]][j];
    // collection from the top down
    for (size_t jj = k; jj-- > 0;) {
        i128 q = x[jj] / pc_ord_[jj];
        i128 r = x[jj] % pc_ord_[jj];
        if (r < 0) {
            r += pc_ord_[jj];
            --q;
        }
        x[jj] = r;
        for (size_t i = 0; i < jj; ++i) x[i] += q * pc_rel_[jj][i];
    }
    i64 idx = 0, mult = 1;
    for (size_t j = 0; j < k; ++j) {
        idx += static_cast<i64>(x[j]) * mult;
        mult *= pc_ord_[j];
    }
    return keys_[idx];
}

} // namespace qh
