#pragma once

#include "qh/arith.hpp"

#include <functional>
#include <unordered_map>
#include <vector>

namespace qh {

using IMat = std::vector<std::vector<i64>>;

// Smith form D = U*A*V of a square integer matrix; only V and V^{-1} are kept.
struct Smith {
    std::vector<i64> diag;
    IMat V;
    IMat Vinv;
};
Smith smith_normal_form(IMat A);

// Finite abelian group on opaque integer keys, fully enumerated.
// Invariants d_0 | d_1 | ... (all > 1), generator keys, and a discrete log
// table mapping every key to its coordinate vector.
class AbelianGroup {
public:
    using Mul = std::function<i64(i64, i64)>;

    AbelianGroup() = default;
    // Generates the subgroup spanned by candidates (consumed in order until
    // target_order is reached, if given).
    AbelianGroup(i64 identity, const Mul& mul, const std::vector<i64>& candidates, i64 target_order = 0);
    AbelianGroup(i64 identity, const Mul& mul, const std::function<i64(i64)>& candidate, i64 target_order);

    i64 order() const { return static_cast<i64>(keys_.size()); }
    const std::vector<i64>& invariants() const { return inv_; }
    const std::vector<i64>& gen_keys() const { return gens_; }
    const std::vector<i64>& keys() const { return keys_; }
    bool contains(i64 key) const { return index_.count(key) > 0; }
    const std::vector<i64>& dlog(i64 key) const;
    // key of prod gens^e
    i64 element(const std::vector<i64>& e) const;
    i64 identity() const { return identity_; }

private:
    i64 identity_ = 0;
    std::vector<i64> keys_;
    std::unordered_map<i64, i64> index_;
    std::vector<std::vector<i64>> coords_;
    std::vector<i64> inv_;
    std::vector<i64> gens_;
    // polycyclic presentation: g_j^{n_j} = prod_{i<j} g_i^{rel_j[i]}
    std::vector<i64> pc_ord_;
    std::vector<std::vector<i64>> pc_rel_;
    IMat V_, Vinv_;
    std::vector<int> keep_; // SNF columns with d > 1

    void build(const Mul& mul, const std::function<bool(i64&)>& next, i64 target_order);
};

} // namespace qh
