#pragma once

#include <map>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "regfm/eventual.hpp"
#include "regfm/fmanifold.hpp"
#include "regfm/fn_calculus.hpp"
#include "regfm/integrate.hpp"

namespace regfm {

// Per block, univariate polynomials F_1..F_m in the block's leading variable.
struct FunctionFamily {
    std::vector<std::vector<Poly>> F;  // [alpha][i], each with nvars() == 1
};

// Closed-form solution of d d_L V = 0 on a single Jordan block of size m
// (L = Euler multiplication):
//   V = F_m(r1) + sum_{s>=1} (1/s!) sum_{k_1..k_s in [2,m]}
//         r^{k_1}...r^{k_s} F^{(s-1)}_{m+s-sum k_j}(r1),
// with F_idx = 0 whenever idx <= 0. Output written in the global coordinate
// ring (nvars variables, block starting at offset).
Poly generate_block_V(int m, const std::vector<Poly>& F, int nvars, int offset);

Poly generate_V(const JordanSpec& spec, const FunctionFamily& family);

// One ascent step C -> C' with dC' = d_L C, gauge C'(base) = 0.
Poly chain_ascend(const JordanSpec& spec, const VField<Poly>& mu, const Poly& C,
                  const std::vector<Rational>& base);

using ChainEntry = std::variant<Poly, TruncSeries>;

// One descent step C -> C' with dC' = d_{L^{-1}} C, series-valued at base.
TruncSeries chain_descend(const JordanSpec& spec, const VField<Poly>& mu, const ChainEntry& C,
                          const std::vector<Rational>& base, int order);

struct ChainFamily {
    JordanSpec spec;
    VField<Poly> mu;
    std::vector<Rational> base;
    int order = 0;                  // truncation order for negative indices
    std::map<int, ChainEntry> entries;

    const ChainEntry& at(int alpha) const { return entries.at(alpha); }
    int lo() const { return entries.begin()->first; }
    int hi() const { return entries.rbegin()->first; }
};

// C^0 = generate_V(family); ascend for positive indices, descend for
// negative ones. mu must pass the eventual-identity test and V must satisfy
// d d_L V = 0 (re-verified for every mu).
ChainFamily build_chain(const JordanSpec& spec, const FunctionFamily& family,
                        const VField<Poly>& mu, const std::vector<Rational>& base, int lo, int hi,
                        int order);

// Re-checks d_k C^{alpha+1} = L^h_k d_h C^alpha for every stored consecutive
// pair and the gauge C^alpha(base) = 0 for alpha != 0; throws on violation.
void verify_chain(const ChainFamily& chain);

// W = L - V I.
OpMatrix<Poly> reduction_operator(const JordanSpec& spec, const VField<Poly>& mu, const Poly& V);

struct Hierarchy {
    std::vector<Poly> a;              // a_0..a_K
    std::vector<OpMatrix<Poly>> V;    // V_0..V_{K+1}
};

// a_{k+1} from da_{k+1} = d_L a_k - a_k da_0 (gauge a_{k+1}(base) = 0) and
// V_{k+1} = V_k L - a_k I starting from V_0 = I.
Hierarchy hierarchy_build(const JordanSpec& spec, const VField<Poly>& mu, const Poly& a0, int K,
                          const std::vector<Rational>& base);

nlohmann::json chain_to_json(const ChainFamily& chain);
ChainFamily chain_from_json(const nlohmann::json& j);

}  // namespace regfm
