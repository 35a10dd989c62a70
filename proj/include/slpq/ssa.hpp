#pragma once

// The O(qn) reduction: every q-gram occurrence of T is stabbed by exactly one
// derivation-tree node, and all q-grams stabbed by nodes labelled X_i lie in
// t_i = suf(val(X_l), q-1) pre(val(X_r), q-1). Counting q-grams of the t_i,
// each weighted by vOcc(X_i), therefore counts q-grams of T.

#include <cstdint>
#include <string>

#include "slpq/slp.hpp"
#include "slpq/suffix_index.hpp"

namespace slpq {

struct TiString {
    VarId variable = kNoVar;
    std::string content;
    Weight weight = 0;
};

/// Throws std::invalid_argument if X_i is a terminal or q < 2.
TiString make_ti(const SlpGrammar& g, const SlpMetrics& m, std::uint32_t q, VarId i);

/// |t_i| without building it.
Length ti_length(const SlpGrammar& g, const SlpMetrics& m, std::uint32_t q, VarId i);

/// Concatenation of every t_i with |t_i| >= q in increasing i. Inside each
/// segment the first q-1 positions weigh 0 and the rest weigh vOcc(X_i).
WeightedText build_ssa_text(const SlpGrammar& g, const SlpMetrics& m, std::uint32_t q);

}  // namespace slpq
