#pragma once

// Suffix and LCP arrays, and the weighted q-gram counter shared by every
// counting pipeline.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slpq/slp.hpp"

namespace slpq {

/// A byte string whose positions carry the weight of the q-gram ending there.
/// endWeights[p] (0-based) belongs to text[p - gram + 1 .. p]; the first
/// gram - 1 entries are always zero.
struct WeightedText {
    std::string text;
    std::vector<Weight> endWeights;
    std::uint32_t gram = 1;
};

struct QGramEntry {
    std::size_t representativeEnd;  // 1-based end position in the source text
    Weight totalWeight;

    friend bool operator==(const QGramEntry&, const QGramEntry&) = default;
};

/// Distinct q-grams of a WeightedText with positive total weight, in byte
/// order of the q-gram.
struct QGramReport {
    std::vector<QGramEntry> entries;
    std::uint32_t gram = 1;
    std::size_t sourceLength = 0;
};

/// 0-based suffix start positions in ascending lexicographic byte order.
/// Prefix doubling with radix passes, O(n log n).
std::vector<std::size_t> build_suffix_array(std::string_view text);

/// Kasai et al.; lcp[0] = 0 and lcp[k] is the common prefix length of the
/// suffixes at sa[k-1] and sa[k].
std::vector<std::size_t> build_lcp_array(std::string_view text, const std::vector<std::size_t>& sa);

QGramReport weighted_qgram_counts(const WeightedText& wt);

std::string_view qgram_of(const QGramReport& report, const QGramEntry& entry, std::string_view source);

/// (q-gram, total weight) pairs in report order.
std::vector<std::pair<std::string, Weight>> materialize(const QGramReport& report, std::string_view source);

/// Unit weights on every position that ends a full q-gram.
WeightedText unit_weighted(std::string text, std::uint32_t q);

Weight total_weight(const WeightedText& wt);
Weight total_weight(const QGramReport& report);

}  // namespace slpq
