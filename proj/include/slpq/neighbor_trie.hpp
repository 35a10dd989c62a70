#pragma once

// q-gram neighbor graph and the flattened neighbor trie.
//
// X_j is a right q-gram neighbor of X_i when, for some position u, the node
// stabbing T[u..u+q-1] is labelled X_i and the node stabbing T[u+1..u+q] is
// labelled X_j. A depth-first spanning tree of that graph, rooted at a dummy
// variable whose label is T[1..q-1], spells every q-gram occurrence class
// once: each X_i contributes label(X_i) = t_i[q..|t_i|] weighted by
// vOcc(X_i). Instead of materialising the trie, each branch is written out as
// its own segment, preceded by q-1 characters of zero-weighted context taken
// from the path above it, so the result can be counted with the ordinary
// weighted q-gram counter.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slpq/slp.hpp"
#include "slpq/suffix_index.hpp"

namespace slpq {

struct NeighborGraph {
    std::uint32_t q = 2;
    std::vector<VarId> vertices;                   // ascending; |X_i| >= q
    std::vector<std::pair<VarId, VarId>> edges;    // sorted, deduplicated
    std::vector<std::vector<VarId>> successors;    // per variable, ascending

    std::size_t edge_count() const noexcept { return edges.size(); }
};

/// A contiguous run of body characters spelling label(X_variable).
/// variable == kNoVar marks the dummy root label T[1..q-1].
struct BodyRun {
    VarId variable = kNoVar;
    std::size_t offset = 0;
    std::size_t length = 0;
    Weight weight = 0;
};

struct TrieSegment {
    std::string context;  // zero-weighted
    std::string body;
    std::vector<Weight> bodyWeights;
    std::vector<BodyRun> runs;
};

struct FlattenedTrie {
    std::uint32_t q = 2;
    std::vector<TrieSegment> segments;
    Length bodyTotal = 0;
    std::size_t branchCount = 0;
    std::size_t edgeCount = 0;
    std::size_t vertexCount = 0;

    Length flattened_length() const;
    WeightedText to_weighted_text() const;
};

struct DupStats {
    std::uint32_t q = 2;
    Length sumTi = 0;
    Length trieSize = 0;
    Length dup = 0;
    Length flattenedLength = 0;
    std::size_t edgeCount = 0;
    std::size_t vertexCount = 0;

    friend bool operator==(const DupStats&, const DupStats&) = default;
};

NeighborGraph build_neighbor_graph(const SlpGrammar& g, const SlpMetrics& m, const QMarks& qm);

/// Depth-first construction of the neighbor trie, one segment per branch.
/// Children are visited in ascending variable order. Returns an empty trie
/// when |T| < q.
FlattenedTrie flatten_neighbor_trie(const SlpGrammar& g, const SlpMetrics& m, const QMarks& qm,
                                    const NeighborGraph& graph);

/// Size statistics for a flattened trie. The trie size measured from the
/// segments is checked against |T| - dup; a mismatch throws std::logic_error.
DupStats compute_dup_stats(const SlpGrammar& g, const SlpMetrics& m, const QMarks& qm, const FlattenedTrie& trie);

/// "q,sum_ti,trie_size,dup,flattened_len,edges,vertices"
std::string to_csv_row(const DupStats& s);

}  // namespace slpq
