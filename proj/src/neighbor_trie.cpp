#include "slpq/neighbor_trie.hpp"

#include <algorithm>
#include <stdexcept>

#include "slpq/ssa.hpp"

namespace slpq {

NeighborGraph build_neighbor_graph(const SlpGrammar& g, const SlpMetrics& m, const QMarks& qm) {
    NeighborGraph graph;
    graph.q = qm.q;
    graph.successors.resize(g.size() + 1);
    for (VarId i = 1; i <= g.size(); ++i) {
        if (m.lengths[i] >= qm.q) graph.vertices.push_back(i);
        const Rule& r = g.rule(i);
        if (r.terminal) continue;
        // The right neighbor below X_r(i) is unique; when X_r(i) is short the
        // left neighbor inside X_l(i) is.
        if (qm.lm[r.right] != kNoVar) graph.edges.emplace_back(i, qm.lm[r.right]);
        if (qm.rm[r.left] != kNoVar) graph.edges.emplace_back(qm.rm[r.left], i);
    }
    std::sort(graph.edges.begin(), graph.edges.end());
    graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end()), graph.edges.end());
    for (const auto& [from, to] : graph.edges) graph.successors[from].push_back(to);
    return graph;
}

Length FlattenedTrie::flattened_length() const {
    Length total = 0;
    for (const auto& s : segments) total += s.context.size() + s.body.size();
    return total;
}

WeightedText FlattenedTrie::to_weighted_text() const {
    WeightedText wt;
    wt.gram = q;
    const auto total = static_cast<std::size_t>(flattened_length());
    wt.text.reserve(total);
    wt.endWeights.reserve(total);
    for (const auto& s : segments) {
        wt.text += s.context;
        wt.endWeights.insert(wt.endWeights.end(), s.context.size(), 0);
        wt.text += s.body;
        wt.endWeights.insert(wt.endWeights.end(), s.bodyWeights.begin(), s.bodyWeights.end());
    }
    return wt;
}

FlattenedTrie flatten_neighbor_trie(const SlpGrammar& g, const SlpMetrics& m, const QMarks& qm,
                                    const NeighborGraph& graph) {
    const std::uint32_t q = qm.q;
    FlattenedTrie trie;
    trie.q = q;
    trie.edgeCount = graph.edge_count();
    trie.vertexCount = graph.vertices.size();
    if (m.textLength < q) return trie;

    const Length ctxLen = q - 1;
    std::vector<Length> labelLen(g.size() + 1, 0);
    for (VarId v : graph.vertices) labelLen[v] = ti_length(g, m, q, v) - ctxLen;

    std::vector<bool> visited(g.size() + 1, false);
    const VarId first = qm.lm[g.start()];  // stabs T[1..q]

    struct Work {
        VarId start;  // kNoVar is the dummy root
        std::string context;
    };
    std::vector<Work> stack;
    stack.push_back({kNoVar, {}});

    while (!stack.empty()) {
        Work w = std::move(stack.back());
        stack.pop_back();
        if (w.start != kNoVar && visited[w.start]) continue;

        TrieSegment seg;
        seg.context = std::move(w.context);
        Length l = 0;
        VarId k;
        VarId source;  // the branch spells a prefix of val(X_source)
        if (w.start == kNoVar) {
            seg.runs.push_back({kNoVar, 0, static_cast<std::size_t>(ctxLen), 0});
            l = ctxLen;
            k = first;
            source = first;
        } else {
            k = w.start;
            source = g.rule(k).right;
        }
        // Follow uniquely determined right neighbors.
        while (true) {
            seg.runs.push_back({k, static_cast<std::size_t>(l), static_cast<std::size_t>(labelLen[k]), m.vocc[k]});
            l += labelLen[k];
            visited[k] = true;
            const VarId right = g.rule(k).right;
            if (m.lengths[right] < q || visited[qm.lm[right]]) break;
            k = qm.lm[right];
        }

        seg.body = extract_prefix(g, m, source, l);
        seg.bodyWeights.assign(seg.body.size(), 0);
        for (const auto& run : seg.runs)
            std::fill_n(seg.bodyWeights.begin() + static_cast<std::ptrdiff_t>(run.offset), run.length, run.weight);
        trie.bodyTotal += seg.body.size();

        std::string tail = seg.context + seg.body;
        if (tail.size() > ctxLen) tail.erase(0, tail.size() - ctxLen);
        const auto& next = graph.successors[k];
        for (auto it = next.rbegin(); it != next.rend(); ++it)
            if (!visited[*it]) stack.push_back({*it, tail});

        trie.segments.push_back(std::move(seg));
    }
    trie.branchCount = trie.segments.size();
    return trie;
}

DupStats compute_dup_stats(const SlpGrammar& g, const SlpMetrics& m, const QMarks& qm, const FlattenedTrie& trie) {
    DupStats s;
    s.q = qm.q;
    if (m.textLength < qm.q) return s;

    const Length ctxLen = qm.q - 1;
    Length labelTotal = 0;
    for (VarId i = 1; i <= g.size(); ++i) {
        if (m.lengths[i] < qm.q) continue;
        if (m.vocc[i] == 0) throw std::invalid_argument("compute_dup_stats: variable " + std::to_string(i) + " is unused");
        const Length ti = ti_length(g, m, qm.q, i);
        s.sumTi += ti;
        labelTotal += ti - ctxLen;
        s.dup += (m.vocc[i] - 1) * (ti - ctxLen);
    }
    s.trieSize = trie.bodyTotal;
    s.flattenedLength = trie.flattened_length();
    s.edgeCount = trie.edgeCount;
    s.vertexCount = trie.vertexCount;

    if (s.trieSize != ctxLen + labelTotal) {
        throw std::logic_error("flattened trie body total " + std::to_string(s.trieSize) + " differs from (q-1) + sum of label lengths " +
                               std::to_string(ctxLen + labelTotal));
    }
    if (s.trieSize + s.dup != m.textLength) {
        throw std::logic_error("flattened trie body total " + std::to_string(s.trieSize) + " differs from |T| - dup = " +
                               std::to_string(m.textLength) + " - " + std::to_string(s.dup));
    }
    return s;
}

std::string to_csv_row(const DupStats& s) {
    return std::to_string(s.q) + ',' + std::to_string(s.sumTi) + ',' + std::to_string(s.trieSize) + ',' +
           std::to_string(s.dup) + ',' + std::to_string(s.flattenedLength) + ',' + std::to_string(s.edgeCount) + ',' +
           std::to_string(s.vertexCount);
}

}  // namespace slpq
