#include "slpq/suffix_index.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace slpq {

std::vector<std::size_t> build_suffix_array(std::string_view text) {
    const std::size_t n = text.size();
    std::vector<std::size_t> sa(n);
    if (n == 0) return sa;

    std::vector<std::size_t> rank(n), tmp(n), order(n);
    std::vector<std::size_t> bucket(std::max<std::size_t>(n, 256) + 1);

    // Initial ranks are byte values; sa holds positions sorted by first byte.
    for (std::size_t i = 0; i < n; ++i) rank[i] = static_cast<std::uint8_t>(text[i]);
    {
        std::fill(bucket.begin(), bucket.begin() + 257, 0);
        for (std::size_t i = 0; i < n; ++i) ++bucket[rank[i] + 1];
        std::partial_sum(bucket.begin(), bucket.begin() + 257, bucket.begin());
        for (std::size_t i = 0; i < n; ++i) sa[bucket[rank[i]]++] = i;
        std::size_t r = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (k > 0 && text[sa[k]] != text[sa[k - 1]]) ++r;
            tmp[sa[k]] = r;
        }
        rank.swap(tmp);
        if (r + 1 == n) return sa;
    }

    for (std::size_t h = 1;; h <<= 1) {
        // Order by second key: suffixes without a partner at i + h first.
        std::size_t j = 0;
        for (std::size_t i = n - std::min(h, n); i < n; ++i) order[j++] = i;
        for (std::size_t k = 0; k < n; ++k)
            if (sa[k] >= h) order[j++] = sa[k] - h;

        // Stable counting sort by first key.
        std::fill(bucket.begin(), bucket.begin() + n + 1, 0);
        for (std::size_t i = 0; i < n; ++i) ++bucket[rank[i] + 1];
        std::partial_sum(bucket.begin(), bucket.begin() + n + 1, bucket.begin());
        for (std::size_t k = 0; k < n; ++k) sa[bucket[rank[order[k]]]++] = order[k];

        auto second = [&](std::size_t i) { return i + h < n ? rank[i + h] + 1 : 0; };
        std::size_t r = 0;
        tmp[sa[0]] = 0;
        for (std::size_t k = 1; k < n; ++k) {
            if (rank[sa[k]] != rank[sa[k - 1]] || second(sa[k]) != second(sa[k - 1])) ++r;
            tmp[sa[k]] = r;
        }
        rank.swap(tmp);
        if (r + 1 == n) break;
    }
    return sa;
}

std::vector<std::size_t> build_lcp_array(std::string_view text, const std::vector<std::size_t>& sa) {
    const std::size_t n = text.size();
    if (sa.size() != n) throw std::invalid_argument("build_lcp_array: suffix array length differs from text length");
    std::vector<std::size_t> lcp(n, 0);
    if (n == 0) return lcp;
    std::vector<std::size_t> inv(n);
    for (std::size_t k = 0; k < n; ++k) inv[sa[k]] = k;
    std::size_t l = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (inv[i] == 0) {
            l = 0;
            continue;
        }
        const std::size_t j = sa[inv[i] - 1];
        while (i + l < n && j + l < n && text[i + l] == text[j + l]) ++l;
        lcp[inv[i]] = l;
        if (l > 0) --l;
    }
    return lcp;
}

QGramReport weighted_qgram_counts(const WeightedText& wt) {
    const std::size_t q = wt.gram;
    if (q < 1) throw std::invalid_argument("weighted_qgram_counts: gram must be at least 1");
    if (wt.endWeights.size() != wt.text.size()) {
        throw std::invalid_argument("weighted_qgram_counts: weight count differs from text length");
    }
    for (std::size_t p = 0; p + 1 < q && p < wt.endWeights.size(); ++p) {
        if (wt.endWeights[p] != 0) throw std::invalid_argument("weighted_qgram_counts: weight before the first full q-gram");
    }

    QGramReport report;
    report.gram = wt.gram;
    report.sourceLength = wt.text.size();
    const std::size_t n = wt.text.size();
    if (n < q) return report;

    const auto sa = build_suffix_array(wt.text);
    const auto lcp = build_lcp_array(wt.text, sa);

    bool open = false;
    QGramEntry current{0, 0};
    auto close = [&] {
        if (open && current.totalWeight > 0) report.entries.push_back(current);
        open = false;
    };
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t start = sa[k];
        if (start + q > n) {
            close();
            continue;
        }
        const std::size_t end = start + q;  // 1-based end position
        if (!open || lcp[k] < q) {
            close();
            open = true;
            current = QGramEntry{end, 0};
        }
        current.totalWeight += wt.endWeights[end - 1];
        current.representativeEnd = std::min(current.representativeEnd, end);
    }
    close();
    return report;
}

std::string_view qgram_of(const QGramReport& report, const QGramEntry& entry, std::string_view source) {
    return source.substr(entry.representativeEnd - report.gram, report.gram);
}

std::vector<std::pair<std::string, Weight>> materialize(const QGramReport& report, std::string_view source) {
    std::vector<std::pair<std::string, Weight>> out;
    out.reserve(report.entries.size());
    for (const auto& e : report.entries) out.emplace_back(std::string(qgram_of(report, e, source)), e.totalWeight);
    return out;
}

WeightedText unit_weighted(std::string text, std::uint32_t q) {
    WeightedText wt;
    wt.gram = q;
    wt.endWeights.assign(text.size(), 0);
    for (std::size_t p = q == 0 ? 0 : q - 1; p < text.size(); ++p) wt.endWeights[p] = 1;
    wt.text = std::move(text);
    return wt;
}

Weight total_weight(const WeightedText& wt) {
    return std::accumulate(wt.endWeights.begin(), wt.endWeights.end(), Weight{0});
}

Weight total_weight(const QGramReport& report) {
    Weight sum = 0;
    for (const auto& e : report.entries) sum += e.totalWeight;
    return sum;
}

}  // namespace slpq
