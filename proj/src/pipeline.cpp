#include "slpq/pipeline.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "slpq/ssa.hpp"

namespace slpq {

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::nsa: return "nsa";
        case Algorithm::ssa: return "ssa";
        case Algorithm::stsa: return "stsa";
    }
    return "?";
}

Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : kAllAlgorithms)
        if (to_string(a) == name) return a;
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

WeightedText reduce(const SlpGrammar& g, const SlpMetrics& m, std::uint32_t q, Algorithm algo) {
    if (q < 2) throw std::invalid_argument("reduce: q must be at least 2");
    switch (algo) {
        case Algorithm::nsa: return unit_weighted(expand(g, m), q);
        case Algorithm::ssa: return build_ssa_text(g, m, q);
        case Algorithm::stsa: {
            const QMarks qm = compute_qmarks(g, m, q);
            const NeighborGraph graph = build_neighbor_graph(g, m, qm);
            return flatten_neighbor_trie(g, m, qm, graph).to_weighted_text();
        }
    }
    throw std::invalid_argument("unknown algorithm");
}

CountResult count_qgrams(const SlpGrammar& g, const SlpMetrics& m, std::uint32_t q, Algorithm algo) {
    CountResult out;
    out.source = reduce(g, m, q, algo);
    out.report = weighted_qgram_counts(out.source);
    return out;
}

namespace {

std::vector<std::pair<std::string, Weight>> char_histogram(const SlpGrammar& g, const SlpMetrics& m) {
    std::vector<std::pair<std::string, Weight>> out;
    const auto freq = char_frequencies(g, m);
    for (int b = 0; b < 256; ++b)
        if (freq[b] > 0) out.emplace_back(std::string(1, static_cast<char>(b)), freq[b]);
    return out;
}

}  // namespace

std::vector<std::pair<std::string, Weight>> qgram_histogram(const SlpGrammar& g, const SlpMetrics& m,
                                                            std::uint32_t q, Algorithm algo) {
    if (q < 1) throw std::invalid_argument("q must be at least 1");
    if (q == 1) return char_histogram(g, m);
    const CountResult r = count_qgrams(g, m, q, algo);
    return materialize(r.report, r.source.text);
}

std::string escape_bytes(std::string_view raw) {
    static constexpr char kHex[] = "0123456789ABCDEF";
    std::string out;
    out.reserve(raw.size());
    for (char c : raw) {
        const auto b = static_cast<std::uint8_t>(c);
        if (b == '\\') {
            out += "\\\\";
        } else if (b >= 0x20 && b <= 0x7E) {
            out += c;
        } else {
            out += "\\x";
            out += kHex[b >> 4];
            out += kHex[b & 0xF];
        }
    }
    return out;
}

std::string unescape_bytes(std::string_view escaped) {
    auto hexval = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        return -1;
    };
    std::string out;
    for (std::size_t i = 0; i < escaped.size(); ++i) {
        if (escaped[i] != '\\') {
            out += escaped[i];
            continue;
        }
        if (i + 1 < escaped.size() && escaped[i + 1] == '\\') {
            out += '\\';
            ++i;
        } else if (i + 3 < escaped.size() && escaped[i + 1] == 'x' && hexval(escaped[i + 2]) >= 0 &&
                   hexval(escaped[i + 3]) >= 0) {
            out += static_cast<char>(hexval(escaped[i + 2]) * 16 + hexval(escaped[i + 3]));
            i += 3;
        } else {
            throw std::invalid_argument("bad escape sequence at offset " + std::to_string(i));
        }
    }
    return out;
}

std::string format_counts(const SlpGrammar& g, std::uint32_t q, Algorithm algo, bool expandOutput) {
    if (q < 1) throw std::invalid_argument("q must be at least 1");
    const SlpMetrics m = compute_metrics(g);
    std::string out;
    if (q == 1 || expandOutput) {
        for (const auto& [gram, count] : qgram_histogram(g, m, q, algo)) {
            out += escape_bytes(gram);
            out += '\t';
            out += std::to_string(count);
            out += '\n';
        }
        return out;
    }
    const CountResult r = count_qgrams(g, m, q, algo);
    out += algo == Algorithm::nsa ? "# reference: T\n" : "# reference: z\n";
    for (const auto& e : r.report.entries) {
        out += std::to_string(e.representativeEnd);
        out += '\t';
        out += std::to_string(e.totalWeight);
        out += '\n';
    }
    return out;
}

std::string run_count(const CountRequest& req) {
    const SlpGrammar g = load_slp_file(req.grammarPath);
    std::string doc = format_counts(g, req.q, req.algorithm, req.expandOutput);
    if (!req.outputPath.empty()) {
        std::ofstream out(req.outputPath, std::ios::binary);
        if (!out) throw SlpError("cannot write " + req.outputPath);
        out << doc;
    }
    return doc;
}

namespace {

std::string describe_divergence(std::uint32_t q, Algorithm a, Algorithm b,
                                const std::vector<std::pair<std::string, Weight>>& x,
                                const std::vector<std::pair<std::string, Weight>>& y) {
    std::size_t i = 0;
    while (i < x.size() && i < y.size() && x[i] == y[i]) ++i;
    std::string gram;
    std::string detail;
    if (i < x.size() && i < y.size()) {
        // Report the smaller of the two differing q-grams.
        if (x[i].first == y[i].first) {
            gram = x[i].first;
            detail = std::string(to_string(a)) + "=" + std::to_string(x[i].second) + " " + std::string(to_string(b)) +
                     "=" + std::to_string(y[i].second);
        } else if (x[i].first < y[i].first) {
            gram = x[i].first;
            detail = "only in " + std::string(to_string(a));
        } else {
            gram = y[i].first;
            detail = "only in " + std::string(to_string(b));
        }
    } else if (i < x.size()) {
        gram = x[i].first;
        detail = "only in " + std::string(to_string(a));
    } else {
        gram = y[i].first;
        detail = "only in " + std::string(to_string(b));
    }
    return "q=" + std::to_string(q) + ": " + std::string(to_string(a)) + " and " + std::string(to_string(b)) +
           " differ at q-gram '" + escape_bytes(gram) + "' (" + detail + ")";
}

}  // namespace

VerifyResult run_verify(const SlpGrammar& g, std::uint32_t qMax, const ReductionHook& hook) {
    if (qMax < 2) throw std::invalid_argument("run_verify: qMax must be at least 2");
    VerifyResult result;
    const SlpMetrics m = compute_metrics(g);
    const Length n = g.size();
    const Length top = std::min<Length>(qMax, m.textLength);
    std::ostringstream log;
    auto fail = [&](const std::string& why) {
        result.ok = false;
        log << "FAIL " << why << '\n';
        result.report = log.str();
        return result;
    };

    for (std::uint32_t q = 2; q <= top; ++q) {
        std::vector<std::pair<std::string, Weight>> maps[3];
        for (int k = 0; k < 3; ++k) {
            const Algorithm algo = kAllAlgorithms[k];
            WeightedText wt = reduce(g, m, q, algo);
            if (hook) hook(q, algo, wt);
            maps[k] = materialize(weighted_qgram_counts(wt), wt.text);
        }
        for (int k = 1; k < 3; ++k) {
            if (maps[k] != maps[0]) return fail(describe_divergence(q, kAllAlgorithms[0], kAllAlgorithms[k], maps[0], maps[k]));
        }

        const QMarks qm = compute_qmarks(g, m, q);
        const NeighborGraph graph = build_neighbor_graph(g, m, qm);
        const FlattenedTrie trie = flatten_neighbor_trie(g, m, qm, graph);
        DupStats s;
        try {
            s = compute_dup_stats(g, m, qm, trie);
        } catch (const std::exception& e) {
            return fail("q=" + std::to_string(q) + ": " + e.what());
        }
        if (s.edgeCount > 2 * n) return fail("q=" + std::to_string(q) + ": edge count exceeds 2n");
        if (s.flattenedLength > s.sumTi) return fail("q=" + std::to_string(q) + ": flattened length exceeds sum of |t_i|");
        if (s.sumTi > 2 * Length{q - 1} * n) return fail("q=" + std::to_string(q) + ": sum of |t_i| exceeds 2(q-1)n");

        std::vector<int> seen(g.size() + 1, 0);
        for (const auto& seg : trie.segments)
            for (const auto& run : seg.runs)
                if (run.variable != kNoVar) ++seen[run.variable];
        for (VarId v : graph.vertices) {
            if (seen[v] != 1) {
                return fail("q=" + std::to_string(q) + ": variable " + std::to_string(v) + " emitted " +
                            std::to_string(seen[v]) + " times");
            }
        }
        log << "ok q=" << q << " distinct=" << maps[0].size() << " stats=" << to_csv_row(s) << '\n';
    }
    result.report = log.str();
    return result;
}

DupStats stats_for(const SlpGrammar& g, const SlpMetrics& m, std::uint32_t q) {
    const QMarks qm = compute_qmarks(g, m, q);
    const NeighborGraph graph = build_neighbor_graph(g, m, qm);
    const FlattenedTrie trie = flatten_neighbor_trie(g, m, qm, graph);
    return compute_dup_stats(g, m, qm, trie);
}

std::string run_stats(const SlpGrammar& g, const std::vector<std::uint32_t>& qList) {
    const SlpMetrics m = compute_metrics(g);
    std::string out = "q,sum_ti,trie_size,dup,flattened_len,edges,vertices\n";
    for (std::uint32_t q : qList) {
        out += to_csv_row(stats_for(g, m, q));
        out += '\n';
    }
    return out;
}

std::vector<BenchRow> run_bench(const SlpGrammar& g, const std::vector<std::uint32_t>& qList,
                                std::uint32_t repetitions) {
    if (repetitions < 1) throw std::invalid_argument("run_bench: repetitions must be at least 1");
    using Clock = std::chrono::steady_clock;
    const SlpMetrics loadMetrics = compute_metrics(g);
    const std::string text = expand(g, loadMetrics);
    std::vector<BenchRow> rows;
    for (std::uint32_t q : qList) {
        if (q < 2) throw std::invalid_argument("run_bench: q must be at least 2");
        for (Algorithm algo : kAllAlgorithms) {
            BenchRow row{q, algo, 0.0, 0};
            double total = 0.0;
            for (std::uint32_t rep = 0; rep < repetitions; ++rep) {
                const auto t0 = Clock::now();
                WeightedText wt;
                if (algo == Algorithm::nsa) {
                    wt = unit_weighted(text, q);
                } else {
                    const SlpMetrics m = compute_metrics(g);
                    wt = reduce(g, m, q, algo);
                }
                const QGramReport report = weighted_qgram_counts(wt);
                total += std::chrono::duration<double>(Clock::now() - t0).count();
                row.problemSize = wt.text.size();
                if (report.sourceLength != wt.text.size()) throw std::logic_error("report/source length mismatch");
            }
            row.meanSeconds = total / repetitions;
            rows.push_back(row);
        }
    }
    return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string out = "q,algo,mean_seconds,problem_size\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.6f", r.meanSeconds);
        out += std::to_string(r.q) + ',' + std::string(to_string(r.algo)) + ',' + buf + ',' +
               std::to_string(r.problemSize) + '\n';
    }
    return out;
}

std::vector<std::uint32_t> parse_q_list(std::string_view text) {
    std::vector<std::uint32_t> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        std::string_view item = text.substr(pos, comma - pos);
        std::uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size()) {
            throw std::invalid_argument("bad q list entry '" + std::string(item) + "'");
        }
        out.push_back(v);
        pos = comma + 1;
    }
    return out;
}

}  // namespace slpq
