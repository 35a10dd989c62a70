#pragma once

// End-to-end q-gram counting over an SLP by three routes, plus the
// cross-checking, statistics and benchmark drivers used by the slpq tool.
//
//   nsa  - decompress T and count with unit weights
//   ssa  - count the weighted concatenation of the t_i strings
//   stsa - count the flattened neighbor trie

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slpq/neighbor_trie.hpp"
#include "slpq/slp.hpp"
#include "slpq/suffix_index.hpp"

namespace slpq {

enum class Algorithm { nsa, ssa, stsa };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::nsa, Algorithm::ssa, Algorithm::stsa};

std::string_view to_string(Algorithm a);
/// Throws std::invalid_argument for unknown names.
Algorithm parse_algorithm(std::string_view name);

/// Reduction string for q >= 2. nsa returns T with unit weights.
WeightedText reduce(const SlpGrammar& g, const SlpMetrics& m, std::uint32_t q, Algorithm algo);

struct CountResult {
    WeightedText source;
    QGramReport report;
};

CountResult count_qgrams(const SlpGrammar& g, const SlpMetrics& m, std::uint32_t q, Algorithm algo);

/// (q-gram, count) pairs in byte order. q = 1 uses the character histogram.
std::vector<std::pair<std::string, Weight>> qgram_histogram(const SlpGrammar& g, const SlpMetrics& m,
                                                            std::uint32_t q, Algorithm algo);

/// Bytes 0x20..0x7E other than '\' print as themselves, '\' as "\\" and
/// everything else as \xNN with uppercase hex digits.
std::string escape_bytes(std::string_view raw);
/// Inverse of escape_bytes. Throws std::invalid_argument on bad escapes.
std::string unescape_bytes(std::string_view escaped);

struct CountRequest {
    std::string grammarPath;
    std::uint32_t q = 2;
    Algorithm algorithm = Algorithm::stsa;
    bool expandOutput = false;
    std::string outputPath;  // empty: caller prints the document
};

/// TSV document. With expand, lines are "<escaped q-gram>\t<count>". Without,
/// a "# reference: T" or "# reference: z" header precedes
/// "<1-based end position in that string>\t<count>" lines. For q = 1 the
/// character form is always used since no reduction string is built.
std::string format_counts(const SlpGrammar& g, std::uint32_t q, Algorithm algo, bool expandOutput);

/// Loads the grammar, formats the counts and writes them to outputPath when
/// one is given. Returns the document.
std::string run_count(const CountRequest& req);

/// Hook applied to each reduction string before counting; used to inject
/// faults when testing the verifier.
using ReductionHook = std::function<void(std::uint32_t q, Algorithm algo, WeightedText& wt)>;

struct VerifyResult {
    bool ok = true;
    std::string report;
};

/// For q = 2..min(qMax, |T|): all three routes must produce identical
/// (q-gram, count) maps, and the trie statistics must satisfy the size
/// identities and bounds. Stops at the first failing q.
VerifyResult run_verify(const SlpGrammar& g, std::uint32_t qMax, const ReductionHook& hook = {});

DupStats stats_for(const SlpGrammar& g, const SlpMetrics& m, std::uint32_t q);

/// CSV with header "q,sum_ti,trie_size,dup,flattened_len,edges,vertices".
std::string run_stats(const SlpGrammar& g, const std::vector<std::uint32_t>& qList);

struct BenchRow {
    std::uint32_t q = 0;
    Algorithm algo = Algorithm::nsa;
    double meanSeconds = 0.0;
    std::size_t problemSize = 0;
};

/// Mean wall time per (q, algorithm) over `repetitions` runs. nsa is timed on
/// an already decompressed T; ssa and stsa start from the grammar in memory.
std::vector<BenchRow> run_bench(const SlpGrammar& g, const std::vector<std::uint32_t>& qList,
                                std::uint32_t repetitions);

/// CSV with header "q,algo,mean_seconds,problem_size".
std::string bench_csv(const std::vector<BenchRow>& rows);

/// Parses "2,3,10" into a list of q values.
std::vector<std::uint32_t> parse_q_list(std::string_view text);

}  // namespace slpq
