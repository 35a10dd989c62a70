// slpq: build SLPs and count q-grams on them without full decompression.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "slpq/builder.hpp"
#include "slpq/pipeline.hpp"
#include "slpq/slp.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw slpq::SlpError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void emit(const std::string& doc, const std::string& outputPath) {
    if (outputPath.empty()) {
        std::fwrite(doc.data(), 1, doc.size(), stdout);
        return;
    }
    std::ofstream out(outputPath, std::ios::binary);
    if (!out) throw slpq::SlpError("cannot write " + outputPath);
    out << doc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-gram frequencies on straight-line programs"};
    app.require_subcommand(1);

    std::string input, output;
    std::uint32_t q = 2;
    std::string qList = "2";
    std::string algo = "stsa";
    bool expandOutput = false;
    std::uint32_t reps = 3;
    std::string builder = "repair";
    std::uint64_t seed = 0;
    std::uint64_t minFreq = 2;
    std::uint32_t ruleCount = 64;
    std::uint32_t alphabet = 2;
    bool injectFault = false;

    auto* build = app.add_subcommand("build", "Build an SLP v1 grammar from a byte file");
    build->add_option("-i,--input", input, "Input byte file (unused for the random builder)");
    build->add_option("-o,--output", output, "Output grammar (default: stdout)");
    build->add_option("--algo-builder", builder, "repair, chain or random")->check(CLI::IsMember({"repair", "chain", "random"}));
    build->add_option("--min-freq", minFreq, "RE-PAIR stop threshold")->check(CLI::Range(std::uint64_t{2}, std::uint64_t(-1)));
    build->add_option("--seed", seed, "Seed for the random builder");
    build->add_option("--rules", ruleCount, "Rule count for the random builder")->check(CLI::PositiveNumber);
    build->add_option("--alphabet", alphabet, "Alphabet size for the random builder")->check(CLI::Range(1, 256));

    auto* decompress = app.add_subcommand("decompress", "Expand a grammar to its text");
    decompress->add_option("-i,--input", input, "Grammar file")->required();
    decompress->add_option("-o,--output", output, "Output file (default: stdout)");

    auto* count = app.add_subcommand("count", "Count all q-grams");
    count->add_option("-i,--input", input, "Grammar file")->required();
    count->add_option("-o,--output", output, "Output TSV (default: stdout)");
    count->add_option("-q", q, "q-gram length (>= 1)")->required();
    count->add_option("--algo", algo, "nsa, ssa or stsa")->check(CLI::IsMember({"nsa", "ssa", "stsa"}));
    count->add_flag("--expand", expandOutput, "Print q-grams instead of representative positions");

    auto* stats = app.add_subcommand("stats", "Trie and t_i size statistics as CSV");
    stats->add_option("-i,--input", input, "Grammar file")->required();
    stats->add_option("-o,--output", output, "Output CSV (default: stdout)");
    stats->add_option("--q-list", qList, "Comma-separated q values");

    auto* verify = app.add_subcommand("verify", "Cross-check nsa, ssa and stsa for q = 2..qmax");
    verify->add_option("-i,--input", input, "Grammar file")->required();
    verify->add_option("-q", q, "Largest q to check (>= 2)")->required();
    verify->add_flag("--inject-fault", injectFault, "Corrupt one stsa weight per q (harness self-test)")->group("");

    auto* bench = app.add_subcommand("bench", "Time the three algorithms");
    bench->add_option("-i,--input", input, "Grammar file")->required();
    bench->add_option("-o,--output", output, "Output CSV (default: stdout)");
    bench->add_option("--q-list", qList, "Comma-separated q values");
    bench->add_option("--reps", reps, "Repetitions per measurement")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (*build) {
            slpq::SlpGrammar g = [&] {
                if (builder == "random") return slpq::build_random(ruleCount, alphabet, seed);
                if (input.empty()) throw std::invalid_argument("build: --input is required");
                const std::string text = read_file(input);
                slpq::BuilderConfig cfg;
                cfg.algorithm = builder == "chain" ? slpq::BuilderAlgorithm::chain : slpq::BuilderAlgorithm::repair;
                cfg.minPairFrequency = minFreq;
                cfg.seed = seed;
                return slpq::build_grammar(text, cfg);
            }();
            emit(slpq::serialize_slp(g), output);
        } else if (*decompress) {
            emit(slpq::expand(slpq::load_slp_file(input)), output);
        } else if (*count) {
            slpq::CountRequest req;
            req.grammarPath = input;
            req.q = q;
            req.algorithm = slpq::parse_algorithm(algo);
            req.expandOutput = expandOutput;
            req.outputPath = output;
            const std::string doc = slpq::run_count(req);
            if (output.empty()) emit(doc, output);
        } else if (*stats) {
            emit(slpq::run_stats(slpq::load_slp_file(input), slpq::parse_q_list(qList)), output);
        } else if (*verify) {
            slpq::ReductionHook hook;
            if (injectFault) {
                hook = [](std::uint32_t, slpq::Algorithm a, slpq::WeightedText& wt) {
                    if (a != slpq::Algorithm::stsa) return;
                    for (auto it = wt.endWeights.rbegin(); it != wt.endWeights.rend(); ++it) {
                        if (*it > 0) {
                            ++*it;
                            return;
                        }
                    }
                };
            }
            const auto result = slpq::run_verify(slpq::load_slp_file(input), q, hook);
            std::fputs(result.report.c_str(), result.ok ? stdout : stderr);
            return result.ok ? kExitOk : kExitVerifyFailed;
        } else if (*bench) {
            const auto rows = slpq::run_bench(slpq::load_slp_file(input), slpq::parse_q_list(qList), reps);
            emit(slpq::bench_csv(rows), output);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "slpq: %s\n", e.what());
        return kExitInputError;
    }
    return kExitOk;
}
