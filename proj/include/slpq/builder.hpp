#pragma once

// Grammar producers: RE-PAIR, the uncompressed chain baseline and a seeded
// random SLP generator for fuzzing.

#include <cstdint>
#include <string_view>

#include "slpq/slp.hpp"

namespace slpq {

enum class BuilderAlgorithm { repair, chain };

struct BuilderConfig {
    BuilderAlgorithm algorithm = BuilderAlgorithm::repair;
    std::uint64_t minPairFrequency = 2;  // RE-PAIR stops below this count
    std::uint64_t seed = 0;
};

/// RE-PAIR with deterministic tie-breaking.
///
/// Terminals are assigned in ascending byte order. Each round picks the pair
/// with the largest non-overlapping (left-to-right greedy) count, ties going
/// to the smaller (left, right) index pair, and replaces its occurrences left
/// to right. Rounds stop once no pair reaches cfg.minPairFrequency; the
/// remaining sequence is joined by a balanced tree of pair rules.
SlpGrammar build_repair(std::string_view text, const BuilderConfig& cfg = {});

/// One terminal per distinct byte (ascending), then left-leaning pairs
/// spelling the text.
SlpGrammar build_chain(std::string_view text);

/// Dispatches on cfg.algorithm.
SlpGrammar build_grammar(std::string_view text, const BuilderConfig& cfg);

inline constexpr Length kRandomLengthCap = Length{1} << 20;

/// Random SLP: min(alphabetSize, ruleCount) terminals followed by pair rules
/// whose children are drawn uniformly from the smaller indices, resampled
/// whenever the expansion would exceed kRandomLengthCap. Variables the start
/// symbol never reaches are pruned, so the result may have fewer than
/// ruleCount rules. Terminal bytes are 'a', 'b', ... for alphabets of at
/// most 26 symbols and 0, 1, ... otherwise.
SlpGrammar build_random(std::uint32_t ruleCount, std::uint32_t alphabetSize, std::uint64_t seed);

}  // namespace slpq
