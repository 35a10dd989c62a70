#pragma once

// Straight-line programs over bytes: representation, validation, the SLP v1
// text format, decompression and per-variable preprocessing.
//
// Variables are numbered 1..n as in the usual SLP notation; per-variable
// arrays below are sized n + 1 and slot 0 is unused.

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace slpq {

using VarId = std::uint32_t;
using Length = std::uint64_t;
using Weight = std::uint64_t;

inline constexpr VarId kNoVar = 0;

/// Largest expansion length accepted anywhere in the library.
inline constexpr Length kMaxLength = static_cast<Length>(std::numeric_limits<std::int64_t>::max());

class SlpError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed SLP v1 input. `line()` is 1-based, 0 when not tied to a line.
class ParseError : public SlpError {
public:
    ParseError(std::size_t line, const std::string& what)
        : SlpError(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class OverflowError : public SlpError {
public:
    using SlpError::SlpError;
};

struct Rule {
    bool terminal = true;
    std::uint8_t byte = 0;
    VarId left = kNoVar;
    VarId right = kNoVar;

    static Rule make_terminal(std::uint8_t b) { return Rule{true, b, kNoVar, kNoVar}; }
    static Rule make_pair(VarId l, VarId r) { return Rule{false, 0, l, r}; }

    friend bool operator==(const Rule&, const Rule&) = default;
};

/// An SLP X_1..X_n; the start symbol is X_n. Construction checks that every
/// pair rule refers only to smaller indices, so an SlpGrammar is always
/// structurally valid. Unused variables are permitted (see find_unused).
class SlpGrammar {
public:
    explicit SlpGrammar(std::vector<Rule> rules);

    VarId size() const noexcept { return static_cast<VarId>(rules_.size()); }
    VarId start() const noexcept { return size(); }
    const Rule& rule(VarId i) const { return rules_[i - 1]; }
    const std::vector<Rule>& rules() const noexcept { return rules_; }

    friend bool operator==(const SlpGrammar&, const SlpGrammar&) = default;

private:
    std::vector<Rule> rules_;
};

struct SlpMetrics {
    std::vector<Length> lengths;  // |X_i|
    std::vector<Weight> vocc;     // occurrences of X_i in the derivation tree
    Length textLength = 0;
};

/// lm_q / rm_q: deepest variable of length >= q on the left-most / right-most
/// path below X_i, or kNoVar when |X_i| < q.
struct QMarks {
    std::uint32_t q = 2;
    std::vector<VarId> lm;
    std::vector<VarId> rm;

    std::optional<VarId> left_mark(VarId i) const {
        return lm[i] == kNoVar ? std::nullopt : std::optional<VarId>(lm[i]);
    }
    std::optional<VarId> right_mark(VarId i) const {
        return rm[i] == kNoVar ? std::nullopt : std::optional<VarId>(rm[i]);
    }
};

SlpGrammar parse_slp(std::string_view document);
std::string serialize_slp(const SlpGrammar& g);

SlpGrammar load_slp_file(const std::string& path);
void save_slp_file(const SlpGrammar& g, const std::string& path);

/// Variables with vOcc = 0, in increasing order.
std::vector<VarId> find_unused(const SlpGrammar& g);

/// Drops unused variables and renumbers the rest, preserving order.
SlpGrammar prune_unused(const SlpGrammar& g);

/// Throws OverflowError if some |X_i| exceeds kMaxLength.
SlpMetrics compute_metrics(const SlpGrammar& g);

QMarks compute_qmarks(const SlpGrammar& g, const SlpMetrics& m, std::uint32_t q);

inline constexpr Length kDefaultExpandCap = Length{1} << 32;

/// val(X_n). Throws OverflowError when |T| exceeds `cap`.
std::string expand(const SlpGrammar& g, Length cap = kDefaultExpandCap);
std::string expand(const SlpGrammar& g, const SlpMetrics& m, Length cap = kDefaultExpandCap);

/// First `count` characters of val(X_i) in O(height + count).
std::string extract_prefix(const SlpGrammar& g, const SlpMetrics& m, VarId i, Length count);
/// Last `count` characters of val(X_i) in O(height + count).
std::string extract_suffix(const SlpGrammar& g, const SlpMetrics& m, VarId i, Length count);

/// Character histogram of T, indexed by byte value.
std::array<Weight, 256> char_frequencies(const SlpGrammar& g, const SlpMetrics& m);

}  // namespace slpq
