#include "slpq/slp.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace slpq {

SlpGrammar::SlpGrammar(std::vector<Rule> rules) : rules_(std::move(rules)) {
    if (rules_.empty()) throw SlpError("grammar has no rules");
    if (rules_.size() >= std::numeric_limits<VarId>::max()) throw SlpError("too many rules");
    for (VarId i = 1; i <= size(); ++i) {
        const Rule& r = rules_[i - 1];
        if (r.terminal) continue;
        if (r.left == kNoVar || r.right == kNoVar) {
            throw SlpError("rule " + std::to_string(i) + " refers to variable 0");
        }
        if (r.left >= i || r.right >= i) {
            throw SlpError("rule " + std::to_string(i) + " refers to a variable that is not smaller");
        }
    }
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        if (pos == line.size()) break;
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
        out.push_back(line.substr(pos, end - pos));
        pos = end;
    }
    return out;
}

std::uint64_t parse_number(std::string_view field, std::size_t lineNo) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw ParseError(lineNo, "expected a non-negative integer, got '" + std::string(field) + "'");
    }
    return value;
}

std::vector<Weight> occurrence_counts(const SlpGrammar& g) {
    std::vector<Weight> vocc(g.size() + 1, 0);
    vocc[g.start()] = 1;
    for (VarId i = g.size(); i >= 1; --i) {
        const Rule& r = g.rule(i);
        if (r.terminal || vocc[i] == 0) continue;
        vocc[r.left] += vocc[i];
        vocc[r.right] += vocc[i];
    }
    return vocc;
}

}  // namespace

SlpGrammar parse_slp(std::string_view document) {
    std::vector<Rule> rules;
    std::size_t lineNo = 0;
    std::size_t pos = 0;
    while (pos <= document.size()) {
        std::size_t nl = document.find('\n', pos);
        if (nl == std::string_view::npos) nl = document.size();
        std::string_view line = document.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineNo;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        auto fields = split_fields(line);
        if (fields.empty() || fields.front().front() == '#') continue;

        const std::uint64_t index = parse_number(fields[0], lineNo);
        const std::uint64_t expected = rules.size() + 1;
        if (index == 0) throw ParseError(lineNo, "index out of range: rule indices start at 1");
        if (index < expected) throw ParseError(lineNo, "duplicate index " + std::to_string(index));
        if (index > expected) {
            throw ParseError(lineNo, "expected rule " + std::to_string(expected) + ", got " +
                                         std::to_string(index));
        }
        if (fields.size() < 2) throw ParseError(lineNo, "missing rule kind");

        if (fields[1] == "T") {
            if (fields.size() != 3) throw ParseError(lineNo, "terminal rule needs exactly one byte value");
            const std::uint64_t b = parse_number(fields[2], lineNo);
            if (b > 255) throw ParseError(lineNo, "index out of range: byte value " + std::to_string(b));
            rules.push_back(Rule::make_terminal(static_cast<std::uint8_t>(b)));
        } else if (fields[1] == "N") {
            if (fields.size() != 4) throw ParseError(lineNo, "pair rule needs exactly two child indices");
            const std::uint64_t l = parse_number(fields[2], lineNo);
            const std::uint64_t r = parse_number(fields[3], lineNo);
            if (l == 0 || r == 0) throw ParseError(lineNo, "index out of range: child index 0");
            if (l >= index || r >= index) {
                throw ParseError(lineNo, "forward reference: rule " + std::to_string(index) +
                                             " refers to " + std::to_string(std::max(l, r)));
            }
            rules.push_back(Rule::make_pair(static_cast<VarId>(l), static_cast<VarId>(r)));
        } else {
            throw ParseError(lineNo, "unknown rule kind '" + std::string(fields[1]) + "'");
        }
    }
    if (rules.empty()) throw ParseError(0, "document contains no rules");
    return SlpGrammar(std::move(rules));
}

std::string serialize_slp(const SlpGrammar& g) {
    std::string out;
    out.reserve(static_cast<std::size_t>(g.size()) * 12);
    for (VarId i = 1; i <= g.size(); ++i) {
        const Rule& r = g.rule(i);
        out += std::to_string(i);
        if (r.terminal) {
            out += " T ";
            out += std::to_string(r.byte);
        } else {
            out += " N ";
            out += std::to_string(r.left);
            out += ' ';
            out += std::to_string(r.right);
        }
        out += '\n';
    }
    return out;
}

SlpGrammar load_slp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SlpError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_slp(buf.str());
}

void save_slp_file(const SlpGrammar& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SlpError("cannot write " + path);
    out << serialize_slp(g);
}

std::vector<VarId> find_unused(const SlpGrammar& g) {
    auto vocc = occurrence_counts(g);
    std::vector<VarId> unused;
    for (VarId i = 1; i <= g.size(); ++i)
        if (vocc[i] == 0) unused.push_back(i);
    return unused;
}

SlpGrammar prune_unused(const SlpGrammar& g) {
    auto vocc = occurrence_counts(g);
    std::vector<VarId> renumber(g.size() + 1, kNoVar);
    std::vector<Rule> rules;
    for (VarId i = 1; i <= g.size(); ++i) {
        if (vocc[i] == 0) continue;
        Rule r = g.rule(i);
        if (!r.terminal) {
            r.left = renumber[r.left];
            r.right = renumber[r.right];
        }
        rules.push_back(r);
        renumber[i] = static_cast<VarId>(rules.size());
    }
    return SlpGrammar(std::move(rules));
}

SlpMetrics compute_metrics(const SlpGrammar& g) {
    SlpMetrics m;
    m.lengths.assign(g.size() + 1, 0);
    for (VarId i = 1; i <= g.size(); ++i) {
        const Rule& r = g.rule(i);
        if (r.terminal) {
            m.lengths[i] = 1;
            continue;
        }
        const Length a = m.lengths[r.left];
        const Length b = m.lengths[r.right];
        if (a > kMaxLength - b) {
            throw OverflowError("expansion of rule " + std::to_string(i) + " exceeds 2^63-1 characters");
        }
        m.lengths[i] = a + b;
    }
    m.vocc = occurrence_counts(g);
    m.textLength = m.lengths[g.start()];
    return m;
}

QMarks compute_qmarks(const SlpGrammar& g, const SlpMetrics& m, std::uint32_t q) {
    if (q < 2) throw std::invalid_argument("compute_qmarks: q must be at least 2");
    QMarks marks;
    marks.q = q;
    marks.lm.assign(g.size() + 1, kNoVar);
    marks.rm.assign(g.size() + 1, kNoVar);
    for (VarId i = 1; i <= g.size(); ++i) {
        const Rule& r = g.rule(i);
        if (r.terminal || m.lengths[i] < q) continue;
        marks.lm[i] = m.lengths[r.left] < q ? i : marks.lm[r.left];
        marks.rm[i] = m.lengths[r.right] < q ? i : marks.rm[r.right];
    }
    return marks;
}

std::string expand(const SlpGrammar& g, Length cap) { return expand(g, compute_metrics(g), cap); }

std::string expand(const SlpGrammar& g, const SlpMetrics& m, Length cap) {
    if (m.textLength > cap) {
        throw OverflowError("expansion of " + std::to_string(m.textLength) +
                            " characters exceeds the cap of " + std::to_string(cap));
    }
    return extract_prefix(g, m, g.start(), m.textLength);
}

std::string extract_prefix(const SlpGrammar& g, const SlpMetrics& m, VarId i, Length count) {
    if (i == kNoVar || i > g.size()) throw std::out_of_range("extract_prefix: no variable " + std::to_string(i));
    if (count > m.lengths[i]) throw std::out_of_range("extract_prefix: count exceeds |X_i|");
    std::string out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<VarId> stack{i};
    while (out.size() < count) {
        const VarId v = stack.back();
        stack.pop_back();
        const Rule& r = g.rule(v);
        if (r.terminal) {
            out.push_back(static_cast<char>(r.byte));
            continue;
        }
        // The right child is only needed if the left one runs out.
        if (m.lengths[r.left] < count - out.size()) stack.push_back(r.right);
        stack.push_back(r.left);
    }
    return out;
}

std::string extract_suffix(const SlpGrammar& g, const SlpMetrics& m, VarId i, Length count) {
    if (i == kNoVar || i > g.size()) throw std::out_of_range("extract_suffix: no variable " + std::to_string(i));
    if (count > m.lengths[i]) throw std::out_of_range("extract_suffix: count exceeds |X_i|");
    std::string out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<VarId> stack{i};
    while (out.size() < count) {
        const VarId v = stack.back();
        stack.pop_back();
        const Rule& r = g.rule(v);
        if (r.terminal) {
            out.push_back(static_cast<char>(r.byte));
            continue;
        }
        if (m.lengths[r.right] < count - out.size()) stack.push_back(r.left);
        stack.push_back(r.right);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::array<Weight, 256> char_frequencies(const SlpGrammar& g, const SlpMetrics& m) {
    std::array<Weight, 256> freq{};
    for (VarId i = 1; i <= g.size(); ++i) {
        const Rule& r = g.rule(i);
        if (r.terminal) freq[r.byte] += m.vocc[i];
    }
    return freq;
}

}  // namespace slpq
