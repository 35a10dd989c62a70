#include "slpq/builder.hpp"

#include <algorithm>
#include <queue>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace slpq {

namespace {

using PairKey = std::uint64_t;
using Pos = std::uint32_t;

constexpr Pos kEnd = std::numeric_limits<Pos>::max();

PairKey make_key(VarId a, VarId b) { return (static_cast<PairKey>(a) << 32) | b; }
VarId key_left(PairKey k) { return static_cast<VarId>(k >> 32); }
VarId key_right(PairKey k) { return static_cast<VarId>(k & 0xffffffffu); }

std::vector<Rule> terminal_rules(std::string_view text, std::array<VarId, 256>& id) {
    std::array<bool, 256> present{};
    for (char c : text) present[static_cast<std::uint8_t>(c)] = true;
    std::vector<Rule> rules;
    id.fill(kNoVar);
    for (int b = 0; b < 256; ++b) {
        if (!present[b]) continue;
        rules.push_back(Rule::make_terminal(static_cast<std::uint8_t>(b)));
        id[b] = static_cast<VarId>(rules.size());
    }
    return rules;
}

// Working sequence for RE-PAIR: a doubly linked list over the original
// positions. A removed slot holds kNoVar; slot 0 is never removed.
class RepairState {
public:
    RepairState(std::string_view text, const std::array<VarId, 256>& id, std::uint64_t minFreq)
        : sym_(text.size()), next_(text.size()), prev_(text.size()), minFreq_(minFreq) {
        for (Pos p = 0; p < text.size(); ++p) {
            sym_[p] = id[static_cast<std::uint8_t>(text[p])];
            next_[p] = p + 1 < text.size() ? p + 1 : kEnd;
            prev_[p] = p == 0 ? kEnd : p - 1;
        }
        for (Pos p = 0; p + 1 < text.size(); ++p) occ_[make_key(sym_[p], sym_[p + 1])].push_back(p);
        std::vector<PairKey> keys;
        keys.reserve(occ_.size());
        for (const auto& entry : occ_) keys.push_back(entry.first);
        for (PairKey k : keys) offer(k);
    }

    // Returns false once no pair reaches the threshold.
    bool replace_most_frequent(std::vector<Rule>& rules) {
        while (!heap_.empty()) {
            auto [count, key] = heap_.top();
            heap_.pop();
            const std::uint64_t exact = evaluate(key);
            if (exact < minFreq_) continue;
            if (exact < count) {
                heap_.emplace(exact, key);
                continue;
            }
            rules.push_back(Rule::make_pair(key_left(key), key_right(key)));
            const auto fresh = static_cast<VarId>(rules.size());
            const std::uint64_t replaced = replace_all(key, fresh);
            if (replaced != exact) throw std::logic_error("RE-PAIR replaced a different number of pairs than counted");
            return true;
        }
        return false;
    }

    std::vector<VarId> residual() const {
        std::vector<VarId> out;
        for (Pos p = 0; p != kEnd; p = next_[p]) out.push_back(sym_[p]);
        return out;
    }

private:
    struct HeapOrder {
        bool operator()(const std::pair<std::uint64_t, PairKey>& a,
                        const std::pair<std::uint64_t, PairKey>& b) const {
            if (a.first != b.first) return a.first < b.first;
            return a.second > b.second;
        }
    };

    bool occurs_at(Pos p, VarId a, VarId b) const {
        return sym_[p] == a && next_[p] != kEnd && sym_[next_[p]] == b;
    }

    // Drops stale positions from the list and returns the non-overlapping
    // left-to-right count. Counts of existing pairs never grow, so a stored
    // count is always an upper bound.
    std::uint64_t evaluate(PairKey key) {
        auto it = occ_.find(key);
        if (it == occ_.end()) return 0;
        auto& list = it->second;
        const VarId a = key_left(key);
        const VarId b = key_right(key);
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        list.erase(std::remove_if(list.begin(), list.end(), [&](Pos p) { return !occurs_at(p, a, b); }),
                   list.end());
        std::uint64_t count = 0;
        Pos blocked = kEnd;
        for (Pos p : list) {
            if (p == blocked) continue;
            ++count;
            blocked = next_[p];
        }
        if (list.empty()) occ_.erase(it);
        return count;
    }

    void offer(PairKey key) {
        const std::uint64_t c = evaluate(key);
        if (c >= minFreq_) heap_.emplace(c, key);
    }

    std::uint64_t replace_all(PairKey key, VarId fresh) {
        const VarId a = key_left(key);
        const VarId b = key_right(key);
        std::vector<Pos> list = std::move(occ_[key]);
        occ_.erase(key);
        std::vector<PairKey> created;
        std::uint64_t replaced = 0;
        for (Pos p : list) {
            // For a == b the second slot of a replaced occurrence is gone by now.
            if (!occurs_at(p, a, b)) continue;
            const Pos gone = next_[p];
            sym_[p] = fresh;
            next_[p] = next_[gone];
            if (next_[p] != kEnd) prev_[next_[p]] = p;
            sym_[gone] = kNoVar;
            ++replaced;
            if (prev_[p] != kEnd) {
                const PairKey k = make_key(sym_[prev_[p]], fresh);
                occ_[k].push_back(prev_[p]);
                created.push_back(k);
            }
            if (next_[p] != kEnd) {
                const PairKey k = make_key(fresh, sym_[next_[p]]);
                occ_[k].push_back(p);
                created.push_back(k);
            }
        }
        std::sort(created.begin(), created.end());
        created.erase(std::unique(created.begin(), created.end()), created.end());
        for (PairKey k : created) offer(k);
        return replaced;
    }

    std::vector<VarId> sym_;
    std::vector<Pos> next_;
    std::vector<Pos> prev_;
    std::uint64_t minFreq_;
    std::unordered_map<PairKey, std::vector<Pos>> occ_;
    std::priority_queue<std::pair<std::uint64_t, PairKey>, std::vector<std::pair<std::uint64_t, PairKey>>,
                        HeapOrder>
        heap_;
};

VarId binarize(const std::vector<VarId>& seq, std::size_t lo, std::size_t hi, std::vector<Rule>& rules) {
    if (hi - lo == 1) return seq[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    const VarId left = binarize(seq, lo, mid, rules);
    const VarId right = binarize(seq, mid, hi, rules);
    rules.push_back(Rule::make_pair(left, right));
    return static_cast<VarId>(rules.size());
}

// Uniform draw in [lo, hi] that does not depend on the standard library's
// distribution implementation.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return lo + x % span;
}

}  // namespace

SlpGrammar build_repair(std::string_view text, const BuilderConfig& cfg) {
    if (text.empty()) throw std::invalid_argument("build_repair: empty input");
    if (cfg.minPairFrequency < 2) throw std::invalid_argument("build_repair: minPairFrequency must be at least 2");
    if (text.size() >= kEnd) throw std::invalid_argument("build_repair: input too large");
    std::array<VarId, 256> id{};
    std::vector<Rule> rules = terminal_rules(text, id);
    RepairState state(text, id, cfg.minPairFrequency);
    while (state.replace_most_frequent(rules)) {
    }
    const auto seq = state.residual();
    binarize(seq, 0, seq.size(), rules);
    return SlpGrammar(std::move(rules));
}

SlpGrammar build_chain(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("build_chain: empty input");
    std::array<VarId, 256> id{};
    std::vector<Rule> rules = terminal_rules(text, id);
    VarId acc = id[static_cast<std::uint8_t>(text[0])];
    for (std::size_t p = 1; p < text.size(); ++p) {
        rules.push_back(Rule::make_pair(acc, id[static_cast<std::uint8_t>(text[p])]));
        acc = static_cast<VarId>(rules.size());
    }
    return SlpGrammar(std::move(rules));
}

SlpGrammar build_grammar(std::string_view text, const BuilderConfig& cfg) {
    switch (cfg.algorithm) {
        case BuilderAlgorithm::repair: return build_repair(text, cfg);
        case BuilderAlgorithm::chain: return build_chain(text);
    }
    throw std::invalid_argument("unknown builder algorithm");
}

SlpGrammar build_random(std::uint32_t ruleCount, std::uint32_t alphabetSize, std::uint64_t seed) {
    if (ruleCount < 1) throw std::invalid_argument("build_random: ruleCount must be at least 1");
    if (alphabetSize < 1 || alphabetSize > 256) throw std::invalid_argument("build_random: alphabetSize must be in 1..256");
    std::mt19937_64 rng(seed);
    std::vector<Rule> rules;
    std::vector<Length> len{0};
    const std::uint32_t terminals = std::min(alphabetSize, ruleCount);
    for (std::uint32_t k = 0; k < terminals; ++k) {
        const auto b = static_cast<std::uint8_t>(alphabetSize <= 26 ? 'a' + k : k);
        rules.push_back(Rule::make_terminal(b));
        len.push_back(1);
    }
    constexpr int kMaxRejections = 256;
    for (VarId i = terminals + 1; i <= ruleCount; ++i) {
        VarId l = 0, r = 0;
        int rejected = 0;
        do {
            if (rejected++ == kMaxRejections) {
                // Fall back to children of at most half the cap.
                std::vector<VarId> small;
                for (VarId j = 1; j < i; ++j)
                    if (len[j] <= kRandomLengthCap / 2) small.push_back(j);
                l = small[draw(rng, 0, small.size() - 1)];
                r = small[draw(rng, 0, small.size() - 1)];
                break;
            }
            l = static_cast<VarId>(draw(rng, 1, i - 1));
            r = static_cast<VarId>(draw(rng, 1, i - 1));
        } while (len[l] + len[r] > kRandomLengthCap);
        rules.push_back(Rule::make_pair(l, r));
        len.push_back(len[l] + len[r]);
    }
    return prune_unused(SlpGrammar(std::move(rules)));
}

}  // namespace slpq
