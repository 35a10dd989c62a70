#include "slpq/ssa.hpp"

#include <algorithm>
#include <stdexcept>

namespace slpq {

Length ti_length(const SlpGrammar& g, const SlpMetrics& m, std::uint32_t q, VarId i) {
    const Rule& r = g.rule(i);
    if (r.terminal) return 0;
    const Length ctx = q - 1;
    return std::min(m.lengths[r.left], ctx) + std::min(m.lengths[r.right], ctx);
}

TiString make_ti(const SlpGrammar& g, const SlpMetrics& m, std::uint32_t q, VarId i) {
    if (q < 2) throw std::invalid_argument("make_ti: q must be at least 2");
    const Rule& r = g.rule(i);
    if (r.terminal) throw std::invalid_argument("make_ti: rule " + std::to_string(i) + " is a terminal");
    const Length ctx = q - 1;
    TiString ti;
    ti.variable = i;
    ti.weight = m.vocc[i];
    ti.content = extract_suffix(g, m, r.left, std::min(m.lengths[r.left], ctx));
    ti.content += extract_prefix(g, m, r.right, std::min(m.lengths[r.right], ctx));
    return ti;
}

WeightedText build_ssa_text(const SlpGrammar& g, const SlpMetrics& m, std::uint32_t q) {
    if (q < 2) throw std::invalid_argument("build_ssa_text: q must be at least 2");
    WeightedText wt;
    wt.gram = q;
    for (VarId i = 1; i <= g.size(); ++i) {
        if (g.rule(i).terminal) continue;
        const bool longEnough = m.lengths[i] >= q;
        const Length len = ti_length(g, m, q, i);
        if ((len >= q) != longEnough) throw std::logic_error("|t_i| >= q disagrees with |X_i| >= q");
        if (!longEnough) continue;
        const TiString ti = make_ti(g, m, q, i);
        wt.text += ti.content;
        wt.endWeights.insert(wt.endWeights.end(), q - 1, 0);
        wt.endWeights.insert(wt.endWeights.end(), ti.content.size() - (q - 1), ti.weight);
    }
    return wt;
}

}  // namespace slpq
