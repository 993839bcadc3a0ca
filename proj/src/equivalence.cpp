#include "pddleval/equivalence.hpp"

#include <algorithm>

namespace pddleval::equiv {

namespace {

// One argument pair under the correspondence. Mutates `corr` when a fresh
// index is assigned, so callers try candidates on a scratch copy and commit
// only full matches.
bool args_consistent(const Term& t1, const Term& t2, ParamCorrespondence& corr) {
    const bool seen1 = t1.is_variable() && corr.p1.count(t1.name) > 0;
    const bool seen2 = t2.is_variable() && corr.p2.count(t2.name) > 0;

    // Terms outside the matched parameter sets can only be the same literal
    // constant.
    if (!seen1 && !seen2) {
        return !t1.is_variable() && !t2.is_variable() && t1.name == t2.name;
    }
    if (!seen1 || !seen2) return false;

    if (corr.p1.at(t1.name) != corr.p2.at(t2.name)) return false;

    auto i1 = corr.index1.find(t1.name);
    auto i2 = corr.index2.find(t2.name);
    const bool has1 = i1 != corr.index1.end();
    const bool has2 = i2 != corr.index2.end();
    if (!has1 && !has2) {
        // Same type, neither committed to an entity yet: treat them as the
        // same entity from here on.
        corr.index1.emplace(t1.name, corr.next_index);
        corr.index2.emplace(t2.name, corr.next_index);
        ++corr.next_index;
        return true;
    }
    if (has1 && has2) return i1->second == i2->second;
    return false;
}

bool literals_match(const Literal& l1, const Literal& l2, ParamCorrespondence& corr) {
    if (l1.predicate != l2.predicate) return false;
    if (l1.positive != l2.positive) return false;
    if (l1.args.size() != l2.args.size()) return false;
    ParamCorrespondence scratch = corr;
    for (std::size_t i = 0; i < l1.args.size(); ++i) {
        if (!args_consistent(l1.args[i], l2.args[i], scratch)) return false;
    }
    corr = std::move(scratch);
    return true;
}

}  // namespace

std::pair<ComponentDistance, ParamCorrespondence> param_distance(const ActionDef& a1,
                                                                 const ActionDef& a2) {
    ParamCorrespondence corr;
    ComponentDistance dist;
    dist.size1 = static_cast<int>(a1.params.size());
    dist.size2 = static_cast<int>(a2.params.size());

    std::vector<char> used(a2.params.size(), 0);
    for (const TypedVar& p : a1.params) {
        for (std::size_t j = 0; j < a2.params.size(); ++j) {
            if (used[j] || a2.params[j].type != p.type) continue;
            used[j] = 1;
            corr.p1.emplace(p.name, p.type);
            corr.p2.emplace(a2.params[j].name, a2.params[j].type);
            corr.pairs.emplace_back(p.name, a2.params[j].name);
            ++dist.matched;
            break;
        }
    }
    return {dist, corr};
}

ComponentDistance condition_distance(const Condition& c1, const Condition& c2,
                                     ParamCorrespondence& corr) {
    ComponentDistance dist;
    dist.size1 = static_cast<int>(c1.size());
    dist.size2 = static_cast<int>(c2.size());

    std::vector<char> used(c2.size(), 0);
    for (const Literal& l1 : c1.literals) {
        for (std::size_t j = 0; j < c2.literals.size(); ++j) {
            if (used[j]) continue;
            if (literals_match(l1, c2.literals[j], corr)) {
                used[j] = 1;
                ++dist.matched;
                break;
            }
        }
    }
    return dist;
}

ActionDistance action_distance(const ActionDef& predicted, const ActionDef& gold) {
    ActionDistance dist;
    auto [params, corr] = param_distance(predicted, gold);
    dist.params = params;
    dist.precondition = condition_distance(predicted.precondition, gold.precondition, corr);
    dist.effect = condition_distance(predicted.effect, gold.effect, corr);
    return dist;
}

namespace {

struct ExactSearch {
    const std::vector<Literal>* side1[2];
    const std::vector<Literal>* side2[2];
    int best_total = -1;
    int best_pre = -1;
    std::vector<char> used2[2];

    // Depth-first over side-1 literals (preconditions then effects), trying
    // every unconsumed compatible side-2 literal plus the skip option.
    void run(int comp, std::size_t i, int matched_pre, int matched_eff,
             ParamCorrespondence corr) {
        if (comp == 0 && i == side1[0]->size()) {
            run(1, 0, matched_pre, matched_eff, std::move(corr));
            return;
        }
        if (comp == 1 && i == side1[1]->size()) {
            int total = matched_pre + matched_eff;
            if (total > best_total || (total == best_total && matched_pre > best_pre)) {
                best_total = total;
                best_pre = matched_pre;
            }
            return;
        }
        // Bound: even matching everything left cannot beat the best.
        int remaining = static_cast<int>(side1[comp]->size() - i);
        if (comp == 0) remaining += static_cast<int>(side1[1]->size());
        if (matched_pre + matched_eff + remaining < best_total) return;

        const Literal& lit = (*side1[comp])[i];
        for (std::size_t j = 0; j < side2[comp]->size(); ++j) {
            if (used2[comp][j]) continue;
            ParamCorrespondence scratch = corr;
            if (!literals_match(lit, (*side2[comp])[j], scratch)) continue;
            used2[comp][j] = 1;
            run(comp, i + 1, matched_pre + (comp == 0 ? 1 : 0), matched_eff + (comp == 1 ? 1 : 0),
                std::move(scratch));
            used2[comp][j] = 0;
        }
        run(comp, i + 1, matched_pre, matched_eff, std::move(corr));
    }
};

}  // namespace

std::optional<ActionDistance> exact_action_distance(const ActionDef& predicted,
                                                    const ActionDef& gold, int max_literals) {
    const std::size_t cap = static_cast<std::size_t>(max_literals);
    if (predicted.precondition.size() > cap || predicted.effect.size() > cap ||
        gold.precondition.size() > cap || gold.effect.size() > cap) {
        return std::nullopt;
    }

    ActionDistance dist;
    auto [params, corr] = param_distance(predicted, gold);
    dist.params = params;

    ExactSearch search;
    search.side1[0] = &predicted.precondition.literals;
    search.side1[1] = &predicted.effect.literals;
    search.side2[0] = &gold.precondition.literals;
    search.side2[1] = &gold.effect.literals;
    search.used2[0].assign(gold.precondition.size(), 0);
    search.used2[1].assign(gold.effect.size(), 0);
    search.run(0, 0, 0, 0, corr);

    dist.precondition.size1 = static_cast<int>(predicted.precondition.size());
    dist.precondition.size2 = static_cast<int>(gold.precondition.size());
    dist.precondition.matched = search.best_pre;
    dist.effect.size1 = static_cast<int>(predicted.effect.size());
    dist.effect.size2 = static_cast<int>(gold.effect.size());
    dist.effect.matched = search.best_total - search.best_pre;
    return dist;
}

bool ActionScore::component_match(int which) const {
    if (!present || !distance) return false;
    switch (which) {
        case 0: return distance->params.zero();
        case 1: return distance->precondition.zero();
        case 2: return distance->effect.zero();
        default: return false;
    }
}

std::size_t IntrinsicReport::exact_count() const {
    return static_cast<std::size_t>(
        std::count_if(actions.begin(), actions.end(),
                      [](const ActionScore& s) { return s.exact_match(); }));
}

std::size_t IntrinsicReport::component_count(int which) const {
    return static_cast<std::size_t>(
        std::count_if(actions.begin(), actions.end(),
                      [which](const ActionScore& s) { return s.component_match(which); }));
}

double IntrinsicReport::action_accuracy() const {
    if (actions.empty()) return 0.0;
    return static_cast<double>(exact_count()) / static_cast<double>(actions.size());
}

double IntrinsicReport::component_accuracy(int which) const {
    if (actions.empty()) return 0.0;
    return static_cast<double>(component_count(which)) / static_cast<double>(actions.size());
}

IntrinsicReport intrinsic_report(const DomainFile& predicted, const DomainFile& gold,
                                 bool run_exact_check) {
    IntrinsicReport report;
    for (const Ident& name : gold.header.action_names) {
        const ActionDef* gold_action = gold.find_action(name);
        if (gold_action == nullptr) continue;  // malformed gold; nothing to score against
        ActionScore score;
        score.name = name;
        const ActionDef* pred_action = predicted.find_action(name);
        if (pred_action != nullptr) {
            score.present = true;
            score.distance = action_distance(*pred_action, *gold_action);
            if (run_exact_check && !score.distance->zero()) {
                if (auto exact = exact_action_distance(*pred_action, *gold_action)) {
                    score.greedy_exact_disagree = exact->total() < score.distance->total();
                }
            }
        }
        report.actions.push_back(std::move(score));
    }
    return report;
}

}  // namespace pddleval::equiv
