// Report serialization and the human-readable table/plot renderers. The
// canonical report deliberately carries no wall-clock values; timings are
// emitted separately so replayed runs stay byte-identical.

#include <cstdio>
#include <sstream>

#include "pddleval/harness.hpp"
#include "pddleval/printer.hpp"

namespace pddleval::harness {

using nlohmann::ordered_json;

namespace {

std::string pct(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", fraction * 100.0);
    return buf;
}

std::string plan_step_text(const PlanStep& step) {
    std::string out = "(" + step.action.text;
    for (const Ident& arg : step.args) out += " " + arg.text;
    out += ")";
    return out;
}

ordered_json plan_to_json(const Plan& plan) {
    ordered_json arr = ordered_json::array();
    for (const PlanStep& step : plan.steps) arr.push_back(plan_step_text(step));
    return arr;
}

std::string run_label(const EvalReport& report) {
    std::ostringstream os;
    os << report.model_label;
    if (!report.oracle) {
        os << " (" << report.style;
        if (report.shots > 0) os << ", " << report.shots << "-shot";
        os << ", text=" << report.condition << ")";
    }
    return os.str();
}

}  // namespace

ordered_json report_to_json(const EvalReport& report) {
    ordered_json doc;
    doc["report_version"] = 1;

    ordered_json run;
    run["digest"] = report.digest;
    run["model"] = report.model_label;
    run["style"] = report.style;
    run["condition"] = report.condition;
    run["shots"] = report.shots;
    run["oracle"] = report.oracle;
    run["timeout_ms"] = report.timeout_ms;
    doc["run"] = run;

    const Aggregates& agg = report.aggregates;
    ordered_json aggregates;
    aggregates["actions"] = {{"total", agg.action_total},
                             {"exact", agg.action_exact},
                             {"accuracy", agg.action_accuracy()}};
    aggregates["components"] = {
        {"parameter", {{"exact", agg.param_exact}, {"accuracy", agg.param_accuracy()}}},
        {"precondition",
         {{"exact", agg.precondition_exact}, {"accuracy", agg.precondition_accuracy()}}},
        {"effect", {{"exact", agg.effect_exact}, {"accuracy", agg.effect_accuracy()}}},
    };
    aggregates["problems"] = {{"total", agg.pf_total},
                              {"solved", agg.pf_solved},
                              {"solve_rate", agg.solve_rate()}};
    ordered_json taxonomy;
    for (int i = 0; i < 5; ++i) {
        taxonomy[to_string(static_cast<TaxonomyLabel>(i))] = agg.label_counts[i];
    }
    aggregates["taxonomy"] = taxonomy;
    doc["aggregates"] = aggregates;

    ordered_json examples = ordered_json::array();
    for (const ExampleResult& ex : report.examples) {
        ordered_json je;
        je["id"] = ex.id;
        if (!ex.cache_key.empty()) je["cache_key"] = ex.cache_key;

        ordered_json pred;
        ordered_json missing = ordered_json::array();
        for (const Ident& m : ex.prediction.missing) missing.push_back(m.text);
        ordered_json extra = ordered_json::array();
        for (const Ident& m : ex.prediction.extra) extra.push_back(m.text);
        pred["missing"] = missing;
        pred["extra"] = extra;
        pred["block_errors"] = ex.prediction.block_errors.size();
        ordered_json diags = ordered_json::array();
        for (const Diagnostic& d : ex.prediction.diagnostics) diags.push_back(d.to_string());
        pred["diagnostics"] = diags;
        je["prediction"] = pred;

        ordered_json actions = ordered_json::array();
        for (const equiv::ActionScore& score : ex.intrinsic.actions) {
            ordered_json ja;
            ja["name"] = score.name.text;
            ja["present"] = score.present;
            if (score.distance) {
                ja["params"] = score.distance->params.distance();
                ja["precondition"] = score.distance->precondition.distance();
                ja["effect"] = score.distance->effect.distance();
                ja["total"] = score.distance->total();
            } else {
                ja["params"] = nullptr;
                ja["precondition"] = nullptr;
                ja["effect"] = nullptr;
                ja["total"] = nullptr;
            }
            if (score.greedy_exact_disagree) ja["greedy_exact_disagree"] = true;
            actions.push_back(ja);
        }
        je["actions"] = actions;

        ordered_json problems = ordered_json::array();
        for (const ProblemResult& pr : ex.problems) {
            ordered_json jp;
            jp["name"] = pr.problem;
            jp["outcome"] = planner::SolveOutcome::kind_name(pr.outcome.kind);
            jp["nodes_expanded"] = pr.outcome.nodes_expanded;
            jp["label"] = to_string(pr.label);
            if (pr.label == TaxonomyLabel::unsolved_bad_action) {
                jp["bad_action"] = pr.bad_action.text;
            }
            if (pr.outcome.solved()) jp["plan"] = plan_to_json(pr.outcome.plan);
            if (!pr.outcome.note.empty()) jp["note"] = pr.outcome.note;
            problems.push_back(jp);
        }
        je["problems"] = problems;
        examples.push_back(je);
    }
    doc["examples"] = examples;
    return doc;
}

ordered_json timings_to_json(const EvalReport& report) {
    ordered_json doc;
    doc["digest"] = report.digest;
    ordered_json items = ordered_json::array();
    for (const ExampleResult& ex : report.examples) {
        for (const ProblemResult& pr : ex.problems) {
            items.push_back({{"example", ex.id},
                             {"problem", pr.problem},
                             {"elapsed_ms", pr.outcome.elapsed.count()},
                             {"nodes_expanded", pr.outcome.nodes_expanded}});
        }
    }
    doc["solves"] = items;
    return doc;
}

std::string render_tables(const EvalReport& report) {
    const Aggregates& agg = report.aggregates;
    const std::string label = run_label(report);
    std::ostringstream os;

    auto row = [&os](const std::string& name, const std::vector<std::string>& cells,
                     const std::vector<int>& widths) {
        os << name;
        for (std::size_t i = name.size(); i < 36; ++i) os << ' ';
        for (std::size_t c = 0; c < cells.size(); ++c) {
            os << cells[c];
            int pad = widths[c] - static_cast<int>(cells[c].size());
            for (int i = 0; i < pad; ++i) os << ' ';
        }
        os << "\n";
    };

    os << "== intrinsic & extrinsic (percent) ==\n";
    row("model", {"action acc.", "pf solve"}, {15, 15});
    row(label, {pct(agg.action_accuracy()), pct(agg.solve_rate())}, {15, 15});
    os << "\n";

    os << "== per-component accuracy (percent) ==\n";
    row("model", {"parameter", "precondition", "effect"}, {15, 15, 15});
    row(label,
        {pct(agg.param_accuracy()), pct(agg.precondition_accuracy()), pct(agg.effect_accuracy())},
        {15, 15, 15});
    os << "\n";

    os << "== outcome taxonomy (counts) ==\n";
    row("", {"unsolved", "", "", "solved", ""}, {15, 15, 15, 15, 15});
    row("model", {"syntactic err", "bad action", "good action", "matches gold", "needs review"},
        {15, 15, 15, 15, 15});
    row(label,
        {std::to_string(agg.label_counts[0]), std::to_string(agg.label_counts[1]),
         std::to_string(agg.label_counts[2]), std::to_string(agg.label_counts[3]),
         std::to_string(agg.label_counts[4])},
        {15, 15, 15, 15, 15});
    return os.str();
}

std::string render_review_queue(const EvalReport& report) {
    std::ostringstream os;
    os << "# Solved problems whose plan differs from the gold plan.\n";
    os << "# A human decides whether each is a reasonable alternative or a loophole.\n";
    std::size_t count = 0;
    for (const ExampleResult& ex : report.examples) {
        for (const ProblemResult& pr : ex.problems) {
            if (pr.label != TaxonomyLabel::solved_needs_review) continue;
            ++count;
            os << "\n" << ex.id << " / " << pr.problem << "\n";
            os << "  predicted plan:\n";
            for (const PlanStep& step : pr.outcome.plan.steps) {
                os << "    " << plan_step_text(step) << "\n";
            }
            os << "  gold plan:\n";
            for (const PlanStep& step : pr.gold_plan.steps) {
                os << "    " << plan_step_text(step) << "\n";
            }
        }
    }
    if (count == 0) os << "\n(nothing to review)\n";
    return os.str();
}

std::string render_solve_svg(const EvalReport& report) {
    // One bar per example; integer-only geometry keeps output stable.
    const int bar_h = 18, gap = 6, left = 220, width = 640, top = 30;
    const int rows = static_cast<int>(report.examples.size());
    const int height = top + rows * (bar_h + gap) + 20;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" font-family=\"monospace\" font-size=\"12\">\n";
    os << "<text x=\"10\" y=\"18\">problems solved per example (" << run_label(report)
       << ")</text>\n";
    int y = top;
    for (const ExampleResult& ex : report.examples) {
        std::size_t solved = 0;
        for (const ProblemResult& pr : ex.problems) {
            if (pr.outcome.solved()) ++solved;
        }
        const std::size_t total = ex.problems.size();
        const int bar_max = width - left - 90;
        const int bar = total == 0 ? 0
                                   : static_cast<int>(static_cast<long>(bar_max) *
                                                      static_cast<long>(solved) /
                                                      static_cast<long>(total));
        os << "<text x=\"10\" y=\"" << (y + 13) << "\">" << ex.id << "</text>\n";
        os << "<rect x=\"" << left << "\" y=\"" << y << "\" width=\"" << bar_max << "\" height=\""
           << bar_h << "\" fill=\"#eee\"/>\n";
        os << "<rect x=\"" << left << "\" y=\"" << y << "\" width=\"" << bar << "\" height=\""
           << bar_h << "\" fill=\"#4a90d9\"/>\n";
        os << "<text x=\"" << (left + bar_max + 8) << "\" y=\"" << (y + 13) << "\">" << solved
           << "/" << total << "</text>\n";
        y += bar_h + gap;
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace pddleval::harness
