#include "pddleval/prompts.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pddleval/printer.hpp"
#include "pddleval/util.hpp"

namespace pddleval::prompts {

namespace fs = std::filesystem;

std::string to_string(TextCondition cond) {
    switch (cond) {
        case TextCondition::none: return "none";
        case TextCondition::sum: return "sum";
        case TextCondition::map: return "map";
        case TextCondition::rel: return "rel";
        case TextCondition::all: return "all";
    }
    return "?";
}

std::string to_string(StyleKind kind) {
    switch (kind) {
        case StyleKind::plain: return "plain";
        case StyleKind::cot: return "cot";
        case StyleKind::zpd: return "zpd";
    }
    return "?";
}

TextCondition text_condition_from(const std::string& name) {
    if (name == "none") return TextCondition::none;
    if (name == "sum") return TextCondition::sum;
    if (name == "map") return TextCondition::map;
    if (name == "rel") return TextCondition::rel;
    if (name == "all") return TextCondition::all;
    throw std::invalid_argument("unknown text condition '" + name + "'");
}

StyleKind style_from(const std::string& name) {
    if (name == "plain") return StyleKind::plain;
    if (name == "cot") return StyleKind::cot;
    if (name == "zpd") return StyleKind::zpd;
    throw std::invalid_argument("unknown instruction style '" + name + "'");
}

PromptTemplates PromptTemplates::load(const fs::path& dir) {
    PromptTemplates t;
    t.plain = util::read_file(dir / "plain.txt");
    t.cot = util::read_file(dir / "cot.txt");
    t.zpd = util::read_file(dir / "zpd.txt");
    for (int i = 1;; ++i) {
        auto shot = util::try_read_file(dir / ("fewshot_" + std::to_string(i) + ".txt"));
        if (!shot) break;
        t.few_shot.push_back(std::move(*shot));
    }
    return t;
}

std::string render_text_portion(const dataset::ExampleRecord& example, TextCondition cond) {
    std::ostringstream os;
    switch (cond) {
        case TextCondition::none:
            return "";
        case TextCondition::sum: {
            if (!example.has_summaries()) {
                throw MissingAnnotation(cond, "a summary for every action (summaries.tsv)");
            }
            for (const Ident& action : example.domain.header.action_names) {
                os << action.text << "; " << example.summaries.at(action) << "\n";
            }
            return os.str();
        }
        case TextCondition::map: {
            if (!example.has_mapping()) {
                throw MissingAnnotation(cond, "a step mapping for every action (mapping.tsv)");
            }
            for (const Ident& action : example.domain.header.action_names) {
                os << action.text << ":";
                for (int step : example.step_mapping.at(action)) {
                    os << ' ' << example.steps[static_cast<std::size_t>(step - 1)];
                }
                os << "\n";
            }
            return os.str();
        }
        case TextCondition::rel: {
            if (!example.has_mapping()) {
                throw MissingAnnotation(cond, "a step mapping for every action (mapping.tsv)");
            }
            std::set<int> used;
            for (const auto& [action, steps] : example.step_mapping) {
                (void)action;
                used.insert(steps.begin(), steps.end());
            }
            for (int step : used) {
                os << "Step " << step << ". " << example.steps[static_cast<std::size_t>(step - 1)]
                   << "\n";
            }
            return os.str();
        }
        case TextCondition::all: {
            for (std::size_t i = 0; i < example.steps.size(); ++i) {
                os << "Step " << (i + 1) << ". " << example.steps[i] << "\n";
            }
            return os.str();
        }
    }
    return "";
}

namespace {

void replace_all(std::string& text, const std::string& needle, const std::string& value) {
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        text.replace(pos, needle.size(), value);
        pos += value.size();
    }
}

std::string render_types(const TypeHierarchy& types) {
    std::ostringstream os;
    const auto& decls = types.declarations();
    std::size_t i = 0;
    while (i < decls.size()) {
        std::size_t j = i;
        while (j < decls.size() && decls[j].second == decls[i].second) ++j;
        for (std::size_t k = i; k < j; ++k) {
            if (k > i) os << ' ';
            os << decls[k].first.text;
        }
        os << " - " << decls[i].second.text << "\n";
        i = j;
    }
    return os.str();
}

std::string render_predicates(const std::vector<PredicateDecl>& predicates) {
    std::ostringstream os;
    for (const PredicateDecl& p : predicates) {
        os << '(' << p.name.text;
        for (const TypedVar& v : p.params) os << " ?" << v.name.text << " - " << v.type.text;
        os << ")\n";
    }
    return os.str();
}

}  // namespace

std::string build_prompt(const PromptRequest& request, const dataset::ExampleRecord& example,
                         const PromptTemplates& templates) {
    if (request.header.action_names.empty()) {
        throw std::invalid_argument("prompt request needs a header with at least one action");
    }
    if (request.style.shots < 0 ||
        static_cast<std::size_t>(request.style.shots) > templates.few_shot.size()) {
        throw std::invalid_argument("shots must be between 0 and " +
                                    std::to_string(templates.few_shot.size()));
    }

    std::string body;
    switch (request.style.kind) {
        case StyleKind::plain: body = templates.plain; break;
        case StyleKind::cot: body = templates.cot; break;
        case StyleKind::zpd: body = templates.zpd; break;
    }

    std::ostringstream names;
    for (const Ident& action : request.header.action_names) names << action.text << "\n";

    replace_all(body, "<insert_action_names>", names.str());
    replace_all(body, "<insert_types>", render_types(request.header.types));
    replace_all(body, "<insert_predicates>", render_predicates(request.header.predicates));
    replace_all(body, "<insert_goal>", request.goal_phrase);
    replace_all(body, "<insert_text>", render_text_portion(example, request.condition));

    std::ostringstream prompt;
    for (int i = 0; i < request.style.shots; ++i) {
        prompt << templates.few_shot[static_cast<std::size_t>(i)] << "\n";
    }
    prompt << body;
    return prompt.str();
}

AssembledPrediction assemble_prediction(const DomainHeader& header, const std::string& raw) {
    AssembledPrediction out;
    ScanResult scan = scan_action_blocks(raw);
    out.block_errors = scan.errors;
    for (const ScanError& err : scan.errors) {
        out.diagnostics.push_back(make_diag(
            Severity::error, "syntax-error",
            "action block at offset " + std::to_string(err.offset) + ": " + err.message));
    }
    SpliceResult spliced = splice_actions(header, scan.actions);
    out.domain = std::move(spliced.domain);
    out.missing = std::move(spliced.missing);
    out.extra = std::move(spliced.extra);
    for (Diagnostic& d : spliced.warnings) out.diagnostics.push_back(std::move(d));
    return out;
}

}  // namespace pddleval::prompts
