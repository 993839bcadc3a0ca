// Prompt construction from frozen template assets, and reassembly of a full
// domain from raw model output.

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "pddleval/ast.hpp"
#include "pddleval/dataset.hpp"
#include "pddleval/diagnostics.hpp"
#include "pddleval/parser.hpp"

namespace pddleval::prompts {

enum class TextCondition { none, sum, map, rel, all };
enum class StyleKind { plain, cot, zpd };

std::string to_string(TextCondition cond);
std::string to_string(StyleKind kind);
TextCondition text_condition_from(const std::string& name);
StyleKind style_from(const std::string& name);

struct InstructionStyle {
    StyleKind kind = StyleKind::plain;
    int shots = 0;  // few-shot examples prepended, 0..3
};

struct PromptRequest {
    std::string example_id;
    InstructionStyle style;
    TextCondition condition = TextCondition::none;
    DomainHeader header;
    std::string goal_phrase;
};

class MissingAnnotation : public std::runtime_error {
public:
    MissingAnnotation(TextCondition cond, const std::string& what)
        : std::runtime_error("text condition '" + to_string(cond) + "' needs " + what),
          condition_(cond) {}
    TextCondition condition() const { return condition_; }

private:
    TextCondition condition_;
};

// Templates are plain text files with <insert_*> placeholders, loaded as
// bytes and never reformatted, so identical requests yield identical
// prompts.
struct PromptTemplates {
    std::string plain;
    std::string cot;
    std::string zpd;
    std::vector<std::string> few_shot;  // bank of 3, used in order

    static PromptTemplates load(const std::filesystem::path& dir);
};

// Text portion per condition:
//   none  empty
//   sum   "action; summary" per action, header order
//   map   "action: <its steps>" blocks, header order
//   rel   "Step N. <text>" for the union of mapped steps, step order
//   all   "Step N. <text>" for every step
std::string render_text_portion(const dataset::ExampleRecord& example, TextCondition cond);

std::string build_prompt(const PromptRequest& request, const dataset::ExampleRecord& example,
                         const PromptTemplates& templates);

struct AssembledPrediction {
    DomainFile domain;
    std::vector<Ident> missing;
    std::vector<Ident> extra;
    std::vector<ScanError> block_errors;
    std::vector<Diagnostic> diagnostics;

    bool has_syntax_errors() const { return !block_errors.empty(); }
};

// scan_action_blocks + splice_actions over raw model output. Never throws;
// everything wrong with the completion lands in the diagnostics.
AssembledPrediction assemble_prediction(const DomainHeader& header, const std::string& raw);

}  // namespace pddleval::prompts
