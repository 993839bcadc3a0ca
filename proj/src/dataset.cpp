#include "pddleval/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "pddleval/lexer.hpp"
#include "pddleval/parser.hpp"
#include "pddleval/util.hpp"

namespace pddleval::dataset {

namespace fs = std::filesystem;

DatasetError::DatasetError(Kind kind, const fs::path& path, const std::string& detail)
    : std::runtime_error(path.string() + ": " + detail), kind_(kind), path_(path) {}

bool ExampleRecord::has_summaries() const {
    if (summaries.empty()) return false;
    return std::all_of(domain.header.action_names.begin(), domain.header.action_names.end(),
                       [&](const Ident& a) { return summaries.count(a) > 0; });
}

bool ExampleRecord::has_mapping() const {
    if (step_mapping.empty()) return false;
    return std::all_of(domain.header.action_names.begin(), domain.header.action_names.end(),
                       [&](const Ident& a) { return step_mapping.count(a) > 0; });
}

namespace {

std::string require_file(const fs::path& path) {
    auto content = util::try_read_file(path);
    if (!content) throw DatasetError(DatasetError::Kind::missing_file, path, "file not found");
    return *content;
}

// Paragraphs separated by blank lines; a leading "N." marker is stripped.
std::vector<std::string> parse_steps(const std::string& text) {
    std::vector<std::string> steps;
    std::string current;
    auto flush = [&]() {
        std::string trimmed = util::trim(current);
        current.clear();
        if (trimmed.empty()) return;
        std::size_t i = 0;
        while (i < trimmed.size() && std::isdigit(static_cast<unsigned char>(trimmed[i]))) ++i;
        if (i > 0 && i < trimmed.size() && trimmed[i] == '.') {
            trimmed = util::trim(trimmed.substr(i + 1));
        }
        steps.push_back(std::move(trimmed));
    };
    for (const std::string& line : util::split_lines(text)) {
        if (util::trim(line).empty()) {
            flush();
        } else {
            if (!current.empty()) current += ' ';
            current += line;
        }
    }
    flush();
    return steps;
}

std::map<Ident, std::string> parse_tsv(const std::string& content, const fs::path& path) {
    std::map<Ident, std::string> out;
    for (const std::string& line : util::split_lines(content)) {
        if (util::trim(line).empty() || line.starts_with("#")) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos) {
            throw DatasetError(DatasetError::Kind::parse_failure, path,
                               "expected TAB-separated fields: " + line);
        }
        out[Ident::make(util::trim(line.substr(0, tab)))] = util::trim(line.substr(tab + 1));
    }
    return out;
}

}  // namespace

ExampleRecord load_example(const fs::path& dir) {
    ExampleRecord ex;
    ex.id = dir.filename().string();
    ex.title = ex.id;
    std::replace(ex.title.begin(), ex.title.end(), '_', ' ');

    ex.steps = parse_steps(require_file(dir / "text.txt"));

    const fs::path domain_path = dir / "domain.pddl";
    try {
        ex.domain = parse_domain(require_file(domain_path), &ex.warnings);
    } catch (const ParseError& err) {
        throw DatasetError(DatasetError::Kind::parse_failure, domain_path, err.what());
    }

    const fs::path problems_dir = dir / "problems";
    if (!fs::is_directory(problems_dir)) {
        throw DatasetError(DatasetError::Kind::missing_file, problems_dir, "directory not found");
    }
    std::vector<fs::path> problem_files;
    for (const auto& entry : fs::directory_iterator(problems_dir)) {
        if (entry.path().extension() == ".pddl") problem_files.push_back(entry.path());
    }
    std::sort(problem_files.begin(), problem_files.end());
    for (const fs::path& ppath : problem_files) {
        ProblemEntry entry;
        entry.stem = ppath.stem().string();
        try {
            entry.problem = parse_problem(require_file(ppath), &ex.warnings);
        } catch (const ParseError& err) {
            throw DatasetError(DatasetError::Kind::parse_failure, ppath, err.what());
        }
        const fs::path plan_path = dir / "plans" / (entry.stem + ".plan");
        try {
            entry.plan = parse_plan(require_file(plan_path));
        } catch (const ParseError& err) {
            throw DatasetError(DatasetError::Kind::parse_failure, plan_path, err.what());
        }
        ex.problems.push_back(std::move(entry));
    }

    std::set<Ident> action_names(ex.domain.header.action_names.begin(),
                                 ex.domain.header.action_names.end());

    if (auto content = util::try_read_file(dir / "summaries.tsv")) {
        ex.summaries = parse_tsv(*content, dir / "summaries.tsv");
        for (const auto& [action, unused] : ex.summaries) {
            (void)unused;
            if (!action_names.count(action)) {
                throw DatasetError(DatasetError::Kind::dangling_reference, dir / "summaries.tsv",
                                   "summary for unknown action '" + action.text + "'");
            }
        }
    }
    if (auto content = util::try_read_file(dir / "mapping.tsv")) {
        for (const auto& [action, value] : parse_tsv(*content, dir / "mapping.tsv")) {
            if (!action_names.count(action)) {
                throw DatasetError(DatasetError::Kind::dangling_reference, dir / "mapping.tsv",
                                   "mapping for unknown action '" + action.text + "'");
            }
            std::vector<int> indices;
            for (const std::string& field : util::split(value, ',')) {
                std::string num = util::trim(field);
                if (num.empty()) continue;
                int step = 0;
                try {
                    step = std::stoi(num);
                } catch (const std::exception&) {
                    throw DatasetError(DatasetError::Kind::parse_failure, dir / "mapping.tsv",
                                       "bad step number '" + num + "'");
                }
                if (step < 1 || static_cast<std::size_t>(step) > ex.steps.size()) {
                    throw DatasetError(DatasetError::Kind::dangling_reference, dir / "mapping.tsv",
                                       "action '" + action.text + "' references step " + num +
                                           " of " + std::to_string(ex.steps.size()));
                }
                indices.push_back(step);
            }
            std::sort(indices.begin(), indices.end());
            indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
            ex.step_mapping.emplace(action, std::move(indices));
        }
    }
    return ex;
}

double CorpusStats::mean_actions_per_domain() const {
    return examples == 0 ? 0.0 : static_cast<double>(total_actions) / static_cast<double>(examples);
}

double CorpusStats::mean_plan_length() const {
    return problems == 0 ? 0.0
                         : static_cast<double>(total_plan_steps) / static_cast<double>(problems);
}

Corpus load_corpus(const fs::path& root, const std::vector<std::string>& filter) {
    Corpus corpus;
    const fs::path manifest_path = root / "manifest";
    auto manifest = util::try_read_file(manifest_path);
    if (!manifest) {
        throw DatasetError(DatasetError::Kind::bad_manifest, manifest_path, "manifest not found");
    }

    std::set<std::string> wanted(filter.begin(), filter.end());
    for (const std::string& raw : util::split_lines(*manifest)) {
        std::string id = util::trim(raw);
        if (id.empty() || id.starts_with("#")) continue;
        if (!wanted.empty() && !wanted.count(id)) continue;
        try {
            ExampleRecord ex = load_example(root / id);
            corpus.stats.examples += 1;
            corpus.stats.problems += ex.problems.size();
            corpus.stats.total_actions += ex.domain.actions.size();
            for (const ProblemEntry& p : ex.problems) corpus.stats.total_plan_steps += p.plan.size();
            corpus.examples.push_back(std::move(ex));
        } catch (const std::exception& err) {
            corpus.errors.push_back(id + ": " + err.what());
        }
    }
    return corpus;
}

bool GoldCheck::all_ok() const {
    if (items.empty()) return true;  // vacuous, flagged by a warning
    return std::all_of(items.begin(), items.end(), [](const GoldCheckItem& item) {
        return item.plan_valid && item.solve == planner::SolveOutcome::Kind::solved;
    });
}

GoldCheck check_gold(const ExampleRecord& example, const planner::SolveOptions& opts) {
    GoldCheck check;
    if (example.problems.empty()) {
        check.warnings.push_back("example '" + example.id + "' has no problems; nothing to check");
        return check;
    }
    for (const ProblemEntry& entry : example.problems) {
        GoldCheckItem item;
        item.problem = entry.stem;
        planner::PlanTrace trace = planner::validate_plan(example.domain, entry.problem, entry.plan);
        item.plan_valid = trace.valid();
        if (!item.plan_valid) {
            for (const auto& step : trace.steps) {
                if (!step.error.empty()) {
                    item.detail = "gold plan: " + step.error;
                    break;
                }
            }
            if (item.detail.empty() && !trace.goal_satisfied) item.detail = "gold plan misses goal";
        }
        planner::SolveOutcome outcome = planner::bfs_solve(example.domain, entry.problem, opts);
        item.solve = outcome.kind;
        if (!outcome.solved() && item.detail.empty()) item.detail = outcome.note;
        check.items.push_back(std::move(item));
    }
    return check;
}

}  // namespace pddleval::dataset
