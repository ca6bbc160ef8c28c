#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "apilink/api_db.hpp"
#include "apilink/mention_detect.hpp"
#include "apilink/text_prep.hpp"

namespace apilink {

enum class SnippetStatus {
    ValidJavaLike,
    DiscardedNonJava,    // other-language keywords or prose-shaped lines
    DiscardedMalformed,  // markup content or unbalanced delimiters
};

const char* to_string(SnippetStatus s);

struct CodeSnippet {
    std::string raw;
    SnippetStatus status = SnippetStatus::DiscardedMalformed;
    int position = 0;  // sentence index the block follows, from RawSnippet
    std::vector<std::string> imports;  // path strings, trailing ".*" kept
    std::set<std::string> declared_types;
    std::set<std::string> used_types;  // may contain fully qualified names
};

// Island parse: imports, type declarations, and capitalized camel-case type
// usages are recognized without a full grammar. Extraction fields stay empty
// unless the snippet passes the validity gate.
CodeSnippet parse_snippet(const std::string& raw);

struct CodeContext {
    std::set<std::string> types;
};

struct CodeLinkOptions {
    // Keep java.lang defaults (String, Object, ...) in code contexts instead
    // of filtering them.
    bool keep_default_types = false;
};

// One CodeContext per MCL, in the same order. A post with a single mention
// gives it every type in the post; with several, each code term goes to the
// nearest mention in its sentence (ties to the preceding one), otherwise to
// the last mention before it, otherwise to the first one after it. Types
// declared anywhere in the same post are dropped, as are java.lang defaults
// unless keep_default_types is set. Title mentions get an empty context.
std::vector<CodeContext> extract_code_contexts(
    const ThreadDoc& doc, const std::vector<MentionCandidateList>& mcls,
    const CodeLinkOptions& options = {});

// Import path with the "import" keyword, semicolons, '*' and trailing dots
// removed.
std::string process_import(const std::string& import_statement);

// Candidate api ids a type name links to. A fully qualified name must match
// a candidate's type index exactly and never falls back to the unqualified
// branch. An unqualified name first narrows to import-confirmed candidates;
// when no import confirms any, every unqualified match is returned.
std::set<std::string> link_type(const MentionCandidateList& mcl,
                                const std::string& type_name,
                                const std::vector<CodeSnippet>& post_snippets,
                                const ApiDatabase& db);

// link_type for every type in the context, keyed by type name.
std::map<std::string, std::set<std::string>> link_context_types(
    const MentionCandidateList& mcl, const CodeContext& ctx,
    const std::vector<CodeSnippet>& post_snippets, const ApiDatabase& db);

// Share of context types that link to the candidate; empty context gives 0.
double structural_similarity(
    const CodeContext& ctx, const std::string& api_id,
    const std::map<std::string, std::set<std::string>>& links);

}  // namespace apilink
