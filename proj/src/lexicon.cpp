#include "apilink/text_prep.hpp"

#include <cctype>
#include <unordered_map>

namespace apilink {
namespace {

// Fixed stopword list. Golden files depend on it; grow it only together with
// the fixtures that freeze its effects.
const char* const kStopwords[] = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you",
    "your", "yours", "yourself", "yourselves", "he", "him", "his", "himself",
    "she", "her", "hers", "herself", "it", "its", "itself", "they", "them",
    "their", "theirs", "themselves", "what", "which", "who", "whom", "this",
    "that", "these", "those", "am", "is", "are", "was", "were", "be", "been",
    "being", "have", "has", "had", "having", "do", "does", "did", "doing",
    "a", "an", "the", "and", "but", "if", "or", "because", "as", "until",
    "while", "of", "at", "by", "for", "with", "about", "against", "between",
    "into", "through", "during", "before", "after", "above", "below", "to",
    "from", "up", "down", "in", "out", "on", "off", "over", "under", "again",
    "further", "then", "once", "here", "there", "when", "where", "why",
    "how", "all", "any", "both", "each", "few", "more", "most", "other",
    "some", "such", "no", "nor", "not", "only", "own", "same", "so", "than",
    "too", "very", "s", "t", "can", "will", "just", "don", "should", "now",
    "e.g", "i.e", "etc",
};

// Verb base forms; regular -s/-ed/-ing inflections are generated below.
const char* const kVerbs[] = {
    "accept", "access", "add", "adjust", "agree", "allow", "analyze",
    "answer", "appear", "append", "apply", "argue", "arrive", "ask",
    "assign", "assume", "attach", "avoid", "become", "begin", "behave",
    "believe", "belong", "bind", "break", "bring", "build", "buy", "cache",
    "calculate", "call", "carry", "cast", "catch", "cause", "change",
    "check", "choose", "clean", "clear", "click", "close", "collect",
    "combine", "come", "compare", "compile", "complete", "compress",
    "compute", "configure", "confirm", "connect", "consider", "construct",
    "consume", "contain", "continue", "convert", "copy", "count", "cover",
    "crash", "create", "cut", "deal", "debug", "decide", "declare",
    "decode", "decrease", "define", "delete", "deliver", "depend", "deploy",
    "describe", "deserialize", "design", "detect", "determine", "develop",
    "differ", "disable", "discard", "discuss", "display", "dispose",
    "divide", "download", "draw", "drop", "edit", "embed", "emit", "enable",
    "encode", "encounter", "end", "enjoy", "enter", "escape", "evaluate",
    "examine", "exceed", "exchange", "exclude", "execute", "exist",
    "expand", "expect", "explain", "export", "expose", "extend", "extract",
    "fail", "fall", "feel", "fetch", "fill", "filter", "find", "finish",
    "fix", "flush", "fold", "follow", "force", "forget", "format",
    "forward", "gain", "generate", "get", "give", "go", "grow", "guess",
    "handle", "hang", "happen", "hash", "hear", "help", "hide", "hit",
    "hold", "hope", "ignore", "implement", "import", "improve", "include",
    "increase", "indicate", "inherit", "initialize", "inject", "insert",
    "inspect", "install", "instantiate", "integrate", "intercept",
    "introduce", "invoke", "iterate", "join", "jump", "keep", "know",
    "launch", "lead", "learn", "leave", "let", "like", "limit", "link",
    "listen", "live", "load", "lock", "log", "look", "loop", "lose",
    "maintain", "make", "manage", "map", "mark", "match", "mean", "measure",
    "meet", "merge", "migrate", "miss", "mix", "mock", "modify", "move",
    "need", "normalize", "note", "notice", "notify", "obtain", "occur",
    "offer", "open", "operate", "optimize", "output", "override",
    "overwrite", "pack", "package", "paint", "parse", "pass", "pause",
    "perform", "persist", "pick", "place", "plan", "play", "plug", "point",
    "poll", "populate", "post", "prefer", "prepare", "present", "press",
    "prevent", "print", "process", "produce", "prompt", "propose",
    "protect", "prove", "provide", "publish", "pull", "push", "put",
    "query", "queue", "quit", "raise", "reach", "read", "rebuild",
    "receive", "recommend", "record", "recover", "redirect", "reduce",
    "refactor", "refer", "reference", "refresh", "register", "reject",
    "relate", "release", "reload", "rely", "remain", "remember", "remove",
    "rename", "render", "repeat", "replace", "reply", "report", "represent",
    "request", "require", "reset", "resize", "resolve", "respond",
    "restart", "restore", "restrict", "retain", "retrieve", "return",
    "retry", "reuse", "reverse", "revert", "review", "rewrite", "round",
    "route", "run", "save", "say", "scale", "scan", "schedule", "search",
    "see", "seek", "seem", "sell", "send", "separate", "serialize",
    "serve", "set", "share", "show", "shrink", "shut", "sign", "simplify",
    "skip", "sleep", "solve", "sort", "specify", "spend", "split", "start",
    "state", "stay", "stop", "store", "stream", "strip", "study", "submit",
    "subscribe", "succeed", "suggest", "supply", "support", "suppose",
    "suspend", "swap", "switch", "sync", "synchronize", "take", "talk",
    "tell", "terminate", "test", "think", "throw", "toggle", "trace",
    "track", "transfer", "transform", "translate", "traverse", "treat",
    "trigger", "trim", "truncate", "try", "turn", "understand", "unpack",
    "unsubscribe", "unwrap", "update", "upgrade", "upload", "use",
    "validate", "verify", "visit", "wait", "walk", "want", "warn", "watch",
    "wrap", "write",
};

// Common irregular verb forms.
const char* const kIrregularVerbs[] = {
    "began", "begun", "bought", "bound", "broke", "broken", "brought",
    "built", "came", "caught", "chose", "chosen", "dealt", "drawn", "drew",
    "fallen", "fell", "felt", "forgot", "forgotten", "found", "gave",
    "given", "gone", "went", "grew", "grown", "heard", "held", "hid",
    "hidden", "kept", "knew", "known", "led", "left", "lost", "made",
    "meant", "met", "paid", "ran", "said", "saw", "seen", "sent", "sold",
    "sought", "spent", "stood", "taken", "taught", "thought", "threw",
    "thrown", "told", "took", "understood", "wrote", "written",
};

// Noun base forms; regular plurals are generated below.
const char* const kNouns[] = {
    "album", "algorithm", "annotation", "api", "application",
    "architecture", "argument", "array", "article", "artist", "aspect",
    "attribute", "author", "backend", "background", "band", "bank", "base",
    "bean", "behavior", "benchmark", "binary", "bit", "block", "blog",
    "board", "body", "book", "boolean", "box", "branch", "browser",
    "buffer", "bug", "builder", "bundle", "bus", "button", "byte",
    "calendar", "callback", "canvas", "capability", "car", "case",
    "category", "certificate", "chain", "channel", "chapter", "character",
    "chart", "child", "children", "choice", "city", "class", "client",
    "clock", "code", "collection", "column", "command", "comment",
    "community", "company", "comparison", "compiler", "component",
    "composition", "computer", "concept", "concert", "condition",
    "conference", "config", "configuration", "connection", "console",
    "constant", "constraint", "constructor", "container", "content",
    "context", "contract", "control", "controller", "convention",
    "conversion", "converter", "cookie", "core", "corner", "country",
    "course", "cpu", "credential", "criteria", "culture", "currency",
    "cursor", "customer", "dashboard", "data", "database", "dataset",
    "date", "day", "deadline", "decision", "default", "definition",
    "delegate", "demo", "dependency", "deployment", "depth", "description",
    "desert", "design", "desktop", "destination", "detail", "developer",
    "development", "device", "diagram", "dictionary", "diff", "difference",
    "directory", "discussion", "disk", "distance", "distribution",
    "document", "documentation", "dollar", "domain", "driver", "duration",
    "edge", "editor", "effect", "effort", "element", "email", "encoding",
    "endpoint", "engine", "engineer", "entity", "entry", "enum",
    "environment", "error", "event", "example", "exception", "executable",
    "execution", "expert", "expression", "extension", "face", "factory",
    "family", "fan", "feature", "feedback", "field", "file", "filesystem",
    "flag", "folder", "font", "foot", "form", "formula", "forum", "frame",
    "framework", "friend", "function", "game", "garden", "gateway",
    "generator", "goal", "graph", "graphics", "grid", "group", "guide",
    "hand", "handler", "hardware", "head", "header", "heap", "height",
    "helper", "hierarchy", "history", "home", "homepage", "hook", "host",
    "hour", "house", "icon", "id", "idea", "identifier", "image",
    "implementation", "index", "info", "information", "input", "instance",
    "institution", "integration", "interface", "internet", "interval",
    "interview", "issue", "item", "iteration", "iterator", "java",
    "javascript", "job", "journal", "json", "kernel", "key", "keyboard",
    "keyword", "kid", "kind", "label", "lambda", "language", "laptop",
    "layer", "layout", "leader", "legend", "lesson", "letter", "level",
    "library", "license", "life", "lifecycle", "line", "list", "listener",
    "literal", "loader", "location", "logger", "logic", "login", "machine",
    "macro", "mail", "man", "management", "manager", "manual", "mapper",
    "mapping", "margin", "marker", "market", "marshaller", "matcher",
    "material", "matrix", "meaning", "media", "member", "memory", "men",
    "menu", "message", "metadata", "method", "metric", "microservice",
    "middleware", "migration", "mile", "mind", "minute", "mistake",
    "mode", "model", "module", "moment", "money", "monitor", "month",
    "morning", "mother", "mouse", "movie", "music", "name", "namespace",
    "nature", "network", "news", "night", "node", "notification", "number",
    "object", "offset", "operation", "operator", "opinion", "option",
    "order", "organization", "overview", "owner", "page", "pair", "panel",
    "paper", "paragraph", "parameter", "parent", "parser", "part",
    "partition", "path", "pattern", "payment", "people", "performance",
    "period", "permission", "person", "phase", "phone", "picture", "piece",
    "pipeline", "platform", "player", "plugin", "pointer", "policy",
    "pool", "port", "portal", "position", "power", "practice", "prefix",
    "price", "principle", "problem", "procedure", "processor", "product",
    "profile", "program", "programmer", "progress", "project", "property",
    "protocol", "prototype", "provider", "proxy", "purpose", "quality",
    "question", "rain", "range", "rate", "reader", "reason", "registry",
    "relation", "relationship", "renderer", "repository", "requirement",
    "research", "resource", "response", "rest", "result", "risk", "road",
    "role", "room", "root", "router", "routine", "row", "rule", "runtime",
    "scene", "schema", "school", "scope", "screen", "script", "season",
    "second", "section", "sector", "security", "segment", "selector",
    "sentence", "sequence", "serializer", "series", "server", "service",
    "session", "shape", "side", "signature", "singleton", "site", "size",
    "snippet", "socket", "software", "solution", "source", "space", "spec",
    "specification", "speed", "sql", "stack", "stacktrace", "staff",
    "stage", "standard", "station", "status", "street", "string",
    "structure", "student", "studio", "stuff", "style", "subject", "suite",
    "summer", "surface", "syntax", "system", "tab", "table", "tag",
    "target", "task", "team", "technique", "technology", "template",
    "term", "text", "theme", "theory", "thing", "thread", "threshold",
    "time", "timeout", "timestamp", "timezone", "title", "token", "tool",
    "toolkit", "topic", "town", "trade", "traffic", "transaction",
    "transformer", "tree", "trip", "tutorial", "type", "ui", "unit",
    "url", "user", "utility", "validation", "validator", "value",
    "variable", "vector", "vendor", "version", "video", "view", "visitor",
    "war", "water", "web", "website", "week", "widget", "width", "wife",
    "window", "winter", "wire", "woman", "women", "word", "work",
    "worker", "workflow", "workspace", "world", "wrapper", "writer",
    "xml", "year", "zone",
};

// Adjectives, adverbs, and other words kept to stop the suffix and
// capitalization fallbacks from firing on them.
const char* const kOthers[] = {
    "actual", "actually", "almost", "already", "also", "always",
    "anywhere", "available", "bad", "best", "better", "big", "certain",
    "common", "correct", "current", "currently", "different", "difficult",
    "direct", "directly", "early", "easily", "easy", "effortless",
    "empty", "entire", "exact", "exactly", "explicit", "external",
    "extra", "false", "fast", "final", "finally", "fine", "first",
    "fluent", "free", "full", "general", "good", "great", "happy",
    "hard", "high", "however", "huge", "immediate", "important",
    "informal", "instead", "internal", "invalid", "large", "last",
    "late", "latest", "legacy", "little", "local", "long", "low",
    "main", "major", "many", "maybe", "minor", "missing", "multiple",
    "native", "necessary", "never", "new", "next", "nice", "null",
    "official", "often", "old", "optional", "original", "particular",
    "perhaps", "personal", "plain", "popular", "possible", "previous",
    "primary", "private", "probable", "proper", "properly", "protected",
    "public", "quick", "quickly", "quite", "rather", "raw", "ready",
    "real", "really", "recent", "regular", "related", "relevant",
    "remote", "right", "robust", "safe", "secondary", "several", "short",
    "similar", "simple", "simply", "single", "slow", "slowly", "small",
    "sometimes", "somewhere", "soon", "special", "specific", "stable",
    "static", "still", "strict", "strong", "sure", "synthetic",
    "therefore", "third", "thus", "tiny", "today", "together", "tomorrow",
    "top", "total", "true", "typical", "typically", "unable", "unique",
    "unknown", "usual", "usually", "valid", "various", "virtual",
    "visible", "well", "whole", "wide", "wrong", "yesterday", "yet",
};

bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.substr(w.size() - suffix.size()) == suffix;
}

// Regular inflection: -s form of a verb or plural of a noun.
std::string s_form(const std::string& base) {
    if (ends_with(base, "s") || ends_with(base, "x") || ends_with(base, "z") ||
        ends_with(base, "ch") || ends_with(base, "sh"))
        return base + "es";
    if (base.size() > 1 && base.back() == 'y' &&
        std::string("aeiou").find(base[base.size() - 2]) == std::string::npos)
        return base.substr(0, base.size() - 1) + "ies";
    return base + "s";
}

std::string ed_form(const std::string& base) {
    if (ends_with(base, "e")) return base + "d";
    if (base.size() > 1 && base.back() == 'y' &&
        std::string("aeiou").find(base[base.size() - 2]) == std::string::npos)
        return base.substr(0, base.size() - 1) + "ied";
    return base + "ed";
}

std::string ing_form(const std::string& base) {
    if (ends_with(base, "e") && !ends_with(base, "ee"))
        return base.substr(0, base.size() - 1) + "ing";
    return base + "ing";
}

using PosMap = std::unordered_map<std::string, Pos>;

PosMap build_lexicon() {
    PosMap lex;
    auto put = [&lex](const std::string& w, Pos p) { lex.emplace(w, p); };

    for (const char* v : kVerbs) {
        std::string base(v);
        put(base, Pos::Verb);
        put(s_form(base), Pos::Verb);
        put(ed_form(base), Pos::Verb);
        put(ing_form(base), Pos::Verb);
    }
    for (const char* v : kIrregularVerbs) put(v, Pos::Verb);
    for (const char* n : kNouns) {
        std::string base(n);
        put(base, Pos::Noun);
        put(s_form(base), Pos::Noun);
    }
    for (const char* o : kOthers) put(o, Pos::Other);
    return lex;
}

const PosMap& lexicon() {
    static const PosMap lex = build_lexicon();
    return lex;
}

}  // namespace

const std::set<std::string, std::less<>>& stopword_set() {
    static const std::set<std::string, std::less<>> words(std::begin(kStopwords),
                                                          std::end(kStopwords));
    return words;
}

bool is_stopword(std::string_view normalized) {
    return stopword_set().count(normalized) > 0;
}

Pos tag_word(std::string_view surface, std::string_view normalized) {
    if (normalized.empty()) return Pos::Other;

    auto it = lexicon().find(std::string(normalized));
    if (it != lexicon().end()) return it->second;

    // Suffix rules apply only when a real stem remains.
    auto has_suffix = [normalized](std::string_view suffix) {
        return normalized.size() >= suffix.size() + 2 &&
               normalized.substr(normalized.size() - suffix.size()) == suffix;
    };
    if (has_suffix("ing") || has_suffix("ize") || has_suffix("ed"))
        return Pos::Verb;
    if (has_suffix("tion") || has_suffix("ment") || has_suffix("er") ||
        has_suffix("or"))
        return Pos::Noun;

    if (!surface.empty() && std::isupper(static_cast<unsigned char>(surface[0])))
        return Pos::Noun;
    return Pos::Other;
}

void pos_tag(Sentence& sentence) {
    for (Token& t : sentence.tokens) t.pos = tag_word(t.surface, t.normalized);
}

}  // namespace apilink
