#include "motorlint/lexicon.hpp"

#include <cctype>
#include <fstream>

#include "motorlint/errors.hpp"

namespace motorlint {

const ClosureLexicon& ClosureLexicon::default_lexicon() {
    // Seven seed words plus the embedding-derived expansion ("ignore" is
    // listed once; the source list repeats it).
    static const ClosureLexicon lex = ClosureLexicon::from_words({
        // seed words
        "close", "cancel", "dismiss", "done", "ok", "finish", "return",
        // embedding-derived words
        "deny", "allow", "exit", "end", "terminate", "quit", "back", "stop",
        "ignore", "proceed", "save", "apply", "submit", "confirm", "abort",
        "decline", "reject",
    });
    return lex;
}

ClosureLexicon ClosureLexicon::from_words(std::set<std::string> words) {
    ClosureLexicon lex;
    for (const auto& w : words) {
        for (const auto& token : normalize_tokens(w)) lex.words_.insert(token);
    }
    return lex;
}

ClosureLexicon ClosureLexicon::with_extra_words(const std::set<std::string>& extra) const {
    std::set<std::string> merged = words_;
    for (const auto& w : extra) {
        for (const auto& token : normalize_tokens(w)) merged.insert(token);
    }
    ClosureLexicon lex;
    lex.words_ = std::move(merged);
    return lex;
}

ClosureLexicon ClosureLexicon::merge_words_file(const std::filesystem::path& path) const {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read lexicon file " + path.string());
    std::set<std::string> extra;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        for (const auto& token : normalize_tokens(line)) extra.insert(token);
    }
    return with_extra_words(extra);
}

std::vector<std::string> normalize_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (c < 0x80 && (std::isspace(c) || std::ispunct(c))) {
            if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
            continue;
        }
        current.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::optional<std::string> match_closure(const std::vector<std::string>& tokens,
                                         const ClosureLexicon& lex) {
    for (const auto& t : tokens) {
        if (lex.contains(t)) return t;
    }
    return std::nullopt;
}

}  // namespace motorlint
