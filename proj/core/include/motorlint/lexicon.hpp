#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace motorlint {

// The closure-word list matched against text found on an expanding section.
// Immutable once built; extend via with_extra_words / merge_words_file.
class ClosureLexicon {
public:
    // The built-in word set: 7 seed words plus the embedding-derived ones.
    static const ClosureLexicon& default_lexicon();

    static ClosureLexicon from_words(std::set<std::string> words);

    ClosureLexicon with_extra_words(const std::set<std::string>& extra) const;
    // One word per line; '#' starts a comment.
    ClosureLexicon merge_words_file(const std::filesystem::path& path) const;

    bool contains(const std::string& token) const { return words_.count(token) > 0; }
    const std::set<std::string>& words() const { return words_; }

private:
    std::set<std::string> words_;
};

// Lowercases and splits on whitespace and punctuation, dropping empty
// tokens. Case handling is ASCII; non-ASCII bytes pass through as token
// characters (the built-in lexicon is ASCII-only).
std::vector<std::string> normalize_tokens(const std::string& text);

// First token present in the lexicon, if any. Tokens must already be
// normalized.
std::optional<std::string> match_closure(const std::vector<std::string>& tokens,
                                         const ClosureLexicon& lex);

}  // namespace motorlint
