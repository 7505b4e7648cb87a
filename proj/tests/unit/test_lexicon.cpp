#include <doctest.h>

#include <cctype>

#include "../common/testutil.hpp"
#include "motorlint/lexicon.hpp"

using namespace motorlint;
namespace tu = motorlint::testutil;

TEST_CASE("normalize_tokens lowercases and splits on punctuation") {
    CHECK(normalize_tokens("OK, got it!") == std::vector<std::string>{"ok", "got", "it"});
    CHECK(normalize_tokens("") == std::vector<std::string>{});
    CHECK(normalize_tokens("CANCEL") == std::vector<std::string>{"cancel"});
    CHECK(normalize_tokens("  \t\n ") == std::vector<std::string>{});
    CHECK(normalize_tokens("save-and-exit") == std::vector<std::string>{"save", "and", "exit"});
}

TEST_CASE("match_closure is whole-token, first-match") {
    const auto& lex = ClosureLexicon::default_lexicon();
    CHECK(match_closure({"cancel"}, lex) == "cancel");
    CHECK(match_closure({"cancellation"}, lex) == std::nullopt);  // not a substring match
    CHECK(match_closure({"please", "confirm"}, lex) == "confirm");
    CHECK(match_closure({}, lex) == std::nullopt);
    CHECK(match_closure({"backpack"}, lex) == std::nullopt);
    CHECK(match_closure({"backpack", "back"}, lex) == "back");
}

TEST_CASE("the default lexicon is closed under its own normalization") {
    const auto& lex = ClosureLexicon::default_lexicon();
    CHECK_FALSE(lex.words().empty());
    for (const auto& word : lex.words()) {
        CHECK(match_closure(normalize_tokens(word), lex) == word);
    }
}

TEST_CASE("the default lexicon contains the seed words") {
    const auto& lex = ClosureLexicon::default_lexicon();
    for (const char* w : {"close", "cancel", "dismiss", "done", "ok", "finish", "return"})
        CHECK(lex.contains(w));
    for (const char* w : {"deny", "allow", "exit", "quit", "confirm", "abort", "reject"})
        CHECK(lex.contains(w));
}

TEST_CASE("matching is case insensitive end to end") {
    const auto& lex = ClosureLexicon::default_lexicon();
    for (const auto& word : lex.words()) {
        std::string upper = word;
        for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        CHECK(match_closure(normalize_tokens(upper), lex).has_value());
    }
}

TEST_CASE("extra words merge from a file") {
    tu::TempDir dir;
    tu::write_text(dir.path() / "extra.txt", "# project words\nadios\nSCHLIESSEN\n");
    const auto lex = ClosureLexicon::default_lexicon().merge_words_file(dir.path() / "extra.txt");
    CHECK(lex.contains("adios"));
    CHECK(lex.contains("schliessen"));
    CHECK(lex.contains("cancel"));
    CHECK_FALSE(ClosureLexicon::default_lexicon().contains("adios"));
}
