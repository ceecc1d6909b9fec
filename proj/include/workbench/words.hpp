#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wb {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept;
};

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    std::size_t size() const { return symbols_.size(); }
    const std::string& symbol(Letter l) const { return symbols_.at(l); }
    const std::vector<std::string>& symbols() const { return symbols_; }
    std::optional<Letter> find(std::string_view s) const;
    bool single_char() const { return single_char_; }
    bool has_digit_symbols() const { return digits_; }
    bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

private:
    std::vector<std::string> symbols_;
    bool single_char_ = true;
    bool digits_ = false;
};

struct SignedLetter {
    Letter letter;
    int sign;  // +1 or -1
    bool operator==(const SignedLetter& o) const { return letter == o.letter && sign == o.sign; }
};
using SignedWord = std::vector<SignedLetter>;

Word parse_word(std::string_view text, const Alphabet& alphabet);
SignedWord parse_signed_word(std::string_view text, const Alphabet& alphabet);
std::string render_word(const Word& w, const Alphabet& alphabet);
// Letter by letter without exponents; "ε" for the empty word.
std::string render_plain(const Word& w, const Alphabet& alphabet);
std::string render_signed(const SignedWord& w, const Alphabet& alphabet);

SignedWord positive(const Word& w);
SignedWord inverse(const Word& w);
SignedWord concat(const SignedWord& a, const SignedWord& b);
Word concat(const Word& a, const Word& b);
Word repeat(const Word& w, std::size_t k);

struct WordStats {
    std::size_t total = 0;
    std::vector<std::size_t> counts;
};
WordStats word_stats(const Word& w, std::size_t alphabet_size);
std::size_t letter_count(const Word& w, Letter l);

bool is_prefix(const Word& p, const Word& w);
bool is_suffix(const Word& s, const Word& w);
// Position of the first occurrence of needle in hay at or after from, or npos.
std::size_t find_factor(const Word& hay, const Word& needle, std::size_t from = 0);
bool contains_factor(const Word& hay, const Word& needle);
Word subword(const Word& w, std::size_t pos, std::size_t len);

// All x with v = xy = wx for nonempty w, y (proper prefixes that are also suffixes), shortest first.
std::vector<Word> overlap_set(const Word& v);

struct Relation {
    Word lhs, rhs;
};

class Presentation {
public:
    Presentation() = default;
    Presentation(Alphabet alphabet, std::vector<Relation> relations);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<Relation>& relations() const { return relations_; }
    bool one_relator() const { return relations_.size() == 1; }
    const Relation& relation() const;
    std::vector<Word> relators() const;

    // Throws Error(precondition) when an invariant of a presentation fails.
    void validate() const;
    Word word(std::string_view text) const { return parse_word(text, alphabet_); }
    std::string render(const Word& w) const { return render_word(w, alphabet_); }
    std::string to_text() const;

private:
    Alphabet alphabet_;
    std::vector<Relation> relations_;
};

// "generators: a b c" followed by one or more "relation: u = v" lines; '#' starts a comment.
Presentation parse_presentation(std::string_view text);
Presentation make_presentation(const std::vector<std::string>& symbols,
                               const std::vector<std::pair<std::string, std::string>>& relations);

struct PresentationReport {
    std::vector<std::string> redundant_generators;
    std::vector<std::size_t> trivial_relations;
    std::vector<std::size_t> epsilon_relators;
    std::optional<bool> first_letters_differ;
    std::optional<bool> last_letters_differ;
    bool valid() const { return redundant_generators.empty() && trivial_relations.empty() && epsilon_relators.empty(); }
    bool all_pass() const;
};

PresentationReport check_presentation(const Presentation& p);

// Nonempty z avoiding relators with no prefix/suffix overlap against relators; requires one relator, |alphabet| >= 3.
std::optional<Word> find_separating_word(const Presentation& p);
// Independent brute-force check of the four conditions.
bool separating_conditions_hold(const Word& z, const Presentation& p);

}  // namespace wb
