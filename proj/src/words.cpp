#include "workbench/words.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "workbench/error.hpp"

namespace wb {

namespace {

const std::string kEpsilon = "\xce\xb5";

bool bad_symbol_char(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '^' || c == '-' || c == '=' || c == ':' || c == '#' ||
           c == '{' || c == '}' || c == ',' || c == '(' || c == ')';
}

template <class Emit>
void tokenize(std::string_view text, const Alphabet& alphabet, bool allow_negative, Emit emit) {
    std::size_t i = 0;
    const bool bare_digits = !alphabet.has_digit_symbols();
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t best = 0;
        Letter letter = 0;
        for (Letter l = 0; l < alphabet.size(); ++l) {
            const std::string& s = alphabet.symbol(l);
            if (s.size() > best && text.substr(i, s.size()) == s) {
                best = s.size();
                letter = l;
            }
        }
        if (best == 0) {
            if (text.substr(i, kEpsilon.size()) == kEpsilon) {
                i += kEpsilon.size();
                continue;
            }
            std::size_t j = i + 1;
            while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '^') ++j;
            throw Error(ErrorCode::parse, "unknown symbol '" + std::string(text.substr(i, j - i)) + "'");
        }
        i += best;
        long exponent = 1;
        bool has_caret = i < text.size() && text[i] == '^';
        bool has_digits = bare_digits && i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]));
        if (has_caret || has_digits) {
            if (has_caret) ++i;
            bool neg = false;
            if (i < text.size() && text[i] == '-') {
                neg = true;
                ++i;
            }
            std::size_t start = i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (start == i || i - start > 9) throw Error(ErrorCode::parse, "malformed exponent");
            exponent = std::stol(std::string(text.substr(start, i - start)));
            if (exponent == 0) throw Error(ErrorCode::parse, "malformed exponent: exponent must be at least 1");
            if (neg) {
                if (!allow_negative) throw Error(ErrorCode::parse, "malformed exponent: negative exponent in a positive word");
                exponent = -exponent;
            }
        }
        emit(letter, exponent);
    }
}

template <class Runs>
std::string render_runs(const Runs& runs, const Alphabet& alphabet, bool spaced) {
    std::string out;
    bool first = true;
    for (const auto& [letter, exp] : runs) {
        if (!first && spaced) out += ' ';
        first = false;
        out += alphabet.symbol(letter);
        if (exp != 1) out += "^" + std::to_string(exp);
    }
    return out;
}

}  // namespace

std::size_t WordHash::operator()(const Word& w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Letter l : w) {
        h ^= l + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
        if (s.empty()) throw Error(ErrorCode::parse, "empty generator symbol");
        if (std::isdigit(static_cast<unsigned char>(s[0]))) throw Error(ErrorCode::parse, "generator symbol '" + s + "' starts with a digit");
        for (char c : s)
            if (bad_symbol_char(c)) throw Error(ErrorCode::parse, "generator symbol '" + s + "' contains a reserved character");
        if (s == kEpsilon) throw Error(ErrorCode::parse, "epsilon is reserved for the empty word");
        if (!seen.insert(s).second) throw Error(ErrorCode::parse, "duplicate generator symbol '" + s + "'");
        if (s.size() != 1) single_char_ = false;
        for (char c : s)
            if (std::isdigit(static_cast<unsigned char>(c))) digits_ = true;
    }
}

std::optional<Letter> Alphabet::find(std::string_view s) const {
    for (Letter l = 0; l < symbols_.size(); ++l)
        if (symbols_[l] == s) return l;
    return std::nullopt;
}

Word parse_word(std::string_view text, const Alphabet& alphabet) {
    Word w;
    tokenize(text, alphabet, false, [&](Letter l, long e) { w.insert(w.end(), static_cast<std::size_t>(e), l); });
    return w;
}

SignedWord parse_signed_word(std::string_view text, const Alphabet& alphabet) {
    SignedWord w;
    tokenize(text, alphabet, true, [&](Letter l, long e) {
        SignedLetter s{l, e > 0 ? 1 : -1};
        w.insert(w.end(), static_cast<std::size_t>(e > 0 ? e : -e), s);
    });
    return w;
}

std::string render_word(const Word& w, const Alphabet& alphabet) {
    std::vector<std::pair<Letter, long>> runs;
    for (Letter l : w) {
        if (!runs.empty() && runs.back().first == l)
            ++runs.back().second;
        else
            runs.push_back({l, 1});
    }
    return render_runs(runs, alphabet, !alphabet.single_char());
}

std::string render_plain(const Word& w, const Alphabet& alphabet) {
    if (w.empty()) return kEpsilon;
    std::string out;
    for (Letter l : w) {
        if (!out.empty() && !alphabet.single_char()) out += ' ';
        out += alphabet.symbol(l);
    }
    return out;
}

std::string render_signed(const SignedWord& w, const Alphabet& alphabet) {
    std::vector<std::pair<Letter, long>> runs;
    for (const auto& s : w) {
        if (!runs.empty() && runs.back().first == s.letter && (runs.back().second > 0) == (s.sign > 0))
            runs.back().second += s.sign;
        else
            runs.push_back({s.letter, s.sign});
    }
    return render_runs(runs, alphabet, true);
}

SignedWord positive(const Word& w) {
    SignedWord s;
    for (Letter l : w) s.push_back({l, 1});
    return s;
}

SignedWord inverse(const Word& w) {
    SignedWord s;
    for (auto it = w.rbegin(); it != w.rend(); ++it) s.push_back({*it, -1});
    return s;
}

SignedWord concat(const SignedWord& a, const SignedWord& b) {
    SignedWord r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Word repeat(const Word& w, std::size_t k) {
    Word r;
    for (std::size_t i = 0; i < k; ++i) r.insert(r.end(), w.begin(), w.end());
    return r;
}

WordStats word_stats(const Word& w, std::size_t alphabet_size) {
    WordStats s;
    s.total = w.size();
    s.counts.assign(alphabet_size, 0);
    for (Letter l : w) {
        if (l >= alphabet_size) throw Error(ErrorCode::invalid, "letter outside the alphabet");
        ++s.counts[l];
    }
    return s;
}

std::size_t letter_count(const Word& w, Letter l) { return static_cast<std::size_t>(std::count(w.begin(), w.end(), l)); }

bool is_prefix(const Word& p, const Word& w) {
    return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

bool is_suffix(const Word& s, const Word& w) {
    return s.size() <= w.size() && std::equal(s.begin(), s.end(), w.end() - static_cast<long>(s.size()));
}

std::size_t find_factor(const Word& hay, const Word& needle, std::size_t from) {
    if (needle.size() > hay.size()) return std::string::npos;
    for (std::size_t i = from; i + needle.size() <= hay.size(); ++i)
        if (std::equal(needle.begin(), needle.end(), hay.begin() + static_cast<long>(i))) return i;
    return std::string::npos;
}

bool contains_factor(const Word& hay, const Word& needle) { return find_factor(hay, needle) != std::string::npos; }

Word subword(const Word& w, std::size_t pos, std::size_t len) {
    return Word(w.begin() + static_cast<long>(pos), w.begin() + static_cast<long>(pos + len));
}

std::vector<Word> overlap_set(const Word& v) {
    std::vector<Word> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        Word x = subword(v, 0, k);
        if (is_suffix(x, v)) out.push_back(x);
    }
    return out;
}

Presentation::Presentation(Alphabet alphabet, std::vector<Relation> relations)
    : alphabet_(std::move(alphabet)), relations_(std::move(relations)) {
    for (const auto& r : relations_)
        for (const Word* w : {&r.lhs, &r.rhs})
            for (Letter l : *w)
                if (l >= alphabet_.size()) throw Error(ErrorCode::invalid, "relation uses a letter outside the alphabet");
}

const Relation& Presentation::relation() const {
    if (!one_relator()) throw Error(ErrorCode::precondition, "presentation is not one-relator");
    return relations_[0];
}

std::vector<Word> Presentation::relators() const {
    std::vector<Word> r;
    for (const auto& rel : relations_) {
        r.push_back(rel.lhs);
        r.push_back(rel.rhs);
    }
    return r;
}

void Presentation::validate() const {
    for (std::size_t i = 0; i < relations_.size(); ++i) {
        const auto& r = relations_[i];
        if (r.lhs.empty() || r.rhs.empty())
            throw Error(ErrorCode::precondition, "relation " + std::to_string(i + 1) + " has an empty relator");
        if (r.lhs == r.rhs) throw Error(ErrorCode::precondition, "relation " + std::to_string(i + 1) + " is trivial (u = u)");
    }
}

std::string Presentation::to_text() const {
    std::ostringstream os;
    os << "generators:";
    for (const auto& s : alphabet_.symbols()) os << ' ' << s;
    os << '\n';
    for (const auto& r : relations_) os << "relation: " << render(r.lhs) << " = " << render(r.rhs) << '\n';
    return os.str();
}

Presentation parse_presentation(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::optional<Alphabet> alphabet;
    std::vector<std::pair<std::string, std::string>> rels;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto colon = line.find(':');
        std::string key = line.substr(0, colon);
        key.erase(std::remove_if(key.begin(), key.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }), key.end());
        if (key.empty() && colon == std::string::npos) continue;
        if (colon == std::string::npos) throw Error(ErrorCode::parse, "line " + std::to_string(lineno) + ": expected 'key: value'");
        std::string value = line.substr(colon + 1);
        if (key == "generators") {
            if (alphabet) throw Error(ErrorCode::parse, "generators declared twice");
            std::istringstream vs(value);
            std::vector<std::string> syms;
            std::string s;
            while (vs >> s) syms.push_back(s);
            if (syms.empty()) throw Error(ErrorCode::parse, "no generators declared");
            alphabet = Alphabet(syms);
        } else if (key == "relation") {
            auto eq = value.find('=');
            if (eq == std::string::npos) throw Error(ErrorCode::parse, "line " + std::to_string(lineno) + ": relation needs '='");
            rels.push_back({value.substr(0, eq), value.substr(eq + 1)});
        } else {
            throw Error(ErrorCode::parse, "line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (!alphabet) throw Error(ErrorCode::parse, "missing generators line");
    std::vector<Relation> relations;
    for (const auto& [l, r] : rels) relations.push_back({parse_word(l, *alphabet), parse_word(r, *alphabet)});
    return Presentation(*alphabet, relations);
}

Presentation make_presentation(const std::vector<std::string>& symbols,
                               const std::vector<std::pair<std::string, std::string>>& relations) {
    Alphabet a(symbols);
    std::vector<Relation> rels;
    for (const auto& [l, r] : relations) rels.push_back({parse_word(l, a), parse_word(r, a)});
    return Presentation(a, rels);
}

bool PresentationReport::all_pass() const {
    return valid() && first_letters_differ.value_or(true) && last_letters_differ.value_or(true);
}

PresentationReport check_presentation(const Presentation& p) {
    PresentationReport rep;
    std::set<Letter> redundant;
    for (std::size_t i = 0; i < p.relations().size(); ++i) {
        const auto& r = p.relations()[i];
        if (r.lhs == r.rhs) rep.trivial_relations.push_back(i);
        if (r.lhs.empty() || r.rhs.empty()) rep.epsilon_relators.push_back(i);
        auto single = [&](const Word& s, const Word& w) {
            if (s.size() == 1 && !contains_factor(w, s)) redundant.insert(s[0]);
        };
        single(r.lhs, r.rhs);
        single(r.rhs, r.lhs);
    }
    for (Letter l : redundant) rep.redundant_generators.push_back(p.alphabet().symbol(l));
    if (p.one_relator()) {
        const auto& r = p.relation();
        if (!r.lhs.empty() && !r.rhs.empty()) {
            rep.first_letters_differ = r.lhs.front() != r.rhs.front();
            rep.last_letters_differ = r.lhs.back() != r.rhs.back();
        }
    }
    return rep;
}

bool separating_conditions_hold(const Word& z, const Presentation& p) {
    if (z.empty()) return false;
    for (const Word& r : p.relators()) {
        if (contains_factor(r, z) || contains_factor(z, r)) return false;
        for (std::size_t k = 1; k <= z.size(); ++k) {
            if (is_suffix(subword(z, 0, k), r)) return false;
            if (is_prefix(subword(z, z.size() - k, k), r)) return false;
        }
    }
    return true;
}

std::optional<Word> find_separating_word(const Presentation& p) {
    if (!p.one_relator()) throw Error(ErrorCode::precondition, "find_separating_word needs a one-relator presentation");
    const std::size_t n = p.alphabet().size();
    if (n < 3) return std::nullopt;
    const auto& rel = p.relation();
    std::size_t maxlen = std::max(rel.lhs.size(), rel.rhs.size());
    std::set<Letter> firsts, lasts;
    for (const Word* w : {&rel.lhs, &rel.rhs})
        if (!w->empty()) {
            firsts.insert(w->front());
            lasts.insert(w->back());
        }
    std::vector<Letter> cs, as;
    for (Letter l = 0; l < n; ++l) {
        if (!firsts.count(l)) cs.push_back(l);
        if (!lasts.count(l)) as.push_back(l);
    }
    const std::size_t i = maxlen + 1, j = maxlen + 1;
    for (Letter a : as)
        for (Letter c : cs) {
            Word z(i, a);
            z.insert(z.end(), j, c);
            if (separating_conditions_hold(z, p)) return z;
        }
    for (Letter a : as)
        for (Letter c : cs)
            for (Letter b = 0; b < n; ++b) {
                if (b == a || b == c) continue;
                Word z(i, a);
                z.push_back(b);
                z.insert(z.end(), j, c);
                if (separating_conditions_hold(z, p)) return z;
            }
    return std::nullopt;
}

}  // namespace wb
