#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "workbench/words.hpp"

namespace wb {

inline constexpr std::size_t default_coxeter_cap = 200000;

// Bit i set iff generator i belongs to the subset.
using Subset = std::uint64_t;

class CoxeterSystem {
public:
    using Elem = std::uint32_t;

    // m[s][t] = m_st; entries must satisfy m_ss = 1 and m_st = m_ts >= 2. Throws Error(precondition) when
    // |W| exceeds cap.
    CoxeterSystem(Alphabet generators, std::vector<std::vector<int>> m, std::size_t cap = default_coxeter_cap);
    // "A3", "B3", "C3", "D4", "E6", "F4", "G2", "H3", "H4", "I2(5)"; generators are named s1, s2, ...
    static CoxeterSystem of_type(const std::string& label, std::size_t cap = default_coxeter_cap);

    const Alphabet& generators() const { return gens_; }
    std::size_t rank() const { return gens_.size(); }
    int m(Letter s, Letter t) const { return m_[s][t]; }
    const std::vector<std::vector<int>>& matrix() const { return m_; }
    const std::string& certificate() const { return certificate_; }

    // Elements are numbered in ShortLex order of their canonical words; 0 is the identity.
    std::size_t order() const { return len_.size(); }
    Elem identity() const { return 0; }
    Elem generator(Letter s) const { return mul(0, s); }
    Elem mul(Elem g, Letter s) const { return mul_[g * rank() + s]; }
    Elem lmul(Letter s, Elem g) const { return lmul_[g * rank() + s]; }
    std::size_t length(Elem g) const { return len_[g]; }
    const Word& word(Elem g) const { return words_[g]; }
    Subset right_set(Elem g) const { return rset_[g]; }
    Subset left_set(Elem g) const { return lset_[g]; }

    Subset all() const { return rank() == 64 ? ~Subset{0} : (Subset{1} << rank()) - 1; }
    Elem longest() const { return longest(all()); }
    Elem longest(Subset t) const;
    // Image p(x) in W.
    Elem element(const Word& x) const;
    bool is_reduced(const Word& x) const;
    // Support of the canonical word.
    Subset support(Elem g) const;

    Presentation artin_presentation() const;
    std::string render_subset(Subset s) const;
    Subset parse_subset(const std::string& text) const;

private:
    Alphabet gens_;
    std::vector<std::vector<int>> m_;
    std::string certificate_;
    std::vector<Elem> mul_, lmul_;
    std::vector<std::size_t> len_;
    std::vector<Word> words_;
    std::vector<Subset> rset_, lset_;
};

std::vector<std::vector<int>> coxeter_matrix_of_type(const std::string& label);
// Rows of integers; 0 (meaning ∞) is rejected.
std::vector<std::vector<int>> parse_coxeter_matrix(const std::string& text);

using NormalForm = std::vector<CoxeterSystem::Elem>;

// Left-greedy normal form of a positive word; empty for the empty word.
NormalForm normal_form(const Word& x, const CoxeterSystem& w);
bool is_normal_form(const NormalForm& f, const CoxeterSystem& w);
Word nf_word(const NormalForm& f, const CoxeterSystem& w);
std::string render_nf(const NormalForm& f, const CoxeterSystem& w);
// Canonical word of the element of P represented by x.
Word canonical(const Word& x, const CoxeterSystem& w);
bool equal_in_p(const Word& x, const Word& y, const CoxeterSystem& w);

Subset left_set(const Word& g, const CoxeterSystem& w);
Subset right_set(const Word& g, const CoxeterSystem& w);

// q with g = x q, or nullopt when x does not left-divide g.
std::optional<Word> left_quotient(const Word& x, const Word& g, const CoxeterSystem& w);
bool left_divides(const Word& x, const Word& g, const CoxeterSystem& w);
Word delta_power(const CoxeterSystem& w, std::size_t n);

Word meet(const Word& g, const Word& h, const CoxeterSystem& w);
Word join(const Word& g, const Word& h, const CoxeterSystem& w);
bool cylinder_intersects_x0(const Word& g, const Word& h, const CoxeterSystem& w);

// BFS over reachable right sets; the witness is a normal form (g1, ..., gk) of elements of P_red(T) other
// than 1 and Δ_T with L(g1) = source and R(gk) = target.
std::optional<NormalForm> equiv_search(const CoxeterSystem& w, Subset t, Subset source, Subset target);

// Number of sequences (g1, ..., gn) in P0 = P_red \ {1, Δ} with R(gi) ⊇ L(g(i+1)).
mpz_class infinite_nf_count(const CoxeterSystem& w, std::size_t n);
// The first `limit` such sequences in lexicographic order, P0 ordered by ShortLex.
std::vector<NormalForm> enumerate_infinite_nf(const CoxeterSystem& w, std::size_t n, std::size_t limit);

}  // namespace wb
