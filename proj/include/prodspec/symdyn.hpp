#ifndef PRODSPEC_SYMDYN_HPP
#define PRODSPEC_SYMDYN_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "prodspec/rng.hpp"

namespace prodspec {

// Symbols are small integers; names are kept only for I/O.
using Word = std::vector<int>;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);
  static Alphabet from_chars(const std::string& letters);  // "ab" -> {a, b}

  std::size_t size() const { return names_.size(); }
  const std::string& name(int s) const;
  int index(const std::string& name) const;  // throws on unknown
  const std::vector<std::string>& names() const { return names_; }

  // Words as strings of single-character symbol names.
  Word parse(const std::string& text) const;
  std::string format(std::span<const int> w) const;

 private:
  std::vector<std::string> names_;
};

inline constexpr std::size_t kMaxWordLength = std::size_t{1} << 22;

class Substitution {
 public:
  Substitution(Alphabet alphabet, std::vector<Word> rules);
  // rules given as (letter, image) strings over single-character names;
  // the alphabet is taken in rule order.
  static Substitution from_strings(const std::vector<std::pair<std::string, std::string>>& rules);

  static Substitution fibonacci();        // a -> ab, b -> a
  static Substitution period_doubling();  // a -> ab, b -> aa
  static Substitution thue_morse();       // a -> ab, b -> ba

  const Alphabet& alphabet() const { return alphabet_; }
  const Word& rule(int letter) const;
  // M[a][b] = number of a's in the image of b.
  std::vector<std::vector<std::int64_t>> matrix() const;
  // Some power M^k, k <= 2|A|^2, is entrywise positive.
  bool is_primitive() const;

  Word apply(std::span<const int> w, int iterations, std::size_t cap = kMaxWordLength) const;

 private:
  Alphabet alphabet_;
  std::vector<Word> rules_;
};

// Letter counts of w.
std::vector<std::int64_t> abelianization(std::span<const int> w, std::size_t alphabet_size);

struct CodingEntry {
  int letter;
  int n;
};

// s = (b_k, n_k)_{k >= 1}, stored 0-based.
class CodingSequence {
 public:
  CodingSequence(std::vector<CodingEntry> entries, bool alternating);
  // Letters alternate between `first` and `second`; n_k cycles through ns.
  static CodingSequence alternating_binary(std::span<const int> ns, int depth, int first = 0,
                                           int second = 1);

  std::size_t depth() const { return entries_.size(); }
  bool alternating() const { return alternating_; }
  const CodingEntry& at(int k) const;  // 1-based, as b_k, n_k
  // t_k = n_1 ... n_k; saturates at INT64_MAX.
  std::int64_t partial_product(int k) const;
  const std::vector<CodingEntry>& entries() const { return entries_; }

 private:
  std::vector<CodingEntry> entries_;
  bool alternating_;
};

// w_k from w_1 = b_1 and w_{k+1} = w_k^{n_k} with the last letter b_k
// replaced by b_{k+1}.
Word toeplitz_w(const CodingSequence& s, int k);

// (w_k, v_k) from w_{k+1} = w_k^{n_k - 1} v_k and v_{k+1} = w_k^{n_k}.
// Requires an alternating coding; v_k is w_k with its last letter replaced
// by b_{k+1}.
std::pair<Word, Word> toeplitz_words(const CodingSequence& s, int k);

// |w_k| = n_1 ... n_{k-1}.
std::int64_t toeplitz_length(const CodingSequence& s, int k);

// Continued fraction prefix [a_1, a_2, ...] of an irrational in (0, 1).
struct ContinuedFraction {
  std::vector<int> a;

  static ContinuedFraction golden(int depth = 40);
  static ContinuedFraction periodic(std::span<const int> period, int depth = 40);
  double value() const;
};

struct Convergent {
  std::int64_t p;
  std::int64_t q;
  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
};

// p_n/q_n for n = 1..N with p_{-1} = 1, q_{-1} = 0, p_0 = 0, q_0 = 1.
std::vector<Convergent> convergents(const ContinuedFraction& cf);

struct SturmianParams {
  ContinuedFraction alpha;
  double theta = 0.0;
};

struct SturmianWord {
  Word word;          // s_j ... s_k
  bool warning = false;  // the finite convergent may differ from alpha on this range
};

// s_n = 1 iff n*alpha + theta mod 1 lies in [1 - alpha, 1), evaluated with
// exact modular arithmetic on the deepest convergent.
SturmianWord sturmian_word(const SturmianParams& params, std::int64_t j, std::int64_t k);

// w_{-1} = 1, w_0 = 0, w_1 = w_0^{a_1 - 1} w_{-1}, w_n = w_{n-1}^{a_n} w_{n-2}.
Word sturmian_standard(const ContinuedFraction& cf, int n);

// i.i.d. letters with the given probabilities.
Word random_word(std::span<const double> probs, std::size_t length, CounterRng& rng);

std::vector<Word> kblock_recode(std::span<const int> x, int k);

struct DecoratedLetter {
  int letter;
  int residue;
  friend bool operator==(const DecoratedLetter&, const DecoratedLetter&) = default;
};

// Position m (0-based) gets residue (offset + m) mod p.
std::vector<DecoratedLetter> decorate(std::span<const int> x, int p, int offset);

// A finite word placed at integer positions start, start + 1, ...
struct PositionedWord {
  std::int64_t start = 0;
  Word w;
  friend bool operator==(const PositionedWord&, const PositionedWord&) = default;
};

// R(x)_j = x_{c - j} with c = 2k passed as an integer.
PositionedWord reflect(const PositionedWord& x, std::int64_t center_times_two);

struct PowerIndex {
  std::int64_t run = 0;   // longest L with a prefix-periodic run u^{L/|u|}
  std::int64_t period = 0;  // |u|
  bool found = false;
  double value() const { return period == 0 ? 0.0 : static_cast<double>(run) / period; }
};

// Largest r in (1/|u|)Z with u^r a subword of source. A lower bound for the
// index of u in the language that source samples.
PowerIndex power_index(std::span<const int> u, std::span<const int> source);

}  // namespace prodspec

#endif  // PRODSPEC_SYMDYN_HPP
