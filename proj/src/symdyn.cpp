#include "prodspec/symdyn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "prodspec/error.hpp"

namespace prodspec {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    require(!names_[i].empty(), "empty symbol name");
    for (std::size_t j = 0; j < i; ++j) require(names_[i] != names_[j], "duplicate symbol " + names_[i]);
  }
}

Alphabet Alphabet::from_chars(const std::string& letters) {
  std::vector<std::string> names;
  for (char c : letters) names.emplace_back(1, c);
  return Alphabet(std::move(names));
}

const std::string& Alphabet::name(int s) const {
  require(s >= 0 && static_cast<std::size_t>(s) < names_.size(), "symbol out of range");
  return names_[static_cast<std::size_t>(s)];
}

int Alphabet::index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  throw ValidationError("unknown letter '" + name + "'");
}

Word Alphabet::parse(const std::string& text) const {
  Word w;
  w.reserve(text.size());
  for (char c : text) w.push_back(index(std::string(1, c)));
  return w;
}

std::string Alphabet::format(std::span<const int> w) const {
  std::string s;
  for (int c : w) s += name(c);
  return s;
}

Substitution::Substitution(Alphabet alphabet, std::vector<Word> rules)
    : alphabet_(std::move(alphabet)), rules_(std::move(rules)) {
  require(rules_.size() == alphabet_.size(), "substitution needs one rule per letter");
  for (const Word& r : rules_) {
    require(!r.empty(), "substitution rule with empty image");
    for (int c : r)
      require(c >= 0 && static_cast<std::size_t>(c) < alphabet_.size(), "rule uses unknown letter");
  }
}

Substitution Substitution::from_strings(const std::vector<std::pair<std::string, std::string>>& rules) {
  std::vector<std::string> names;
  for (const auto& [lhs, rhs] : rules) names.push_back(lhs);
  Alphabet alpha(names);
  std::vector<Word> images(names.size());
  for (const auto& [lhs, rhs] : rules) images[static_cast<std::size_t>(alpha.index(lhs))] = alpha.parse(rhs);
  return Substitution(std::move(alpha), std::move(images));
}

Substitution Substitution::fibonacci() { return from_strings({{"a", "ab"}, {"b", "a"}}); }
Substitution Substitution::period_doubling() { return from_strings({{"a", "ab"}, {"b", "aa"}}); }
Substitution Substitution::thue_morse() { return from_strings({{"a", "ab"}, {"b", "ba"}}); }

const Word& Substitution::rule(int letter) const {
  require(letter >= 0 && static_cast<std::size_t>(letter) < rules_.size(), "unknown letter");
  return rules_[static_cast<std::size_t>(letter)];
}

std::vector<std::vector<std::int64_t>> Substitution::matrix() const {
  const std::size_t n = alphabet_.size();
  std::vector<std::vector<std::int64_t>> m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t b = 0; b < n; ++b)
    for (int a : rules_[b]) ++m[static_cast<std::size_t>(a)][b];
  return m;
}

bool Substitution::is_primitive() const {
  // Only the zero pattern matters, so iterate boolean powers.
  const std::size_t n = alphabet_.size();
  const auto m = matrix();
  std::vector<std::vector<bool>> base(n, std::vector<bool>(n)), pw;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) base[i][j] = m[i][j] > 0;
  pw = base;
  const std::size_t max_power = 2 * n * n;
  for (std::size_t k = 1; k <= max_power; ++k) {
    bool positive = true;
    for (std::size_t i = 0; i < n && positive; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!pw[i][j]) {
          positive = false;
          break;
        }
    if (positive) return true;
    std::vector<std::vector<bool>> next(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (pw[i][l])
          for (std::size_t j = 0; j < n; ++j)
            if (base[l][j]) next[i][j] = true;
    pw = std::move(next);
  }
  return false;
}

Word Substitution::apply(std::span<const int> w, int iterations, std::size_t cap) const {
  require(iterations >= 0, "iterations must be nonnegative");
  Word cur(w.begin(), w.end());
  for (int c : cur)
    require(c >= 0 && static_cast<std::size_t>(c) < rules_.size(), "word has a letter outside the substitution's domain");
  for (int it = 0; it < iterations; ++it) {
    std::size_t len = 0;
    for (int c : cur) len += rules_[static_cast<std::size_t>(c)].size();
    if (len > cap) throw ValidationError("word too long");
    Word next;
    next.reserve(len);
    for (int c : cur) {
      const Word& r = rules_[static_cast<std::size_t>(c)];
      next.insert(next.end(), r.begin(), r.end());
    }
    cur = std::move(next);
  }
  if (cur.size() > cap) throw ValidationError("word too long");
  return cur;
}

std::vector<std::int64_t> abelianization(std::span<const int> w, std::size_t alphabet_size) {
  std::vector<std::int64_t> v(alphabet_size, 0);
  for (int c : w) {
    require(c >= 0 && static_cast<std::size_t>(c) < alphabet_size, "letter outside alphabet");
    ++v[static_cast<std::size_t>(c)];
  }
  return v;
}

CodingSequence::CodingSequence(std::vector<CodingEntry> entries, bool alternating)
    : entries_(std::move(entries)), alternating_(alternating) {
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    require(entries_[k].n >= 2, "coding entries need n_k >= 2");
    require(entries_[k].letter >= 0, "coding letter must be a symbol index");
    if (alternating_ && k + 1 < entries_.size())
      require(entries_[k].letter != entries_[k + 1].letter, "alternating coding repeats a letter");
  }
}

CodingSequence CodingSequence::alternating_binary(std::span<const int> ns, int depth, int first, int second) {
  require(!ns.empty(), "need at least one n_k");
  require(depth >= 1, "coding depth must be >= 1");
  std::vector<CodingEntry> e;
  for (int k = 0; k < depth; ++k)
    e.push_back({k % 2 == 0 ? first : second, ns[static_cast<std::size_t>(k) % ns.size()]});
  return CodingSequence(std::move(e), true);
}

const CodingEntry& CodingSequence::at(int k) const {
  require(k >= 1 && static_cast<std::size_t>(k) <= entries_.size(),
          "coding level " + std::to_string(k) + " not available (depth " + std::to_string(entries_.size()) + ")");
  return entries_[static_cast<std::size_t>(k - 1)];
}

std::int64_t CodingSequence::partial_product(int k) const {
  std::int64_t t = 1;
  for (int j = 1; j <= k; ++j) {
    const std::int64_t n = at(j).n;
    if (t > std::numeric_limits<std::int64_t>::max() / n) return std::numeric_limits<std::int64_t>::max();
    t *= n;
  }
  return t;
}

std::int64_t toeplitz_length(const CodingSequence& s, int k) {
  require(k >= 1, "toeplitz level must be >= 1");
  return s.partial_product(k - 1);
}

Word toeplitz_w(const CodingSequence& s, int k) {
  require(k >= 1, "toeplitz level must be >= 1");
  s.at(k);
  if (static_cast<std::uint64_t>(toeplitz_length(s, k)) > kMaxWordLength) throw ValidationError("word too long");
  Word w{s.at(1).letter};
  for (int j = 1; j < k; ++j) {
    Word next;
    next.reserve(w.size() * static_cast<std::size_t>(s.at(j).n));
    for (int r = 0; r < s.at(j).n; ++r) next.insert(next.end(), w.begin(), w.end());
    next.back() = s.at(j + 1).letter;
    w = std::move(next);
  }
  return w;
}

std::pair<Word, Word> toeplitz_words(const CodingSequence& s, int k) {
  require(s.alternating(), "v-recursion requires an alternating coding");
  require(k >= 1, "toeplitz level must be >= 1");
  s.at(k + 1);
  if (static_cast<std::uint64_t>(toeplitz_length(s, k)) > kMaxWordLength) throw ValidationError("word too long");
  Word w{s.at(1).letter};
  Word v{s.at(2).letter};
  for (int j = 1; j < k; ++j) {
    const int n = s.at(j).n;
    Word nw, nv;
    nw.reserve(w.size() * static_cast<std::size_t>(n));
    nv.reserve(w.size() * static_cast<std::size_t>(n));
    for (int r = 0; r < n - 1; ++r) nw.insert(nw.end(), w.begin(), w.end());
    nw.insert(nw.end(), v.begin(), v.end());
    for (int r = 0; r < n; ++r) nv.insert(nv.end(), w.begin(), w.end());
    w = std::move(nw);
    v = std::move(nv);
  }
  return {w, v};
}

ContinuedFraction ContinuedFraction::golden(int depth) {
  require(depth >= 1, "continued fraction depth must be >= 1");
  return {std::vector<int>(static_cast<std::size_t>(depth), 1)};
}

ContinuedFraction ContinuedFraction::periodic(std::span<const int> period, int depth) {
  require(!period.empty() && depth >= 1, "bad periodic continued fraction");
  ContinuedFraction cf;
  for (int i = 0; i < depth; ++i) cf.a.push_back(period[static_cast<std::size_t>(i) % period.size()]);
  return cf;
}

double ContinuedFraction::value() const {
  require(!a.empty(), "empty continued fraction");
  double x = 0.0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) x = 1.0 / (*it + x);
  return x;
}

std::vector<Convergent> convergents(const ContinuedFraction& cf) {
  require(!cf.a.empty(), "empty continued fraction");
  std::vector<Convergent> out;
  std::int64_t pm2 = 1, qm2 = 0, pm1 = 0, qm1 = 1;  // (p_{-1}, q_{-1}), (p_0, q_0)
  for (int an : cf.a) {
    require(an >= 1, "continued fraction entries must be >= 1");
    std::int64_t p = 0, q = 0;
    if (__builtin_mul_overflow(static_cast<std::int64_t>(an), pm1, &p) || __builtin_add_overflow(p, pm2, &p) ||
        __builtin_mul_overflow(static_cast<std::int64_t>(an), qm1, &q) || __builtin_add_overflow(q, qm2, &q))
      throw ValidationError("continued fraction too deep for 64-bit convergents");
    out.push_back({p, q});
    pm2 = pm1;
    qm2 = qm1;
    pm1 = p;
    qm1 = q;
  }
  return out;
}

SturmianWord sturmian_word(const SturmianParams& params, std::int64_t j, std::int64_t k) {
  require(params.theta >= 0.0 && params.theta < 1.0, "theta must lie in [0, 1)");
  require(j <= k, "empty range");
  require(k - j + 1 <= (std::int64_t{1} << 20), "range too long");
  const auto conv = convergents(params.alpha);
  const Convergent c = conv.back();
  require(c.q >= 2, "continued fraction too shallow");
  SturmianWord out;
  // |alpha - p/q| < 1/q^2
  const double err = 1.0 / (static_cast<double>(c.q) * static_cast<double>(c.q));
  out.warning = static_cast<double>(k - j + 1) * err > 1e-6;
  const double thq = params.theta * static_cast<double>(c.q);
  const double qd = static_cast<double>(c.q);
  out.word.reserve(static_cast<std::size_t>(k - j + 1));
  for (std::int64_t n = j; n <= k; ++n) {
    __int128 r = static_cast<__int128>(n) * c.p % c.q;
    if (r < 0) r += c.q;
    // q * (n alpha + theta mod 1) compared with q - p
    double y = static_cast<double>(r) + thq;
    if (y >= qd) y -= qd;
    out.word.push_back(y >= static_cast<double>(c.q - c.p) ? 1 : 0);
  }
  return out;
}

Word sturmian_standard(const ContinuedFraction& cf, int n) {
  require(n >= -1, "standard word level must be >= -1");
  require(n <= static_cast<int>(cf.a.size()), "standard word level exceeds continued fraction depth");
  Word wm1{1}, w0{0};
  if (n == -1) return wm1;
  if (n == 0) return w0;
  Word prev = w0, cur;
  for (int r = 0; r < cf.a[0] - 1; ++r) cur.insert(cur.end(), w0.begin(), w0.end());
  cur.insert(cur.end(), wm1.begin(), wm1.end());
  for (int m = 2; m <= n; ++m) {
    Word next;
    const std::size_t len = cur.size() * static_cast<std::size_t>(cf.a[static_cast<std::size_t>(m - 1)]) + prev.size();
    if (len > kMaxWordLength) throw ValidationError("word too long");
    next.reserve(len);
    for (int r = 0; r < cf.a[static_cast<std::size_t>(m - 1)]; ++r) next.insert(next.end(), cur.begin(), cur.end());
    next.insert(next.end(), prev.begin(), prev.end());
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Word random_word(std::span<const double> probs, std::size_t length, CounterRng& rng) {
  require(!probs.empty(), "need at least one letter probability");
  double total = 0.0;
  for (double p : probs) {
    require(p > 0.0, "letter probabilities must be positive");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-12, "letter probabilities must sum to 1");
  std::vector<double> cum;
  double acc = 0.0;
  for (double p : probs) cum.push_back(acc += p);
  Word w(length);
  for (std::size_t i = 0; i < length; ++i) {
    const double u = rng.uniform();
    std::size_t c = 0;
    while (c + 1 < cum.size() && u >= cum[c]) ++c;
    w[i] = static_cast<int>(c);
  }
  return w;
}

std::vector<Word> kblock_recode(std::span<const int> x, int k) {
  require(k >= 1, "block length must be >= 1");
  require(x.size() >= static_cast<std::size_t>(k), "word shorter than block length");
  std::vector<Word> out;
  out.reserve(x.size() - static_cast<std::size_t>(k) + 1);
  for (std::size_t m = 0; m + static_cast<std::size_t>(k) <= x.size(); ++m)
    out.emplace_back(x.begin() + static_cast<std::ptrdiff_t>(m), x.begin() + static_cast<std::ptrdiff_t>(m) + k);
  return out;
}

std::vector<DecoratedLetter> decorate(std::span<const int> x, int p, int offset) {
  require(p >= 1, "period must be >= 1");
  std::vector<DecoratedLetter> out;
  out.reserve(x.size());
  const int base = ((offset % p) + p) % p;
  for (std::size_t m = 0; m < x.size(); ++m)
    out.push_back({x[m], static_cast<int>((base + static_cast<std::int64_t>(m)) % p)});
  return out;
}

PositionedWord reflect(const PositionedWord& x, std::int64_t center_times_two) {
  const std::int64_t n = static_cast<std::int64_t>(x.w.size());
  PositionedWord y;
  y.start = center_times_two - (x.start + n - 1);
  y.w.assign(x.w.rbegin(), x.w.rend());
  return y;
}

PowerIndex power_index(std::span<const int> u, std::span<const int> source) {
  require(!u.empty(), "empty word has no index");
  PowerIndex best;
  best.period = static_cast<std::int64_t>(u.size());
  const std::size_t L = u.size();
  if (source.size() < L) return best;
  const std::boyer_moore_horspool_searcher searcher(u.begin(), u.end());
  auto it = source.begin();
  while (true) {
    auto hit = std::search(it, source.end(), searcher);
    if (hit == source.end()) break;
    const std::size_t j = static_cast<std::size_t>(hit - source.begin());
    std::size_t e = j + L;
    while (e < source.size() && source[e] == source[e - L]) ++e;
    best.found = true;
    best.run = std::max(best.run, static_cast<std::int64_t>(e - j));
    // Later occurrences inside this run end at the same place, so they are shorter.
    const std::size_t next = std::max(j + 1, e - L + 1);
    it = source.begin() + static_cast<std::ptrdiff_t>(next);
  }
  return best;
}

}  // namespace prodspec
