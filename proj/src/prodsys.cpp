#include "prodspec/prodsys.hpp"

#include <numeric>
#include <string>
#include <string_view>
#include <unordered_map>

#include "prodspec/error.hpp"

namespace prodspec {

namespace {

constexpr std::uint64_t kSat = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) return kSat;
  return r;
}

bool is_prime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

}  // namespace

void SFunction::set_multiplicity(std::uint64_t prime, int ell) {
  require(is_prime(prime), "multiplicity key " + std::to_string(prime) + " is not prime");
  require(ell >= 0, "multiplicity must be nonnegative");
  if (ell == 0)
    mult_.erase(prime);
  else
    mult_[prime] = ell;
}

int SFunction::multiplicity(std::uint64_t prime) const {
  auto it = mult_.find(prime);
  return it == mult_.end() ? 0 : it->second;
}

void SFunction::set_one_shot(std::uint64_t h) {
  require(h >= 1, "h must be >= 1");
  for (std::uint64_t q : prime_factors(h))
    require(multiplicity(q) == 0, "h must be coprime to the unbounded primes");
  h_ = h;
}

std::uint64_t SFunction::operator()(std::uint64_t m) const {
  require(m >= 1, "s(m) needs m >= 1");
  std::uint64_t s = 1;
  for (const auto& [q, ell] : mult_) {
    std::uint64_t r = m;
    int j = 0;
    while (r % q == 0 && j < ell) {
      r /= q;
      ++j;
      s = sat_mul(s, q);
    }
  }
  if (h_ > 1 && m % h_ == 0) s = sat_mul(s, h_);
  return s;
}

std::uint64_t s_of(std::uint64_t m, const SFunction& sfun) { return sfun(m); }

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d != 0) continue;
    out.push_back(d);
    while (m % d == 0) m /= d;
  }
  if (m > 1) out.push_back(m);
  return out;
}

SFunction sfun_constant_length(std::uint64_t ell, std::uint64_t h) {
  require(ell >= 2, "substitution length must be >= 2");
  require(h >= 1, "h must be >= 1");
  if (std::gcd(ell, h) != 1) throw ValidationError("h must be coprime to ell");
  SFunction s;
  for (std::uint64_t q : prime_factors(ell)) s.set_multiplicity(q, SFunction::kInfinite);
  s.set_one_shot(h);
  return s;
}

SFunction sfun_odometer(const CodingSequence& s) {
  std::map<std::uint64_t, int> kappa;
  for (const CodingEntry& e : s.entries()) {
    std::uint64_t n = static_cast<std::uint64_t>(e.n);
    for (std::uint64_t q : prime_factors(n)) {
      while (n % q == 0) {
        n /= q;
        ++kappa[q];
      }
    }
  }
  SFunction out;
  for (const auto& [q, k] : kappa) out.set_multiplicity(q, k);
  return out;
}

std::uint64_t odometer_s_prime_power(std::uint64_t q, int l, int kappa) {
  require(is_prime(q), "odometer rule needs a prime");
  require(l >= 0 && kappa >= 0, "exponents must be nonnegative");
  const int e = std::min(l, kappa);
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r = sat_mul(r, q);
  return r;
}

Commensurability commensurate(std::uint64_t p, const CodingSequence& s) {
  require(p >= 1, "period must be >= 1");
  Commensurability c;
  c.depth = static_cast<int>(s.depth());
  std::uint64_t t = 1 % p;  // t_k mod p
  for (int k = 1; k <= c.depth; ++k) {
    t = (t * (static_cast<std::uint64_t>(s.at(k).n) % p)) % p;
    if (t == 0) {
      c.commensurate = true;
      c.k0 = k;
      return c;
    }
  }
  return c;
}

int trace_seed_level(std::uint64_t p, const CodingSequence& s) {
  require(p >= 1, "period must be >= 1");
  if (p == 1) return 1;
  const Commensurability c = commensurate(p, s);
  return c.commensurate ? c.k0 + 1 : 0;
}

GordonStats gordon_scan(std::span<const int> x, int n, Exec exec) {
  require(n >= 1, "block length must be >= 1");
  const std::size_t N = x.size(), un = static_cast<std::size_t>(n);
  if (N < 3 * un) throw ValidationError("window too short for three blocks of length " + std::to_string(n));
  // x[j, j+3n) is a cube of an n-block iff x[i] == x[i+n] for all i in [j, j+2n).
  std::vector<std::int32_t> bad_prefix(N - un + 1, 0);
  for (std::size_t i = 0; i + un < N; ++i) bad_prefix[i + 1] = bad_prefix[i] + (x[i] != x[i + un] ? 1 : 0);
  const std::size_t positions = N - 3 * un + 1;
  constexpr std::size_t kChunk = 1 << 16;
  const std::size_t chunks = (positions + kChunk - 1) / kChunk;
  const auto counts = map_index<std::int64_t>(exec, chunks, [&](std::size_t c) {
    std::int64_t h = 0;
    const std::size_t end = std::min(positions, (c + 1) * kChunk);
    for (std::size_t j = c * kChunk; j < end; ++j)
      if (bad_prefix[j + 2 * un] == bad_prefix[j]) ++h;
    return h;
  });
  GordonStats g;
  g.n = n;
  g.window = static_cast<std::int64_t>(positions);
  g.hits = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  g.estimate = static_cast<double>(g.hits) / static_cast<double>(positions);
  return g;
}

int reflection_spectra_bound(int sp, bool delta_flag) {
  require(sp >= 1, "s(p) must be >= 1");
  if (sp % 2 == 1) return (sp + 1) / 2;
  return sp / 2 + (delta_flag ? 1 : 0);
}

int empirical_components(std::span<const int> prefix, int p, int block_length) {
  require(p >= 1, "period must be >= 1");
  require(block_length >= 1, "block length must be >= 1");
  require(prefix.size() >= static_cast<std::size_t>(block_length) + static_cast<std::size_t>(p),
          "prefix too short");
  std::string text(prefix.size(), '\0');
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    require(prefix[i] >= 0 && prefix[i] < 256, "letters must fit a byte");
    text[i] = static_cast<char>(prefix[i]);
  }
  // If the same word occurs at residues r1 and r2, the components seeded at
  // c and c + (r2 - r1) intersect, hence coincide. The classes are therefore
  // the cosets of the subgroup generated by all such differences.
  std::uint64_t g = static_cast<std::uint64_t>(p);
  std::unordered_map<std::string_view, int> first_residue;
  const std::string_view all(text);
  const std::size_t L = static_cast<std::size_t>(block_length);
  for (std::size_t m = 0; m + L <= all.size() && g > 1; ++m) {
    const int r = static_cast<int>(m % static_cast<std::size_t>(p));
    auto [it, inserted] = first_residue.emplace(all.substr(m, L), r);
    if (!inserted) g = std::gcd(g, static_cast<std::uint64_t>(((r - it->second) % p + p) % p));
  }
  return static_cast<int>(g);
}

}  // namespace prodspec
