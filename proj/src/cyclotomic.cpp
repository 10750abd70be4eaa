#include "blockheight/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "blockheight/errors.hpp"

namespace blockheight {

namespace {

struct Layer {
  uint64_t p;
  uint64_t pa;     // p^a
  uint64_t pa1;    // p^(a-1)
  uint64_t border; // (p-1) * p^(a-1): canonical local exponents are < border
  uint64_t m;      // e / p^a
  uint64_t v;      // m^-1 mod p^a
};

uint64_t inv_mod(uint64_t a, uint64_t n) {
  if (n == 1) return 0;
  int64_t t = 0, nt = 1;
  int64_t r = static_cast<int64_t>(n), nr = static_cast<int64_t>(a % n);
  while (nr != 0) {
    int64_t qu = r / nr;
    int64_t tmp = t - qu * nt;
    t = nt;
    nt = tmp;
    tmp = r - qu * nr;
    r = nr;
    nr = tmp;
  }
  return static_cast<uint64_t>(t < 0 ? t + static_cast<int64_t>(n) : t);
}

const std::vector<Layer>& layers_for(uint64_t e) {
  static std::mutex mu;
  static std::map<uint64_t, std::vector<Layer>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(e);
  if (it != cache.end()) return it->second;

  std::vector<Layer> layers;
  uint64_t rest = e;
  for (uint64_t p = 2; p * p <= rest; ++p) {
    if (rest % p) continue;
    uint64_t pa = 1;
    while (rest % p == 0) {
      rest /= p;
      pa *= p;
    }
    layers.push_back({p, pa, pa / p, (p - 1) * (pa / p), e / pa, inv_mod(e / pa, pa)});
  }
  if (rest > 1)
    layers.push_back({rest, rest, 1, rest - 1, e / rest, inv_mod(e / rest, rest)});
  return cache.emplace(e, std::move(layers)).first->second;
}

} // namespace

void Cyclotomic::normalize(uint64_t e, std::vector<std::pair<uint64_t, mpz_class>>& work,
                           std::vector<std::pair<uint32_t, mpz_class>>& out) {
  const std::vector<Layer>& layers = layers_for(e);
  for (auto& t : work) t.first %= e;

  // One sweep per prime-power layer; rewrites never disturb other layers
  // because exponent shifts are multiples of e / p^a.
  for (const Layer& L : layers) {
    std::vector<std::pair<uint64_t, mpz_class>> next;
    next.reserve(work.size());
    for (auto& [k, c] : work) {
      uint64_t j = ((k % L.pa) * (L.v % L.pa)) % L.pa;
      if (j < L.border) {
        next.emplace_back(k, std::move(c));
        continue;
      }
      uint64_t t = j - L.border;
      for (uint64_t s = 0; s + 1 < L.p; ++s) {
        uint64_t jp = t + s * L.pa1;
        // shift the global exponent by (jp - j) * m mod e
        uint64_t shift = ((jp + L.pa - j) % L.pa) * (L.m % e) % e;
        next.emplace_back((k + shift) % e, -c);
      }
    }
    work.swap(next);
  }

  std::sort(work.begin(), work.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  out.clear();
  for (auto& [k, c] : work) {
    if (!out.empty() && out.back().first == k)
      out.back().second += c;
    else
      out.emplace_back(static_cast<uint32_t>(k), std::move(c));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& t) { return t.second == 0; }),
            out.end());
}

Cyclotomic Cyclotomic::from_integer(uint64_t modulus, const mpz_class& n) {
  Cyclotomic r(modulus);
  if (n != 0) r.terms_.emplace_back(0, n);
  return r;
}

Cyclotomic Cyclotomic::term(uint64_t modulus, const mpz_class& c, uint64_t k) {
  Cyclotomic r(modulus);
  if (c == 0) return r;
  std::vector<std::pair<uint64_t, mpz_class>> work{{k, c}};
  normalize(modulus, work, r.terms_);
  return r;
}

Cyclotomic Cyclotomic::from_terms(uint64_t modulus,
                                  std::vector<std::pair<uint64_t, mpz_class>> work) {
  Cyclotomic r(modulus);
  normalize(modulus, work, r.terms_);
  return r;
}

bool Cyclotomic::is_integer() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
}

mpz_class Cyclotomic::integer_value() const {
  if (terms_.empty()) return 0;
  if (!is_integer())
    fail("InvariantViolation", "cyclotomic value is not an integer: " + str());
  return terms_[0].second;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  if (modulus_ != o.modulus_)
    fail("InvariantViolation", "cyclotomic modulus mismatch in +");
  Cyclotomic r(modulus_);
  // both inputs are canonical: plain sorted merge, no renormalization needed
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first))
      r.terms_.push_back(terms_[i++]);
    else if (i == terms_.size() || o.terms_[j].first < terms_[i].first)
      r.terms_.push_back(o.terms_[j++]);
    else {
      mpz_class c = terms_[i].second + o.terms_[j].second;
      if (c != 0) r.terms_.emplace_back(terms_[i].first, c);
      ++i;
      ++j;
    }
  }
  return r;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r(modulus_);
  r.terms_.reserve(terms_.size());
  for (const auto& [k, c] : terms_) r.terms_.emplace_back(k, -c);
  return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  if (modulus_ != o.modulus_)
    fail("InvariantViolation", "cyclotomic modulus mismatch in *");
  Cyclotomic r(modulus_);
  if (terms_.empty() || o.terms_.empty()) return r;
  std::vector<std::pair<uint64_t, mpz_class>> work;
  work.reserve(terms_.size() * o.terms_.size());
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_)
      work.emplace_back((uint64_t(ka) + kb) % modulus_, ca * cb);
  normalize(modulus_, work, r.terms_);
  return r;
}

Cyclotomic Cyclotomic::scaled(const mpz_class& c) const {
  Cyclotomic r(modulus_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& [k, co] : terms_) r.terms_.emplace_back(k, co * c);
  return r;
}

Cyclotomic Cyclotomic::conjugate() const {
  Cyclotomic r(modulus_);
  std::vector<std::pair<uint64_t, mpz_class>> work;
  work.reserve(terms_.size());
  for (const auto& [k, c] : terms_)
    work.emplace_back(k == 0 ? 0 : modulus_ - k, c);
  normalize(modulus_, work, r.terms_);
  return r;
}

bool Cyclotomic::divide_exact(const mpz_class& d, Cyclotomic& out) const {
  out = Cyclotomic(modulus_);
  out.terms_.reserve(terms_.size());
  for (const auto& [k, c] : terms_) {
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
    if (rem != 0) return false;
    out.terms_.emplace_back(k, q);
  }
  return true;
}

Cyclotomic Cyclotomic::to_modulus(uint64_t m) const {
  if (m == modulus_) return *this;
  if (m % modulus_ != 0)
    fail("InvariantViolation", "cannot embed Z[zeta_" + std::to_string(modulus_) +
                                   "] into Z[zeta_" + std::to_string(m) + "]");
  uint64_t scale = m / modulus_;
  Cyclotomic r(m);
  std::vector<std::pair<uint64_t, mpz_class>> work;
  work.reserve(terms_.size());
  for (const auto& [k, c] : terms_) work.emplace_back(uint64_t(k) * scale, c);
  normalize(m, work, r.terms_);
  return r;
}

uint64_t Cyclotomic::hash() const {
  uint64_t h = 1469598103934665603ull ^ modulus_;
  for (const auto& [k, c] : terms_) {
    h ^= k;
    h *= 1099511628211ull;
    h ^= mpz_get_ui(c.get_mpz_t()) ^ (uint64_t(mpz_sgn(c.get_mpz_t()) < 0) << 63);
    h *= 1099511628211ull;
  }
  return h;
}

std::string Cyclotomic::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first && c > 0) os << "+";
    first = false;
    if (k == 0) {
      os << c;
      continue;
    }
    if (c == -1)
      os << "-";
    else if (c != 1)
      os << c << "*";
    os << "z" << modulus_;
    if (k != 1) os << "^" << k;
  }
  return os.str();
}

int Cyclotomic::order_cmp(const Cyclotomic& a, const Cyclotomic& b) {
  size_t i = 0, j = 0;
  static const mpz_class zero = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    uint32_t ka = i < a.terms_.size() ? a.terms_[i].first : UINT32_MAX;
    uint32_t kb = j < b.terms_.size() ? b.terms_[j].first : UINT32_MAX;
    uint32_t k = std::min(ka, kb);
    const mpz_class& ca = (ka == k) ? a.terms_[i].second : zero;
    const mpz_class& cb = (kb == k) ? b.terms_[j].second : zero;
    int c = cmp(ca, cb);
    if (c != 0) return c > 0 ? -1 : 1; // larger coefficient sorts first
    if (ka == k) ++i;
    if (kb == k) ++j;
  }
  return 0;
}

} // namespace blockheight
