#include "discrarr/exact.hpp"

#include <cctype>

namespace discrarr {

std::string to_string(const Rational& q) {
  Rational c = q;  // values built from a raw numerator/denominator pair may be unreduced
  c.canonicalize();
  return c.get_str(10);
}

namespace {

bool is_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!is_digits(num) || !is_digits(den))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational RationalField::inv(const Element& a) const {
  if (sgn(a) == 0) throw std::domain_error("inverse of zero");
  return Element(1) / a;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    a %= n;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t prime) : p_(prime) {
  if (prime <= (1ULL << 20) || prime >= (1ULL << 63))
    throw std::invalid_argument("prime field modulus must lie in (2^20, 2^63)");
  if (!is_prime(prime)) throw std::invalid_argument(std::to_string(prime) + " is not prime");
}

PrimeField::Element PrimeField::from_int(std::int64_t v) const {
  const auto m = static_cast<std::int64_t>(p_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<Element>(r);
}

PrimeField::Element PrimeField::from_rational(const Rational& q) const {
  const mpz_class p(std::to_string(p_), 10);
  mpz_class num = q.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = q.get_den() % p;
  if (den == 0) throw std::domain_error("denominator of " + to_string(q) + " vanishes mod " + std::to_string(p_));
  const Element n = std::stoull(num.get_str());
  const Element d = std::stoull(den.get_str());
  return mul(n, inv(d));
}

PrimeField::Element PrimeField::add(Element a, Element b) const {
  const Element s = a + b;  // both < 2^63, no overflow
  return s >= p_ ? s - p_ : s;
}

PrimeField::Element PrimeField::sub(Element a, Element b) const { return a >= b ? a - b : a + (p_ - b); }

PrimeField::Element PrimeField::mul(Element a, Element b) const {
  return static_cast<Element>((static_cast<unsigned __int128>(a) * b) % p_);
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  // Fermat: a^(p-2).
  Element result = 1;
  Element base = a;
  std::uint64_t e = p_ - 2;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::size_t rank(const RationalMatrix& m) { return rank(RationalField{}, m); }

std::vector<RationalVector> kernel_basis(const RationalMatrix& m) { return kernel_basis(RationalField{}, m); }

Rational det(const RationalMatrix& m) { return determinant(RationalField{}, m); }

std::optional<RationalVector> solve(const RationalMatrix& m, std::span<const Rational> b) {
  return solve(RationalField{}, m, b);
}

FieldMode FieldMode::parse(std::string_view text) {
  if (text == "Q") return rational();
  if (text == "Fp") return prime_field(PrimeField::kDefaultPrime);
  if (text.substr(0, 3) == "Fp:") {
    const std::string digits(text.substr(3));
    if (digits.empty() || !is_digits(digits)) throw std::invalid_argument("malformed field '" + std::string(text) + "'");
    const std::uint64_t p = std::stoull(digits);
    PrimeField check(p);  // validates range and primality
    return prime_field(check.modulus());
  }
  throw std::invalid_argument("unknown field '" + std::string(text) + "' (expected Q or Fp:<prime>)");
}

std::string FieldMode::label() const { return kind == Kind::Rational ? "Q" : "Fp"; }

std::string FieldMode::to_string() const {
  return kind == Kind::Rational ? "Q" : "Fp:" + std::to_string(prime);
}

}  // namespace discrarr
