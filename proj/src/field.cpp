#include "soficlab/field.hpp"

#include <cctype>
#include <stdexcept>

namespace soficlab {

namespace {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    exp >>= 1U;
  }
  return result;
}

std::uint64_t reduce(const mpz_class& value, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), p);
  return r.get_ui();
}

}  // namespace

Field Field::prime(std::uint64_t p) {
  if (p < 2 || p >= (std::uint64_t{1} << 62)) {
    throw std::invalid_argument("prime field modulus out of range: " + std::to_string(p));
  }
  mpz_class candidate(static_cast<unsigned long>(p));
  if (mpz_probab_prime_p(candidate.get_mpz_t(), 40) == 0) {
    throw std::invalid_argument("field modulus is not prime: " + std::to_string(p));
  }
  return Field(p);
}

std::string Field::name() const {
  return is_rational() ? std::string("Q") : "F_" + std::to_string(modulus_);
}

Field parse_field(const std::string& text) {
  if (text == "q" || text == "Q") return Field::rationals();
  if (text.size() > 3 && (text.rfind("fp:", 0) == 0 || text.rfind("Fp:", 0) == 0)) {
    const std::string digits = text.substr(3);
    for (char ch : digits) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) {
        throw std::invalid_argument("invalid field modulus: " + digits);
      }
    }
    return Field::prime(std::stoull(digits));
  }
  throw std::invalid_argument("unknown field '" + text + "' (expected q or fp:P)");
}

Scalar::Scalar(Field field) : field_(field) {
  if (field_.is_rational()) {
    value_ = Rational(0);
  } else {
    value_ = std::uint64_t{0};
  }
}

Scalar::Scalar(Field field, long long value) : Scalar(field, Rational(static_cast<long>(value))) {}

Scalar::Scalar(Field field, const Rational& value) : field_(field) {
  if (field_.is_rational()) {
    Rational q = value;
    q.canonicalize();
    value_ = std::move(q);
    return;
  }
  const std::uint64_t p = field_.characteristic();
  const std::uint64_t den = reduce(value.get_den(), p);
  if (den == 0) {
    throw std::domain_error("denominator " + value.get_den().get_str() + " vanishes in " + field_.name());
  }
  const std::uint64_t num = reduce(value.get_num(), p);
  value_ = mul_mod(num, pow_mod(den, p - 2, p), p);
}

bool Scalar::is_zero() const {
  if (field_.is_rational()) return sgn(std::get<Rational>(value_)) == 0;
  return std::get<std::uint64_t>(value_) == 0;
}

bool Scalar::is_one() const {
  if (field_.is_rational()) return std::get<Rational>(value_) == 1;
  return std::get<std::uint64_t>(value_) == 1;
}

const Rational& Scalar::rational() const {
  if (!field_.is_rational()) throw std::logic_error("rational() called on a prime-field scalar");
  return std::get<Rational>(value_);
}

std::uint64_t Scalar::residue() const {
  if (field_.is_rational()) throw std::logic_error("residue() called on a rational scalar");
  return std::get<std::uint64_t>(value_);
}

void Scalar::check_same_field(const Scalar& rhs) const {
  if (!(field_ == rhs.field_)) {
    throw std::invalid_argument("field mismatch: " + field_.name() + " vs " + rhs.field_.name());
  }
}

Scalar Scalar::operator-() const {
  Scalar out(field_);
  if (field_.is_rational()) {
    out.value_ = Rational(-std::get<Rational>(value_));
  } else {
    const std::uint64_t v = std::get<std::uint64_t>(value_);
    out.value_ = v == 0 ? 0 : field_.characteristic() - v;
  }
  return out;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  check_same_field(rhs);
  if (field_.is_rational()) {
    std::get<Rational>(value_) += std::get<Rational>(rhs.value_);
  } else {
    const std::uint64_t p = field_.characteristic();
    std::uint64_t s = std::get<std::uint64_t>(value_) + std::get<std::uint64_t>(rhs.value_);
    if (s >= p) s -= p;
    value_ = s;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs) {
  check_same_field(rhs);
  if (field_.is_rational()) {
    std::get<Rational>(value_) *= std::get<Rational>(rhs.value_);
  } else {
    value_ = mul_mod(std::get<std::uint64_t>(value_), std::get<std::uint64_t>(rhs.value_), field_.characteristic());
  }
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in " + field_.name());
  Scalar out(field_);
  if (field_.is_rational()) {
    out.value_ = Rational(1 / std::get<Rational>(value_));
  } else {
    const std::uint64_t p = field_.characteristic();
    out.value_ = pow_mod(std::get<std::uint64_t>(value_), p - 2, p);
  }
  return out;
}

Scalar& Scalar::operator/=(const Scalar& rhs) {
  check_same_field(rhs);
  return *this *= rhs.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  return a.field_ == b.field_ && a.value_ == b.value_;
}

std::string Scalar::to_string() const {
  if (field_.is_rational()) return rational_to_string(std::get<Rational>(value_));
  return std::to_string(std::get<std::uint64_t>(value_));
}

std::string rational_to_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  auto is_integer = [](const std::string& s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (s.size() == start) return false;
    for (std::size_t i = start; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
  };
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("not an exact rational: '" + text + "'");
  }
  mpz_class n(num[0] == '+' ? num.substr(1) : num);
  mpz_class d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

}  // namespace soficlab
