#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hopfhom {

// Exact rational number backed by GMP.  Values are always kept canonical
// (reduced, positive denominator), so operator== is structural equality.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // implicit, mirrors integer literals
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_.canonicalize();
  }

  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static Rational from_int(long n) { return Rational(n); }
  static std::string field_name() { return "Q"; }

  // Accepts "p", "-p", "p/q" with arbitrary-precision digits.
  static std::optional<Rational> parse(const std::string& s) {
    if (s.empty()) return std::nullopt;
    mpq_class v;
    if (v.set_str(s, 10) != 0) return std::nullopt;
    if (v.get_den() == 0) return std::nullopt;
    v.canonicalize();
    Rational r;
    r.v_ = v;
    return r;
  }

  std::string str() const { return v_.get_str(); }
  bool is_zero() const { return sgn(v_) == 0; }

  Rational inv() const {
    if (is_zero()) throw std::domain_error("Rational: division by zero");
    Rational r;
    r.v_ = 1 / v_;
    return r;
  }

  Rational operator-() const {
    Rational r;
    r.v_ = -v_;
    return r;
  }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  // Total order, used only to fix deterministic output orderings.
  friend int cmp(const Rational& a, const Rational& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()); }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

 private:
  mpq_class v_;
};

// Prime-field scalar GF(p).  The modulus is process-global and must be set
// before any arithmetic (one field per run; tests scope it with GfpScope).
class Gfp {
 public:
  Gfp() : v_(0) {}
  Gfp(long n) { *this = from_int(n); }  // implicit, mirrors integer literals

  static void set_modulus(std::uint64_t p);
  static std::uint64_t modulus();
  static bool modulus_set();

  static Gfp zero() { return Gfp(); }
  static Gfp one() { return from_int(1); }
  static Gfp from_int(long long n) {
    const std::int64_t p = static_cast<std::int64_t>(checked_modulus());
    std::int64_t r = static_cast<std::int64_t>(n % p);
    if (r < 0) r += p;
    return from_residue(static_cast<std::uint64_t>(r));
  }
  static std::string field_name() { return "GF(" + std::to_string(modulus()) + ")"; }

  // Accepts the same "p", "-p", "p/q" syntax as Rational; the value is read
  // digit by digit mod p so arbitrarily long literals are fine.
  static std::optional<Gfp> parse(const std::string& s);

  std::string str() const { return std::to_string(v_); }
  bool is_zero() const { return v_ == 0; }
  std::uint64_t residue() const { return v_; }

  Gfp inv() const;

  Gfp operator-() const { return v_ == 0 ? Gfp() : from_residue(checked_modulus() - v_); }
  Gfp& operator+=(const Gfp& o) {
    const std::uint64_t p = checked_modulus();
    v_ += o.v_;
    if (v_ >= p) v_ -= p;
    return *this;
  }
  Gfp& operator-=(const Gfp& o) {
    const std::uint64_t p = checked_modulus();
    v_ = (v_ >= o.v_) ? v_ - o.v_ : v_ + p - o.v_;
    return *this;
  }
  Gfp& operator*=(const Gfp& o) {
    const std::uint64_t p = checked_modulus();
    v_ = static_cast<std::uint64_t>((static_cast<unsigned __int128>(v_) * o.v_) % p);
    return *this;
  }
  Gfp& operator/=(const Gfp& o) { return *this *= o.inv(); }

  friend Gfp operator+(Gfp a, const Gfp& b) { return a += b; }
  friend Gfp operator-(Gfp a, const Gfp& b) { return a -= b; }
  friend Gfp operator*(Gfp a, const Gfp& b) { return a *= b; }
  friend Gfp operator/(Gfp a, const Gfp& b) { return a /= b; }
  friend bool operator==(const Gfp& a, const Gfp& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Gfp& a, const Gfp& b) { return a.v_ != b.v_; }
  friend int cmp(const Gfp& a, const Gfp& b) { return a.v_ < b.v_ ? -1 : (a.v_ > b.v_ ? 1 : 0); }

 private:
  static Gfp from_residue(std::uint64_t r) {
    Gfp g;
    g.v_ = r;
    return g;
  }
  static std::uint64_t checked_modulus() {
    const std::uint64_t p = modulus();
    if (p == 0) throw std::logic_error("Gfp: modulus not set");
    return p;
  }

  std::uint64_t v_;
};

// RAII modulus switch for tests that mix fields in one process.
class GfpScope {
 public:
  explicit GfpScope(std::uint64_t p);
  ~GfpScope();
  GfpScope(const GfpScope&) = delete;
  GfpScope& operator=(const GfpScope&) = delete;

 private:
  std::uint64_t prev_;
};

template <typename K>
concept FieldScalar = requires(K a, K b, const std::string& s) {
  { K::zero() } -> std::same_as<K>;
  { K::one() } -> std::same_as<K>;
  { K::from_int(1L) } -> std::same_as<K>;
  { K::field_name() } -> std::same_as<std::string>;
  { K::parse(s) } -> std::same_as<std::optional<K>>;
  { a + b } -> std::same_as<K>;
  { a - b } -> std::same_as<K>;
  { a * b } -> std::same_as<K>;
  { a / b } -> std::same_as<K>;
  { -a } -> std::same_as<K>;
  { a.inv() } -> std::same_as<K>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.str() } -> std::same_as<std::string>;
  { a == b } -> std::same_as<bool>;
  { cmp(a, b) } -> std::same_as<int>;
};

static_assert(FieldScalar<Rational>);
static_assert(FieldScalar<Gfp>);

}  // namespace hopfhom
