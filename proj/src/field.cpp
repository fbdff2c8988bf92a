#include "hopfhom/field.hpp"

namespace hopfhom {

namespace {

std::uint64_t g_modulus = 0;

bool is_prime_u64(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

void Gfp::set_modulus(std::uint64_t p) {
  if (p != 0) {
    if (p >= (std::uint64_t{1} << 31))
      throw std::domain_error("Gfp: modulus too large (must be < 2^31)");
    if (!is_prime_u64(p)) throw std::domain_error("Gfp: modulus " + std::to_string(p) + " is not prime");
  }
  g_modulus = p;
}

std::uint64_t Gfp::modulus() { return g_modulus; }
bool Gfp::modulus_set() { return g_modulus != 0; }

std::optional<Gfp> Gfp::parse(const std::string& s) {
  const std::uint64_t p = checked_modulus();
  auto read_int = [&](std::size_t& i, std::uint64_t& out, bool& neg) -> bool {
    neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      neg = (s[i] == '-');
      ++i;
    }
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    out = 0;
    for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i)
      out = (out * 10 + static_cast<std::uint64_t>(s[i] - '0')) % p;
    return true;
  };
  std::size_t i = 0;
  std::uint64_t num = 0, den = 1;
  bool num_neg = false, den_neg = false;
  if (!read_int(i, num, num_neg)) return std::nullopt;
  if (i < s.size()) {
    if (s[i] != '/') return std::nullopt;
    ++i;
    if (!read_int(i, den, den_neg)) return std::nullopt;
    if (i != s.size()) return std::nullopt;
  }
  Gfp n = num_neg ? -from_residue(num) : from_residue(num);
  Gfp d = den_neg ? -from_residue(den) : from_residue(den);
  if (d.is_zero()) return std::nullopt;
  return n / d;
}

Gfp Gfp::inv() const {
  const std::uint64_t p = checked_modulus();
  if (v_ == 0) throw std::domain_error("Gfp: division by zero");
  // Fermat: v^(p-2) mod p.
  std::uint64_t base = v_, e = p - 2, acc = 1;
  while (e) {
    if (e & 1) acc = static_cast<std::uint64_t>((static_cast<unsigned __int128>(acc) * base) % p);
    base = static_cast<std::uint64_t>((static_cast<unsigned __int128>(base) * base) % p);
    e >>= 1;
  }
  return from_residue(acc);
}

GfpScope::GfpScope(std::uint64_t p) : prev_(Gfp::modulus()) { Gfp::set_modulus(p); }
GfpScope::~GfpScope() { g_modulus = prev_; }

}  // namespace hopfhom
