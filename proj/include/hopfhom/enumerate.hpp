#pragma once

#include <algorithm>
#include <array>
#include <optional>

#include "hopfhom/module.hpp"

namespace hopfhom {

// ---------------------------------------------------------------------------
// Minimal polynomials and rational root extraction.

// Monic minimal polynomial of a square matrix, coefficients low to high.
template <FieldScalar K>
std::vector<K> minimal_polynomial(const Matrix<K>& t) {
  const std::size_t d = t.rows();
  if (d == 0) return {K::one()};  // minpoly of the empty operator
  auto flatten = [&](const Matrix<K>& m) {
    Matrix<K> f(d * d, 1);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) f(r * d + c, 0) = m(r, c);
    return f;
  };
  std::vector<Matrix<K>> powers{Matrix<K>::identity(d)};
  Matrix<K> lower = flatten(powers[0]);  // columns: flattened lower powers
  for (std::size_t k = 1;; ++k) {
    Matrix<K> next = powers.back() * t;
    Matrix<K> b = flatten(next);
    auto x = solve(lower, b);
    if (x) {
      // t^k = sum_i x_i t^i  ->  p(t) = t^k - sum x_i t^i
      std::vector<K> coeffs(k + 1, K::zero());
      for (std::size_t i = 0; i < k; ++i) coeffs[i] = -(*x)(i, 0);
      coeffs[k] = K::one();
      return coeffs;
    }
    powers.push_back(next);
    lower = lower.hcat(b);
  }
}

template <FieldScalar K>
K poly_eval(const std::vector<K>& coeffs, const K& x) {
  K acc = K::zero();
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

template <FieldScalar K>
struct RootResult {
  std::vector<K> roots;
  bool complete = true;  // false when divisor search had to give up
};

namespace detail {

// Divisors of |n| by trial division; flips `complete` off when an unfactored
// composite cofactor remains.
inline std::vector<mpz_class> divisors_of(mpz_class n, bool& complete) {
  if (n < 0) n = -n;
  std::vector<std::pair<mpz_class, unsigned>> factors;
  mpz_class d = 2;
  while (d * d <= n && d < 1000000) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) factors.emplace_back(d, e);
    ++d;
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
      factors.emplace_back(n, 1);
    } else {
      complete = false;       // unfactored composite: its divisors are missed
      factors.emplace_back(n, 1);
    }
  }
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : factors) {
    const std::size_t base = divs.size();
    mpz_class pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
    if (divs.size() > 20000) {
      complete = false;
      break;
    }
  }
  return divs;
}

inline RootResult<Rational> poly_roots(std::vector<Rational> p) {
  RootResult<Rational> out;
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  if (p.size() <= 1) return out;  // constant: no roots to report
  std::size_t shift = 0;
  while (shift < p.size() && p[shift].is_zero()) ++shift;
  if (shift > 0) {
    out.roots.push_back(Rational(0));
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(shift));
  }
  if (p.size() <= 1) return out;

  // Clear denominators to an integer polynomial.
  mpz_class lcm = 1;
  for (const auto& c : p) {
    mpz_class den = c.denominator();
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  std::vector<mpz_class> ip;
  for (const auto& c : p) ip.push_back(c.numerator() * (lcm / c.denominator()));

  auto num_divs = divisors_of(ip.front(), out.complete);
  auto den_divs = divisors_of(ip.back(), out.complete);
  for (const auto& r : num_divs)
    for (const auto& s : den_divs) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t());
      if (g != 1) continue;
      for (int sign : {1, -1}) {
        auto cand = Rational::parse((sign < 0 ? "-" : "") + r.get_str() + "/" + s.get_str());
        if (cand && poly_eval(p, *cand).is_zero()) out.roots.push_back(*cand);
      }
    }
  std::sort(out.roots.begin(), out.roots.end(), [](const Rational& a, const Rational& b) {
    return cmp(a, b) < 0;
  });
  out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
  return out;
}

inline RootResult<Gfp> poly_roots(std::vector<Gfp> p) {
  RootResult<Gfp> out;
  while (!p.empty() && p.back().is_zero()) p.pop_back();
  if (p.size() <= 1) return out;
  const std::uint64_t q = Gfp::modulus();
  if (q > 65536) {
    out.complete = false;  // full residue sweep too large
    return out;
  }
  for (std::uint64_t r = 0; r < q; ++r) {
    Gfp x = Gfp::from_int(static_cast<long long>(r));
    if (poly_eval(p, x).is_zero()) out.roots.push_back(x);
  }
  return out;
}

}  // namespace detail

// All rational eigenvalues of an operator (roots of its minimal polynomial).
template <FieldScalar K>
RootResult<K> rational_eigenvalues(const Matrix<K>& t) {
  return detail::poly_roots(minimal_polynomial(t));
}

// ---------------------------------------------------------------------------
// One-dimensional stable subspaces by simultaneous eigenspace refinement.

template <FieldScalar K>
struct LineEnumeration {
  std::vector<Subspace<K>> lines;
  bool complete = true;         // eigenvalue search was exhaustive
  bool infinite_family = false; // a >= 2-dim subspace on which all ops are scalar
};

template <FieldScalar K>
LineEnumeration<K> enumerate_stable_lines(const std::vector<Matrix<K>>& ops, std::size_t dim) {
  LineEnumeration<K> out;
  if (dim == 0) return out;
  std::vector<RootResult<K>> roots;
  for (const auto& t : ops) roots.push_back(rational_eigenvalues(t));
  for (const auto& r : roots)
    if (!r.complete) out.complete = false;

  const Matrix<K> I = Matrix<K>::identity(dim);
  std::vector<Subspace<K>> found;
  auto record = [&](const Subspace<K>& v) {
    if (v.dim() == 1) {
      for (const auto& w : out.lines)
        if (w == v) return;
      out.lines.push_back(v);
    } else if (v.dim() >= 2) {
      out.infinite_family = true;  // every line inside is stable
    }
  };
  // Depth-first refinement: V -> V cap ker(T_i - lambda) over candidate
  // eigenvalues per operator.
  auto refine = [&](auto&& self, Subspace<K> v, std::size_t i) -> void {
    if (v.dim() == 0) return;
    if (i == ops.size()) {
      record(v);
      return;
    }
    for (const auto& lambda : roots[i].roots) {
      Subspace<K> eig = rank_kernel_image(ops[i] - I.scaled(lambda)).kernel;
      self(self, intersect(v, eig), i + 1);
    }
  };
  refine(refine, Subspace<K>::full(dim), 0);
  return out;
}

// ---------------------------------------------------------------------------
// Operator algebra, radical (trace form) and socle.

// Basis of the unital algebra generated by `ops` inside End(k^dim).
template <FieldScalar K>
std::vector<Matrix<K>> operator_algebra_basis(const std::vector<Matrix<K>>& ops, std::size_t dim) {
  auto flatten_row = [&](const Matrix<K>& m) {
    Matrix<K> f(1, dim * dim);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) f(0, r * dim + c) = m(r, c);
    return f;
  };
  std::vector<Matrix<K>> basis;
  Subspace<K> span = Subspace<K>::zero(dim * dim);
  auto insert = [&](const Matrix<K>& m) {
    Matrix<K> f = flatten_row(m);
    Subspace<K> bigger = sum(span, Subspace<K>::from_rows(f));
    if (bigger.dim() > span.dim()) {
      span = std::move(bigger);
      basis.push_back(m);
      return true;
    }
    return false;
  };
  insert(Matrix<K>::identity(dim));
  for (const auto& t : ops) insert(t);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) insert(basis[i] * basis[j]);
  return basis;
}

// Radical of the operator algebra via the trace form (valid in char 0: the
// radical is the kernel of (x,y) -> tr(xy) on a faithful module).
template <FieldScalar K>
std::vector<Matrix<K>> trace_radical_basis(const std::vector<Matrix<K>>& algebra_basis_mats) {
  const std::size_t m = algebra_basis_mats.size();
  if (m == 0) return {};
  const std::size_t d = algebra_basis_mats[0].rows();
  Matrix<K> gram(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      K tr = K::zero();
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t k = 0; k < d; ++k) tr += algebra_basis_mats[i](r, k) * algebra_basis_mats[j](k, r);
      gram(i, j) = tr;
    }
  Subspace<K> ker = rank_kernel_image(gram).kernel;
  std::vector<Matrix<K>> rad;
  for (std::size_t r = 0; r < ker.dim(); ++r) {
    Matrix<K> x(d, d);
    for (std::size_t i = 0; i < m; ++i) {
      const K& c = ker.basis_rows()(r, i);
      if (c.is_zero()) continue;
      x += algebra_basis_mats[i].scaled(c);
    }
    rad.push_back(std::move(x));
  }
  return rad;
}

// Socle of k^dim as a module over the algebra generated by `ops`:
// the annihilator of the radical.  Only meaningful in characteristic 0.
template <FieldScalar K>
Subspace<K> socle(const std::vector<Matrix<K>>& ops, std::size_t dim) {
  auto alg = operator_algebra_basis(ops, dim);
  auto rad = trace_radical_basis(alg);
  Subspace<K> soc = Subspace<K>::full(dim);
  for (const auto& r : rad) soc = intersect(soc, rank_kernel_image(r).kernel);
  return soc;
}

// ---------------------------------------------------------------------------
// Full lattice of stable subspaces.

template <FieldScalar K>
struct EnumerationResult {
  std::vector<Subspace<K>> subspaces;  // deterministically ordered
  bool complete = true;                // certified complete lattice
  bool cap_exceeded = false;
  std::vector<std::string> notes;
};

namespace detail {

template <FieldScalar K>
struct QuotientOps {
  std::vector<Matrix<K>> ops;
  Matrix<K> section;  // quotient -> ambient representatives
  std::size_t dim = 0;
};

template <FieldScalar K>
QuotientOps<K> quotient_operators(const std::vector<Matrix<K>>& ops, const Subspace<K>& w) {
  auto q = w.quotient();
  QuotientOps<K> out;
  out.dim = q.dim;
  out.section = q.section;
  for (const auto& t : ops) out.ops.push_back(q.proj * t * q.section);
  return out;
}

// Bottom-up lattice search.  Each node W spawns the lifts of the stable
// lines of the quotient by W; the completeness certificate per node is
// socle containment (char 0) or dim <= 2.
template <FieldScalar K>
EnumerationResult<K> lattice_bfs(const std::vector<Matrix<K>>& ops, std::size_t dim, std::size_t cap) {
  EnumerationResult<K> res;
  std::vector<Subspace<K>> work{Subspace<K>::zero(dim)};
  auto add = [&](const Subspace<K>& s) {
    for (const auto& t : work)
      if (t == s) return false;
    work.push_back(s);
    return true;
  };
  add(Subspace<K>::full(dim));

  for (std::size_t wi = 0; wi < work.size(); ++wi) {
    if (work.size() > cap) {
      res.cap_exceeded = true;
      res.complete = false;
      res.notes.push_back("cap exceeded");
      break;
    }
    Subspace<K> w = work[wi];
    if (w.dim() == dim) continue;
    auto q = quotient_operators(ops, w);
    auto lines = enumerate_stable_lines(q.ops, q.dim);
    if (!lines.complete) {
      res.complete = false;
      res.notes.push_back("eigenvalue search not exhaustive at a node");
    }
    if (lines.infinite_family) {
      res.complete = false;
      res.notes.push_back("infinite family of stable lines at a node");
    }

    // Certificate that the found lines exhaust the minimal extensions.
    if (q.dim > 2 && !lines.infinite_family) {
      Subspace<K> span_lines = Subspace<K>::zero(q.dim);
      for (const auto& l : lines.lines) span_lines = sum(span_lines, l);
      bool socle_covered = false;
      if constexpr (std::is_same_v<K, Rational>) {
        socle_covered = span_lines.contains(socle(q.ops, q.dim));
      }
      if (!socle_covered) {
        res.complete = false;
        res.notes.push_back("socle not spanned by rational stable lines at a node");
        // Sound fallback candidates, all genuinely stable: the socle and the
        // radical image are submodules, as is any closure of a vector.
        std::vector<Subspace<K>> extra;
        auto alg = operator_algebra_basis(q.ops, q.dim);
        auto rad = trace_radical_basis(alg);
        Subspace<K> soc = Subspace<K>::full(q.dim);
        Subspace<K> rad_image = Subspace<K>::zero(q.dim);
        for (const auto& r : rad) {
          soc = intersect(soc, rank_kernel_image(r).kernel);
          rad_image = sum(rad_image, Subspace<K>::from_cols(r));
        }
        extra.push_back(soc);
        extra.push_back(rad_image);
        for (std::size_t i = 0; i < q.dim; ++i)
          extra.push_back(stable_subspace_closure(
              q.ops, Subspace<K>::from_rows(Matrix<K>::basis_col(q.dim, i).transpose())));
        for (const auto& cl : extra)
          if (cl.dim() > 0 && cl.dim() < q.dim)
            add(Subspace<K>::from_cols(w.embedding().hcat(q.section * cl.embedding())));
      }
    }
    for (const auto& l : lines.lines)
      add(Subspace<K>::from_cols(w.embedding().hcat(q.section * l.embedding())));
  }

  std::sort(work.begin(), work.end(), [](const Subspace<K>& a, const Subspace<K>& b) {
    return cmp(a, b) < 0;
  });
  res.subspaces = std::move(work);
  return res;
}

}  // namespace detail

// All subspaces stable under every operator, as a lattice.  `complete` is the
// certificate that the list is exhaustive; when it cannot be certified the
// sound partial list is returned with notes (the possibly-infinite warning).
// A certified-complete run is attempted bottom-up first and, failing that,
// top-down on the transposed module (stable subspaces correspond under
// orthogonal complement).
template <FieldScalar K>
EnumerationResult<K> enumerate_stable_subspaces(const std::vector<Matrix<K>>& ops, std::size_t dim,
                                                std::size_t cap = 512) {
  auto primary = detail::lattice_bfs(ops, dim, cap);
  if (primary.complete) return primary;
  if (primary.cap_exceeded) return primary;

  std::vector<Matrix<K>> duals;
  for (const auto& t : ops) duals.push_back(t.transpose());
  auto dual = detail::lattice_bfs(duals, dim, cap);
  if (dual.complete && !dual.cap_exceeded) {
    EnumerationResult<K> res;
    for (const auto& s : dual.subspaces) res.subspaces.push_back(s.perp());
    std::sort(res.subspaces.begin(), res.subspaces.end(),
              [](const Subspace<K>& a, const Subspace<K>& b) { return cmp(a, b) < 0; });
    res.notes.push_back("complete via the dual module");
    return res;
  }
  // Merge what both directions found and close under sum/intersection so the
  // partial answer is at least a lattice.
  EnumerationResult<K> res = primary;
  for (const auto& s : dual.subspaces) {
    Subspace<K> p = s.perp();
    if (std::find(res.subspaces.begin(), res.subspaces.end(), p) == res.subspaces.end())
      res.subspaces.push_back(p);
  }
  for (std::size_t i = 0; i < res.subspaces.size() && res.subspaces.size() <= cap; ++i)
    for (std::size_t j = 0; j < i && res.subspaces.size() <= cap; ++j) {
      for (auto cand : {sum(res.subspaces[i], res.subspaces[j]),
                        intersect(res.subspaces[i], res.subspaces[j])}) {
        if (std::find(res.subspaces.begin(), res.subspaces.end(), cand) == res.subspaces.end())
          res.subspaces.push_back(std::move(cand));
      }
    }
  res.complete = false;
  std::sort(res.subspaces.begin(), res.subspaces.end(),
            [](const Subspace<K>& a, const Subspace<K>& b) { return cmp(a, b) < 0; });
  return res;
}

// ---------------------------------------------------------------------------
// Independent brute-force oracle (used by tests and `classify --brute`):
// solves the rank-1 stability conditions det[T v | v] = 0 as a system of
// binary quadratics.  Exhaustive for ambient dimension <= 2.

template <FieldScalar K>
std::optional<std::vector<Subspace<K>>> brute_force_stable_subspaces(
    const std::vector<Matrix<K>>& ops, std::size_t dim) {
  std::vector<Subspace<K>> out{Subspace<K>::zero(dim)};
  if (dim == 0) return out;
  if (dim == 1) {
    out.push_back(Subspace<K>::full(1));
    return out;
  }
  if (dim > 2) return std::nullopt;

  auto is_line_stable = [&](const Matrix<K>& v) {
    auto line = Subspace<K>::from_rows(v.transpose());
    for (const auto& t : ops)
      if (!line.contains(t * v)) return false;
    return true;
  };
  auto push_line = [&](const Matrix<K>& v) {
    if (!is_line_stable(v)) return;
    auto line = Subspace<K>::from_rows(v.transpose());
    for (const auto& s : out)
      if (s == line) return;
    out.push_back(line);
  };

  // det [T v | v] = 0 with v = (x, y):
  //   -T10 x^2 + (T00 - T11) xy + T01 y^2 = 0.
  std::vector<std::array<K, 3>> quads;
  for (const auto& t : ops) {
    std::array<K, 3> q{-t(1, 0), t(0, 0) - t(1, 1), t(0, 1)};
    if (!(q[0].is_zero() && q[1].is_zero() && q[2].is_zero())) quads.push_back(q);
  }
  if (quads.empty()) return std::nullopt;  // every line stable: infinite lattice

  const K& a = quads[0][0];
  const K& b = quads[0][1];
  const K& c = quads[0][2];
  std::vector<Matrix<K>> candidates;
  auto vec = [&](const K& x, const K& y) {
    Matrix<K> v(2, 1);
    v(0, 0) = x;
    v(1, 0) = y;
    return v;
  };
  if (a.is_zero()) {
    candidates.push_back(vec(K::one(), K::zero()));  // y = 0
    if (!b.is_zero()) candidates.push_back(vec(-(c / b), K::one()));
  } else {
    // a x^2 + b x + c = 0 with y = 1; rational roots exist iff the
    // discriminant is a perfect square.
    if constexpr (std::is_same_v<K, Rational>) {
      Rational disc = b * b - Rational(4) * a * c;
      if (cmp(disc, Rational(0)) >= 0) {
        mpz_class num = disc.numerator(), den = disc.denominator();
        if (mpz_perfect_square_p(num.get_mpz_t()) && mpz_perfect_square_p(den.get_mpz_t())) {
          mpz_class rn, rd;
          mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
          mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
          Rational root = Rational::parse(rn.get_str() + "/" + rd.get_str()).value();
          for (int sign : {1, -1}) {
            Rational x = (-b + (sign > 0 ? root : -root)) / (Rational(2) * a);
            candidates.push_back(vec(x, Rational(1)));
          }
        }
      }
    } else {
      // Small prime field: try every residue.
      for (std::uint64_t r = 0; r < Gfp::modulus(); ++r)
        candidates.push_back(vec(K::from_int(static_cast<long long>(r)), K::one()));
    }
  }
  for (const auto& v : candidates) push_line(v);
  out.push_back(Subspace<K>::full(2));
  std::sort(out.begin(), out.end(),
            [](const Subspace<K>& x, const Subspace<K>& y) { return cmp(x, y) < 0; });
  return out;
}

}  // namespace hopfhom
