#include "hopfhom/groups.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hopfhom {

namespace {

std::string triple(std::size_t a, std::size_t b, std::size_t c) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

}  // namespace

GroupTable GroupTable::from_cayley(std::vector<std::vector<std::size_t>> table,
                                   std::vector<std::string> labels) {
  const std::size_t n = table.size();
  if (n == 0) throw std::invalid_argument("group: empty table");
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) throw std::invalid_argument("group: table is not square");
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] >= n)
        throw std::invalid_argument("group: entry out of range at " + triple(a, b, table[a][b]));
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw std::invalid_argument("group: associativity fails at witness " + triple(a, b, c));

  GroupTable g;
  g.table_ = std::move(table);
  if (labels.empty())
    for (std::size_t i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
  if (labels.size() != n) throw std::invalid_argument("group: label count mismatch");
  g.labels_ = std::move(labels);
  g.finalize();
  return g;
}

void GroupTable::finalize() {
  const std::size_t n = table_.size();
  std::optional<std::size_t> id;
  for (std::size_t e = 0; e < n && !id; ++e) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) id = e;
  }
  if (!id) throw std::invalid_argument("group: no identity element");
  id_ = *id;
  inv_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] == id_ && table_[b][a] == id_) {
        inv_[a] = b;
        break;
      }
    if (inv_[a] == n)
      throw std::invalid_argument("group: element " + std::to_string(a) + " has no inverse");
  }
}

GroupTable GroupTable::from_permutation_generators(const std::vector<std::vector<std::size_t>>& gens,
                                                   std::size_t element_cap) {
  if (gens.empty()) throw std::invalid_argument("group: no generators");
  const std::size_t m = gens[0].size();
  for (const auto& g : gens) {
    if (g.size() != m) throw std::invalid_argument("group: generator degree mismatch");
    std::vector<bool> seen(m, false);
    for (auto v : g) {
      if (v >= m || seen[v]) throw std::invalid_argument("group: generator is not a permutation");
      seen[v] = true;
    }
  }
  std::vector<std::size_t> identity(m);
  for (std::size_t i = 0; i < m; ++i) identity[i] = i;

  auto compose = [m](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    // (a*b)(x) = a(b(x))
    std::vector<std::size_t> r(m);
    for (std::size_t i = 0; i < m; ++i) r[i] = a[b[i]];
    return r;
  };

  std::vector<std::vector<std::size_t>> elems{identity};
  std::map<std::vector<std::size_t>, std::size_t> index{{identity, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      auto p = compose(elems[i], g);
      if (index.emplace(p, elems.size()).second) {
        elems.push_back(p);
        if (elems.size() > element_cap)
          throw std::invalid_argument("group: element cap " + std::to_string(element_cap) +
                                      " exceeded during closure");
      }
    }
  }
  const std::size_t n = elems.size();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = index.at(compose(elems[a], elems[b]));

  std::vector<std::string> labels;
  for (const auto& p : elems) {
    std::string s = "[";
    for (std::size_t i = 0; i < m; ++i) {
      if (i) s += " ";
      s += std::to_string(p[i]);
    }
    s += "]";
    labels.push_back(s);
  }
  return from_cayley(std::move(table), std::move(labels));
}

GroupTable GroupTable::cyclic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("group: cyclic(0)");
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(i == 0 ? "e" : "a" + std::to_string(i));
  return from_cayley(std::move(table), std::move(labels));
}

GroupTable GroupTable::symmetric3() {
  // Generators (0 1) and (0 1 2) acting on {0,1,2}.
  return from_permutation_generators({{1, 0, 2}, {1, 2, 0}});
}

bool GroupTable::is_abelian() const {
  const std::size_t n = order();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

GroupTable::Subgroup GroupTable::subgroup(std::vector<std::size_t> elems) const {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  const std::size_t k = elems.size();
  std::map<std::size_t, std::size_t> local;
  for (std::size_t i = 0; i < k; ++i) {
    if (elems[i] >= order()) throw std::invalid_argument("subgroup: element out of range");
    local[elems[i]] = i;
  }
  std::vector<std::vector<std::size_t>> table(k, std::vector<std::size_t>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      auto it = local.find(mul(elems[a], elems[b]));
      if (it == local.end()) throw std::invalid_argument("subgroup: set is not closed under product");
      table[a][b] = it->second;
    }
  std::vector<std::string> labels;
  for (auto e : elems) labels.push_back(labels_[e]);
  Subgroup out{from_cayley(std::move(table), std::move(labels)), std::move(elems)};
  return out;
}

}  // namespace hopfhom
