#include "lincond/reducts.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace lincond {
namespace {

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

// Modular inverse of a (coprime to n) by the extended Euclidean algorithm.
std::int64_t inverse_mod(std::int64_t a, std::int64_t n) {
  std::int64_t old_r = mod(a, n), r = n, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  return mod(old_s, n);
}

// Coefficient of each variable after substituting the affine term for the
// symbol; a bare variable has coefficient 1 at itself.
std::vector<std::int64_t> term_coefficients(const TermRef& t, const AffineWitness& w, int num_vars) {
  std::vector<std::int64_t> out(num_vars, 0);
  if (t.is_var()) {
    out[t.variable()] = 1;
    return out;
  }
  const AffineTerm& a = w.at(t.symbol());
  for (int i = 0; i < t.size(); ++i) out[t.arg(i)] += a.coeffs[i];
  return out;
}

std::string big_to_string(const BigInt& v) { return v.str(); }

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::int64_t> prime_factors(BigInt n) {
  if (n < 0) n = -n;
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; BigInt(d) * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<std::int64_t>(n));
  return out;
}

std::string AffineTerm::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    std::int64_t c = modulus ? mod(coeffs[i], modulus) : coeffs[i];
    if (c == 0) continue;
    if (!out.empty() && c > 0) out += '+';
    if (c == -1) {
      out += '-';
    } else if (c != 1) {
      out += std::to_string(c);
    }
    out += "xyzw"[i];
  }
  return out.empty() ? "0" : out;
}

LinearSystem coefficient_system(const System& system) {
  LinearSystem ls;
  ls.symbols = system.signature().symbols();
  for (Symbol s : ls.symbols) {
    ls.offsets.push_back(ls.num_unknowns);
    ls.num_unknowns += arity(s);
  }
  auto offset_of = [&](Symbol s) {
    auto it = std::find(ls.symbols.begin(), ls.symbols.end(), s);
    if (it == ls.symbols.end()) throw std::invalid_argument("symbol not declared");
    return ls.offsets[it - ls.symbols.begin()];
  };
  // Adds sign * (coefficient of v in t) to row; returns the constant part.
  auto accumulate = [&](std::vector<std::int64_t>& row, const TermRef& t, int v, int sign) {
    if (t.is_var()) return t.variable() == v ? sign : 0;
    int base = offset_of(t.symbol());
    for (int i = 0; i < t.size(); ++i) {
      if (t.arg(i) == v) row[base + i] += sign;
    }
    return 0;
  };
  for (const Identity& id : system.identities()) {
    for (int v = 0; v < system.num_vars(); ++v) {
      std::vector<std::int64_t> row(ls.num_unknowns, 0);
      int constant = accumulate(row, id.left(), v, 1) + accumulate(row, id.right(), v, -1);
      ls.rows.push_back(std::move(row));
      ls.rhs.push_back(-constant);
      ls.row_labels.push_back(id.to_string() + " @" + var_char(v));
    }
  }
  for (std::size_t k = 0; k < ls.symbols.size(); ++k) {
    std::vector<std::int64_t> row(ls.num_unknowns, 0);
    for (int i = 0; i < arity(ls.symbols[k]); ++i) row[ls.offsets[k] + i] = 1;
    ls.rows.push_back(std::move(row));
    ls.rhs.push_back(1);
    ls.row_labels.push_back(std::string("idempotent ") + symbol_char(ls.symbols[k]));
  }
  return ls;
}

bool check_solution(const LinearSystem& ls, const std::vector<std::int64_t>& u, std::int64_t n) {
  if (static_cast<int>(u.size()) != ls.num_unknowns) return false;
  for (std::size_t r = 0; r < ls.rows.size(); ++r) {
    std::int64_t acc = 0;
    for (int j = 0; j < ls.num_unknowns; ++j) acc = mod(acc + ls.rows[r][j] * u[j], n);
    if (acc != mod(ls.rhs[r], n)) return false;
  }
  return true;
}

std::optional<std::vector<std::int64_t>> solve_mod(const LinearSystem& ls, std::int64_t n) {
  if (n < 2) throw std::invalid_argument("modulus must be at least 2");
  const int k = ls.num_unknowns;
  // Each row is decided when its last unknown with a nonzero coefficient
  // mod n is assigned.
  std::vector<std::vector<int>> rows_at(k);
  for (std::size_t r = 0; r < ls.rows.size(); ++r) {
    int last = -1;
    for (int j = 0; j < k; ++j) {
      if (mod(ls.rows[r][j], n) != 0) last = j;
    }
    if (last < 0) {
      if (mod(ls.rhs[r], n) != 0) return std::nullopt;
      continue;
    }
    rows_at[last].push_back(static_cast<int>(r));
  }
  std::vector<std::int64_t> u(k, 0);
  auto residual = [&](int r, int j) {
    std::int64_t acc = ls.rhs[r];
    for (int i = 0; i < j; ++i) acc -= ls.rows[r][i] * u[i];
    return mod(acc, n);
  };
  auto dfs = [&](auto&& self, int j) -> bool {
    if (j == k) return true;
    const auto& rows = rows_at[j];
    std::int64_t start = 0, step = 1;
    if (!rows.empty()) {
      // c * x = res (mod n) has solutions x0 + i * n/g when g = gcd(c, n)
      // divides res.
      std::int64_t c = mod(ls.rows[rows[0]][j], n);
      std::int64_t res = residual(rows[0], j);
      std::int64_t g = std::gcd(c, n);
      if (res % g != 0) return false;
      step = n / g;
      start = mod((res / g) * inverse_mod(c / g, step), step);
      if (step == 1) start = 0;
    }
    for (std::int64_t x = start; x < n; x += step) {
      u[j] = x;
      bool ok = true;
      for (std::size_t i = 1; i < rows.size() && ok; ++i) {
        ok = mod(ls.rows[rows[i]][j] * x, n) == residual(rows[i], j);
      }
      if (ok && self(self, j + 1)) return true;
    }
    u[j] = 0;
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  if (!check_solution(ls, u, n)) throw std::logic_error("solve_mod produced an invalid solution");
  return u;
}

AffineWitness witness_terms(const LinearSystem& ls, const std::vector<std::int64_t>& u, std::int64_t n) {
  AffineWitness w;
  for (std::size_t k = 0; k < ls.symbols.size(); ++k) {
    AffineTerm t{n, {}};
    for (int i = 0; i < arity(ls.symbols[k]); ++i) t.coeffs.push_back(mod(u[ls.offsets[k] + i], n));
    w.emplace(ls.symbols[k], t);
  }
  return w;
}

bool affine_satisfies(const System& system, const AffineWitness& w, std::int64_t n) {
  for (const auto& [sym, term] : w) {
    if (static_cast<int>(term.coeffs.size()) != arity(sym)) return false;
    std::int64_t sum = 0;
    for (std::int64_t c : term.coeffs) sum += c;
    if (mod(sum, n) != 1 % n) return false;
  }
  for (const Identity& id : system.identities()) {
    auto l = term_coefficients(id.left(), w, system.num_vars());
    auto r = term_coefficients(id.right(), w, system.num_vars());
    for (int v = 0; v < system.num_vars(); ++v) {
      if (mod(l[v] - r[v], n) != 0) return false;
    }
  }
  return true;
}

RingVerdict solve_some_finite_ring(const LinearSystem& ls) {
  BigMatrix a;
  for (const auto& row : ls.rows) {
    std::vector<BigInt> big(row.begin(), row.end());
    a.push_back(std::move(big));
  }
  RingVerdict verdict;
  SmithForm f = smith_normal_form(a);
  std::vector<BigInt> c(ls.rows.size(), 0);
  for (std::size_t i = 0; i < ls.rows.size(); ++i)
    for (std::size_t j = 0; j < ls.rows.size(); ++j) c[i] += f.u[i][j] * ls.rhs[j];
  verdict.snf.diag = f.diagonal();
  verdict.snf.transformed_rhs = c;
  BigInt g = 0;
  for (std::size_t i = f.rank; i < c.size(); ++i) g = boost::multiprecision::gcd(g, c[i]);
  verdict.snf.zero_row_gcd = g;

  // p is admissible iff p | c_i on every zero row and p | d_i => p | c_i.
  auto excluding_row = [&](std::int64_t p) {
    for (int i = 0; i < f.rank; ++i) {
      if (verdict.snf.diag[i] % p == 0 && c[i] % p != 0) return i;
    }
    return -1;
  };
  std::int64_t prime = 0;
  if (g == 0) {
    for (std::int64_t p = 2;; ++p) {
      if (is_prime(p) && excluding_row(p) < 0) {
        prime = p;
        break;
      }
    }
  } else {
    for (std::int64_t p : prime_factors(g)) {
      int row = excluding_row(p);
      if (row < 0) {
        prime = p;
        break;
      }
      verdict.snf.excluded.push_back({p, row});
    }
  }
  if (prime == 0) return verdict;
  auto solution = solve_mod(ls, prime);
  if (!solution) throw std::logic_error("admissible prime without a solution");
  verdict.satisfiable = true;
  verdict.prime = prime;
  verdict.solution = *solution;
  verdict.witness = witness_terms(ls, *solution, prime);
  verdict.snf.excluded.clear();
  return verdict;
}

bool verify_ring_verdict(const LinearSystem& ls, const RingVerdict& v) {
  if (v.satisfiable) return is_prime(v.prime) && check_solution(ls, v.solution, v.prime);
  RingVerdict fresh = solve_some_finite_ring(ls);
  if (fresh.satisfiable) return false;
  if (fresh.snf.diag != v.snf.diag || fresh.snf.transformed_rhs != v.snf.transformed_rhs) return false;
  const BigInt& g = v.snf.zero_row_gcd;
  if (g == 0) return false;
  std::vector<std::int64_t> factors = prime_factors(g);
  if (factors.size() != v.snf.excluded.size()) return false;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const PrimeExclusion& e = v.snf.excluded[i];
    if (e.prime != factors[i] || e.row < 0 || e.row >= static_cast<int>(v.snf.diag.size())) return false;
    if (v.snf.diag[e.row] % e.prime != 0 || v.snf.transformed_rhs[e.row] % e.prime == 0) return false;
  }
  return true;
}

std::vector<AffineTerm> affine_terms(std::int64_t n, int k) {
  if (n < 2) throw std::invalid_argument("modulus must be at least 2");
  std::vector<AffineTerm> out;
  std::vector<std::int64_t> c(k, 0);
  for (;;) {
    std::int64_t sum = 0;
    for (int i = 0; i + 1 < k; ++i) sum += c[i];
    c[k - 1] = mod(1 - sum, n);
    out.push_back({n, c});
    int i = k - 2;
    while (i >= 0 && ++c[i] == n) c[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

SubstitutionReport substitution_lemma_check(const std::vector<std::int64_t>& primes) {
  std::vector<System> shapes;
  std::vector<char> kinds;
  std::vector<std::string> labels;
  auto add_shape = [&](char kind, const TermRef& l, const TermRef& r) {
    System s({}, 3, Signature{Symbol::P});
    s.add(l, r);
    shapes.push_back(s);
    kinds.push_back(kind);
    labels.push_back(l.to_string() + "=" + r.to_string());
  };
  std::vector<int> perm{0, 1, 2};
  do {
    add_shape('a', TermRef::app(Symbol::P, {0, 1, 2}), TermRef::app(Symbol::P, perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  // Patterns over exactly {a, b}.
  auto two_var_patterns = [](int a, int b) {
    std::vector<TermRef> out;
    for (int code = 0; code < 8; ++code) {
      std::vector<int> args{code & 4 ? b : a, code & 2 ? b : a, code & 1 ? b : a};
      TermRef t = TermRef::app(Symbol::P, args);
      if (!t.is_var()) out.push_back(t);
    }
    return out;
  };
  for (const TermRef& l : two_var_patterns(0, 1))
    for (const TermRef& r : two_var_patterns(0, 2)) add_shape('b', l, r);

  SubstitutionReport report;
  report.shapes = static_cast<int>(shapes.size());
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    const System& original = shapes[s];
    System to_x = substitute_variable(original, 2, 0);
    System to_y = substitute_variable(original, 2, 1);
    bool pair_satisfiable = false;
    for (std::int64_t p : primes) {
      for (const AffineTerm& t : affine_terms(p, 3)) {
        AffineWitness w{{Symbol::P, t}};
        if (!affine_satisfies(to_x, w, p) || !affine_satisfies(to_y, w, p)) continue;
        pair_satisfiable = true;
        ++report.checked;
        if (!affine_satisfies(original, w, p)) {
          report.counterexamples.push_back({kinds[s], labels[s], p, t});
        }
      }
    }
    if (!pair_satisfiable) report.unsatisfiable_shapes.push_back(labels[s]);
  }
  return report;
}

nlohmann::json ring_verdict_to_json(const RingVerdict& v) {
  nlohmann::json j;
  j["status"] = v.satisfiable ? "satisfiable" : "unsatisfiable_all_finite_rings";
  if (v.satisfiable) {
    j["prime"] = v.prime;
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [sym, term] : v.witness) {
      w[std::string(1, symbol_char(sym))] = term.coeffs;
      w[std::string(1, symbol_char(sym)) + "_term"] = term.to_string();
    }
    j["witness"] = w;
  }
  nlohmann::json diag = nlohmann::json::array(), rhs = nlohmann::json::array();
  for (const BigInt& d : v.snf.diag) diag.push_back(big_to_string(d));
  for (const BigInt& c : v.snf.transformed_rhs) rhs.push_back(big_to_string(c));
  j["snf"] = {{"diag", diag}, {"transformed_rhs", rhs}};
  if (!v.satisfiable) {
    j["snf"]["zero_row_gcd"] = big_to_string(v.snf.zero_row_gcd);
    nlohmann::json ex = nlohmann::json::array();
    for (const PrimeExclusion& e : v.snf.excluded) ex.push_back({{"prime", big_to_string(e.prime)}, {"row", e.row}});
    j["snf"]["excluded_primes"] = ex;
  }
  return j;
}

}  // namespace lincond
