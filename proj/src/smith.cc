#include "lincond/smith.h"

#include <stdexcept>
#include <utility>

namespace lincond {
namespace {

using boost::multiprecision::abs;

void swap_rows(BigMatrix& m, int a, int b) { std::swap(m[a], m[b]); }

void swap_cols(BigMatrix& m, int a, int b) {
  for (auto& row : m) std::swap(row[a], row[b]);
}

// row[dst] += k * row[src]
void add_row(BigMatrix& m, int dst, int src, const BigInt& k) {
  for (std::size_t j = 0; j < m[dst].size(); ++j) m[dst][j] += k * m[src][j];
}

void add_col(BigMatrix& m, int dst, int src, const BigInt& k) {
  for (auto& row : m) row[dst] += k * row[src];
}

}  // namespace

std::vector<BigInt> SmithForm::diagonal() const {
  std::vector<BigInt> out;
  for (int i = 0; i < rank; ++i) out.push_back(d[i][i]);
  return out;
}

BigMatrix identity_matrix(int n) {
  BigMatrix m(n, std::vector<BigInt>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b) {
  if (a.empty()) return {};
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  if (a[0].size() != k) throw std::invalid_argument("matrix shapes do not match");
  BigMatrix c(n, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      if (a[i][l] != 0)
        for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

BigInt determinant(BigMatrix m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

SmithForm smith_normal_form(const BigMatrix& a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  SmithForm f{identity_matrix(rows), a, identity_matrix(cols), 0};
  BigMatrix& d = f.d;

  for (int t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    int pr = -1, pc = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (d[i][j] != 0 && (pr < 0 || abs(d[i][j]) < abs(d[pr][pc]))) pr = i, pc = j;
    if (pr < 0) break;
    swap_rows(d, t, pr);
    swap_rows(f.u, t, pr);
    swap_cols(d, t, pc);
    swap_cols(f.v, t, pc);

    for (;;) {
      bool clean = true;
      for (int i = t + 1; i < rows; ++i) {
        if (d[i][t] == 0) continue;
        BigInt q = d[i][t] / d[t][t];
        add_row(d, i, t, -q);
        add_row(f.u, i, t, -q);
        if (d[i][t] != 0) {
          swap_rows(d, t, i);
          swap_rows(f.u, t, i);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        if (d[t][j] == 0) continue;
        BigInt q = d[t][j] / d[t][t];
        add_col(d, j, t, -q);
        add_col(f.v, j, t, -q);
        if (d[t][j] != 0) {
          swap_cols(d, t, j);
          swap_cols(f.v, t, j);
          clean = false;
        }
      }
      if (!clean) continue;
      // The pivot must divide the whole trailing block.
      int bad = -1;
      for (int i = t + 1; i < rows && bad < 0; ++i)
        for (int j = t + 1; j < cols; ++j)
          if (d[i][j] % d[t][t] != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      add_row(d, t, bad, 1);
      add_row(f.u, t, bad, 1);
    }
    if (d[t][t] < 0) {
      for (auto& x : d[t]) x = -x;
      for (auto& x : f.u[t]) x = -x;
    }
    f.rank = t + 1;
  }
  return f;
}

}  // namespace lincond
