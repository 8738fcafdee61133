// Smith normal form of integer matrices with unimodular transforms.
#ifndef LINCOND_SMITH_H_
#define LINCOND_SMITH_H_

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lincond {

using BigInt = boost::multiprecision::cpp_int;
using BigMatrix = std::vector<std::vector<BigInt>>;

// U * A * V = D with U, V unimodular and D diagonal; the nonzero diagonal
// entries are positive and each divides the next.
struct SmithForm {
  BigMatrix u;
  BigMatrix d;
  BigMatrix v;
  int rank = 0;

  std::vector<BigInt> diagonal() const;
};

SmithForm smith_normal_form(const BigMatrix& a);

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b);
BigMatrix identity_matrix(int n);
// Determinant by fraction-free elimination (Bareiss).
BigInt determinant(BigMatrix m);

}  // namespace lincond

#endif  // LINCOND_SMITH_H_
