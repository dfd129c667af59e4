#pragma once

#include <vector>

#include "lt/scalar.hpp"

namespace lt {

using Mat = std::vector<std::vector<Scalar>>;

// A finitely generated Z_p-lattice inside Q_p^n, given by generator rows in a
// fixed frame. Entries may carry negative valuations (global denominators are
// absorbed into the scalars).
struct LatticeDesc {
  int n = 0;
  Mat rows;

  static LatticeDesc from_rows(Mat m);
  // scale every generator by p^e
  LatticeDesc shifted(int e) const;
};

Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_transpose(const Mat& a);
// Gauss-Jordan with min-valuation pivoting; throws RankError when no pivot of
// certified valuation exists.
Mat mat_inv(const Mat& a);

// Elementary-divisor valuations over the DVR Z_p, ascending. Over a local
// ring the min-valuation pivot divides every remaining entry, so a single
// sweep produces the Smith form.
std::vector<int> snf_valuations(const LatticeDesc& lat);

// Reduce m >= n generators to an n-row basis (row echelon over Z_p).
LatticeDesc basis_of(const LatticeDesc& lat);

// {y : pairing(x, y) in Z_p for all x in lat} for the bilinear form with
// Gram matrix `gram` on the frame.
LatticeDesc dual_lattice(const LatticeDesc& lat, const Mat& gram);

// Certified containment / equality via integrality of change-of-basis
// coordinates.
Cong lattice_contains(const LatticeDesc& outer, const LatticeDesc& inner);
Cong lattice_equal(const LatticeDesc& a, const LatticeDesc& b);

}  // namespace lt
