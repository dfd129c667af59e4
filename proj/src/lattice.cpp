#include "lt/lattice.hpp"

#include <algorithm>

#include "lt/errors.hpp"

namespace lt {

namespace {

// Pivot choice: certified-exact valuation, minimal. Returns {-1,-1} if none.
std::pair<int, int> min_val_pivot(const Mat& m, int from_row, int from_col) {
  int bi = -1, bj = -1;
  long long best = 1LL << 40;
  for (int i = from_row; i < int(m.size()); ++i)
    for (int j = from_col; j < int(m[size_t(i)].size()); ++j) {
      const Scalar& s = m[size_t(i)][size_t(j)];
      if (s.is_zero_state()) continue;
      if (*s.valuation() < best) {
        best = *s.valuation();
        bi = i;
        bj = j;
      }
    }
  return {bi, bj};
}

}  // namespace

LatticeDesc LatticeDesc::from_rows(Mat m) {
  if (m.empty()) throw RankError("lattice needs at least one generator");
  LatticeDesc l;
  l.n = int(m[0].size());
  l.rows = std::move(m);
  for (const auto& r : l.rows)
    if (int(r.size()) != l.n) throw DomainError("ragged generator matrix");
  return l;
}

LatticeDesc LatticeDesc::shifted(int e) const {
  LatticeDesc l = *this;
  for (auto& r : l.rows)
    for (Scalar& s : r) s = s.shifted(e);
  return l;
}

Mat mat_mul(const Mat& a, const Mat& b) {
  size_t n = a.size(), k = b.size(), m = b[0].size();
  Mat c(n, std::vector<Scalar>(m));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) {
      Scalar acc = a[0][0].zero_like();
      for (size_t t = 0; t < k; ++t) acc += a[i][t] * b[t][j];
      c[i][j] = acc;
    }
  return c;
}

Mat mat_transpose(const Mat& a) {
  Mat t(a[0].size(), std::vector<Scalar>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
  return t;
}

Mat mat_inv(const Mat& a) {
  int n = int(a.size());
  Mat m = a;
  Mat inv(size_t(n), std::vector<Scalar>(size_t(n), a[0][0].zero_like()));
  Scalar one = a[0][0].one_like();
  for (int i = 0; i < n; ++i) inv[size_t(i)][size_t(i)] = one;
  std::vector<int> colperm;
  colperm.resize(size_t(n));
  for (int i = 0; i < n; ++i) colperm[size_t(i)] = i;

  for (int k = 0; k < n; ++k) {
    auto [pi, pj] = min_val_pivot(m, k, k);
    if (pi < 0) throw RankError("matrix inverse: no certified pivot");
    std::swap(m[size_t(pi)], m[size_t(k)]);
    std::swap(inv[size_t(pi)], inv[size_t(k)]);
    if (pj != k) {
      for (int i = 0; i < n; ++i)
        std::swap(m[size_t(i)][size_t(pj)], m[size_t(i)][size_t(k)]);
      std::swap(colperm[size_t(pj)], colperm[size_t(k)]);
    }
    Scalar piv = m[size_t(k)][size_t(k)];
    for (int j = 0; j < n; ++j) {
      m[size_t(k)][size_t(j)] = m[size_t(k)][size_t(j)] / piv;
      inv[size_t(k)][size_t(j)] = inv[size_t(k)][size_t(j)] / piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      Scalar f = m[size_t(i)][size_t(k)];
      if (f.is_exact_zero()) continue;
      for (int j = 0; j < n; ++j) {
        m[size_t(i)][size_t(j)] = m[size_t(i)][size_t(j)] - f * m[size_t(k)][size_t(j)];
        inv[size_t(i)][size_t(j)] = inv[size_t(i)][size_t(j)] - f * inv[size_t(k)][size_t(j)];
      }
    }
  }
  // column swaps of m are row swaps of the inverse
  Mat out;
  out.resize(size_t(n));
  for (int i = 0; i < n; ++i) out[size_t(colperm[size_t(i)])] = inv[size_t(i)];
  return out;
}

std::vector<int> snf_valuations(const LatticeDesc& lat) {
  Mat m = lat.rows;
  int n = lat.n;
  int r = int(m.size());
  std::vector<int> out;
  // Over the DVR Z_p the min-valuation pivot divides every remaining entry,
  // so one elimination sweep yields the Smith form.
  for (int k = 0; k < std::min(n, r); ++k) {
    auto [pi, pj] = min_val_pivot(m, k, k);
    if (pi < 0) break;
    std::swap(m[size_t(pi)], m[size_t(k)]);
    for (int i = 0; i < r; ++i)
      std::swap(m[size_t(i)][size_t(pj)], m[size_t(i)][size_t(k)]);
    Scalar piv = m[size_t(k)][size_t(k)];
    for (int i = k + 1; i < r; ++i) {
      Scalar f = m[size_t(i)][size_t(k)] / piv;
      if (f.is_exact_zero()) continue;
      for (int j = k; j < n; ++j)
        m[size_t(i)][size_t(j)] = m[size_t(i)][size_t(j)] - f * m[size_t(k)][size_t(j)];
    }
    for (int j = k + 1; j < n; ++j) {
      Scalar f = m[size_t(k)][size_t(j)] / piv;
      if (f.is_exact_zero()) continue;
      for (int i = k; i < r; ++i)
        m[size_t(i)][size_t(j)] = m[size_t(i)][size_t(j)] - f * m[size_t(i)][size_t(k)];
    }
    out.push_back(int(*piv.valuation()));
  }
  if (int(out.size()) < n) throw RankError("snf: rank not certified to precision");
  std::sort(out.begin(), out.end());
  return out;
}

LatticeDesc basis_of(const LatticeDesc& lat) {
  int n = lat.n;
  if (int(lat.rows.size()) == n) return lat;
  if (int(lat.rows.size()) < n) throw RankError("fewer generators than the rank");
  Mat m = lat.rows;
  int r = int(m.size());
  std::vector<bool> used_col(size_t(n), false);
  int k = 0;
  for (; k < n; ++k) {
    // min-valuation pivot among unused columns
    int bi = -1, bj = -1;
    long long best = 1LL << 40;
    for (int i = k; i < r; ++i)
      for (int j = 0; j < n; ++j) {
        if (used_col[size_t(j)]) continue;
        const Scalar& s = m[size_t(i)][size_t(j)];
        if (s.is_zero_state()) continue;
        if (*s.valuation() < best) {
          best = *s.valuation();
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;
    used_col[size_t(bj)] = true;
    std::swap(m[size_t(bi)], m[size_t(k)]);
    Scalar piv = m[size_t(k)][size_t(bj)];
    for (int i = k + 1; i < r; ++i) {
      Scalar f = m[size_t(i)][size_t(bj)] / piv;
      if (f.is_exact_zero()) continue;
      for (int j = 0; j < n; ++j)
        m[size_t(i)][size_t(j)] = m[size_t(i)][size_t(j)] - f * m[size_t(k)][size_t(j)];
    }
  }
  if (k < n) throw RankError("basis_of: generators are rank-deficient to precision");
  m.resize(size_t(n));
  return LatticeDesc::from_rows(std::move(m));
}

LatticeDesc dual_lattice(const LatticeDesc& lat, const Mat& gram) {
  LatticeDesc b = basis_of(lat);
  Mat m = mat_mul(b.rows, gram);
  Mat minv = mat_inv(m);
  return LatticeDesc::from_rows(mat_transpose(minv));
}

Cong lattice_contains(const LatticeDesc& outer, const LatticeDesc& inner) {
  LatticeDesc bo = basis_of(outer);
  Mat binv = mat_inv(bo.rows);
  Mat coords = mat_mul(inner.rows, binv);
  Cong out = Cong::kYes;
  for (const auto& row : coords)
    for (const Scalar& s : row) {
      Cong c = s.zero_mod(0);  // v_p >= 0
      if (c == Cong::kNo) return Cong::kNo;
      if (c == Cong::kUnknown) out = Cong::kUnknown;
    }
  return out;
}

Cong lattice_equal(const LatticeDesc& a, const LatticeDesc& b) {
  Cong x = lattice_contains(a, b);
  if (x == Cong::kNo) return Cong::kNo;
  Cong y = lattice_contains(b, a);
  if (y == Cong::kNo) return Cong::kNo;
  return (x == Cong::kYes && y == Cong::kYes) ? Cong::kYes : Cong::kUnknown;
}

}  // namespace lt
