// Exact dense linear algebra over a field (mpq_class or RatFunc).
// rref comes in a serial reference version and an OpenMP version; both use
// first-nonzero pivoting and per-row elimination, so they produce identical
// output and either can be used anywhere.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace walg {

enum class Exec { serial, parallel };

template <class F>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<F> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}
  F& at(int r, int c) { return a[(size_t)r * cols + c]; }
  const F& at(int r, int c) const { return a[(size_t)r * cols + c]; }
};

template <class F>
bool fz(const F& x) {
  return x == F(0);
}

// in-place reduced row echelon form; returns pivot column per pivot row
template <class F>
std::vector<int> rref_serial(Mat<F>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (!fz(m.at(i, c))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = c; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    F inv = F(1) / m.at(r, c);
    for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || fz(m.at(i, c))) continue;
      F f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::vector<int> rref_omp(Mat<F>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (!fz(m.at(i, c))) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = c; j < m.cols; ++j) std::swap(m.at(p, j), m.at(r, j));
    F inv = F(1) / m.at(r, c);
    for (int j = c; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * inv;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || fz(m.at(i, c))) continue;
      F f = m.at(i, c);
      for (int j = c; j < m.cols; ++j) m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class F>
std::vector<int> rref(Mat<F>& m, Exec ex = Exec::parallel) {
  return ex == Exec::serial ? rref_serial(m) : rref_omp(m);
}

template <class F>
int rank(Mat<F> m, Exec ex = Exec::parallel) {
  return (int)rref(m, ex).size();
}

// basis of the right null space, one vector per free column, in column order
template <class F>
std::vector<std::vector<F>> nullspace(Mat<F> m, Exec ex = Exec::parallel) {
  std::vector<int> piv = rref(m, ex);
  std::vector<bool> is_piv(m.cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<F>> basis;
  for (int c = 0; c < m.cols; ++c) {
    if (is_piv[c]) continue;
    std::vector<F> v(m.cols, F(0));
    v[c] = F(1);
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m.at((int)i, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

// one solution of A x = b, or nullopt if inconsistent
template <class F>
std::optional<std::vector<F>> solve(const Mat<F>& A, const std::vector<F>& b,
                                    Exec ex = Exec::parallel) {
  if ((int)b.size() != A.rows) throw std::invalid_argument("solve: size mismatch");
  Mat<F> m(A.rows, A.cols + 1);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) m.at(i, j) = A.at(i, j);
    m.at(i, A.cols) = b[i];
  }
  std::vector<int> piv = rref(m, ex);
  if (!piv.empty() && piv.back() == A.cols) return std::nullopt;
  std::vector<F> x(A.cols, F(0));
  for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = m.at((int)i, A.cols);
  return x;
}

}  // namespace walg
