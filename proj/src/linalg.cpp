#include "parab/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parab {

double dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec axis_vector(int n, int i) {
  Vec e(static_cast<std::size_t>(n), 0.0);
  e[static_cast<std::size_t>(i)] = 1.0;
  return e;
}

Vec scaled(const Vec& a, double s) {
  Vec out(a);
  for (double& x : out) x *= s;
  return out;
}

bool all_finite(const Vec& a) {
  for (double x : a)
    if (!std::isfinite(x)) return false;
  return true;
}

SymMatrix SymMatrix::zero(int n) {
  if (n < 1) throw std::invalid_argument("SymMatrix: n must be positive");
  return SymMatrix(n);
}

SymMatrix SymMatrix::identity(int n) {
  SymMatrix m = zero(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0);
  return m;
}

SymMatrix SymMatrix::diagonal(const Vec& d) {
  SymMatrix m = zero(static_cast<int>(d.size()));
  for (int i = 0; i < m.n_; ++i) m.set(i, i, d[static_cast<std::size_t>(i)]);
  return m;
}

SymMatrix SymMatrix::from_entries(int n, const Vec& entries) {
  if (entries.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("SymMatrix: entry count != n*n");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (entries[static_cast<std::size_t>(i) * n + j] != entries[static_cast<std::size_t>(j) * n + i])
        throw std::invalid_argument("SymMatrix: entries not symmetric at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
  SymMatrix m = zero(n);
  m.a_ = entries;
  return m;
}

SymMatrix SymMatrix::rank_one(const Vec& e) {
  SymMatrix m = zero(static_cast<int>(e.size()));
  m.add_scaled_rank_one(1.0, e);
  return m;
}

void SymMatrix::set(int i, int j, double v) {
  a_[static_cast<std::size_t>(i) * n_ + j] = v;
  a_[static_cast<std::size_t>(j) * n_ + i] = v;
}

double SymMatrix::trace() const {
  double s = 0.0;
  for (int i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

double SymMatrix::quad_form(const Vec& q) const {
  if (q.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("quad_form: size mismatch");
  double s = 0.0;
  for (int i = 0; i < n_; ++i) {
    double row = 0.0;
    for (int j = 0; j < n_; ++j) row += (*this)(i, j) * q[static_cast<std::size_t>(j)];
    s += q[static_cast<std::size_t>(i)] * row;
  }
  return s;
}

void SymMatrix::reset_zero() { std::fill(a_.begin(), a_.end(), 0.0); }

SymMatrix& SymMatrix::add_scaled_identity(double c) {
  for (int i = 0; i < n_; ++i) set(i, i, (*this)(i, i) + c);
  return *this;
}

SymMatrix& SymMatrix::add_scaled_rank_one(double c, const Vec& e) {
  if (e.size() != static_cast<std::size_t>(n_)) throw std::invalid_argument("rank_one: size mismatch");
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j)
      set(i, j, (*this)(i, j) + c * e[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(j)]);
  return *this;
}

SymMatrix& SymMatrix::add_scaled(const SymMatrix& other, double c) {
  if (other.n_ != n_) throw std::invalid_argument("add_scaled: size mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += c * other.a_[i];
  return *this;
}

bool SymMatrix::finite() const { return all_finite(a_); }

Vec SymMatrix::eigenvalues_descending() const {
  Eigen::MatrixXd m(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) m(i, j) = (*this)(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("SymMatrix: eigensolver failed");
  Vec mu(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) mu[static_cast<std::size_t>(i)] = solver.eigenvalues()(n_ - 1 - i);
  return mu;
}

}  // namespace parab
