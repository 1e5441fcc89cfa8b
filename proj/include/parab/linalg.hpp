#ifndef PARAB_LINALG_HPP
#define PARAB_LINALG_HPP

#include <string>
#include <vector>

namespace parab {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
Vec axis_vector(int n, int i);
Vec scaled(const Vec& a, double s);
bool all_finite(const Vec& a);

// Symmetric n x n matrix, full row-major storage. Symmetry is exact by
// construction: every mutator writes both (i,j) and (j,i).
class SymMatrix {
 public:
  static SymMatrix zero(int n);
  static SymMatrix identity(int n);
  static SymMatrix diagonal(const Vec& d);
  // Validates entries[i*n+j] == entries[j*n+i] exactly; throws otherwise.
  static SymMatrix from_entries(int n, const Vec& entries);
  static SymMatrix rank_one(const Vec& e);  // e (x) e

  int n() const { return n_; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  void set(int i, int j, double v);

  double trace() const;
  double quad_form(const Vec& q) const;  // q^T X q
  void reset_zero();
  SymMatrix& add_scaled_identity(double c);
  SymMatrix& add_scaled_rank_one(double c, const Vec& e);
  SymMatrix& add_scaled(const SymMatrix& other, double c);
  bool finite() const;

  // Eigenvalues sorted descending (mu_1 >= ... >= mu_n).
  Vec eigenvalues_descending() const;

 private:
  SymMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}
  int n_;
  Vec a_;
};

}  // namespace parab

#endif
