#include "mrd/lattice.hpp"

#include <algorithm>

#include "mrd/error.hpp"

namespace mrd {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out))
    throw Error(ErrorCode::InvalidArgument, "integer overflow in basis update");
  return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out))
    throw Error(ErrorCode::InvalidArgument, "integer overflow in basis update");
  return out;
}

using BigMatrix = std::vector<std::vector<mpz_class>>;

BigMatrix to_big(const IntMatrix& m) {
  BigMatrix out(static_cast<std::size_t>(m.rows()), std::vector<mpz_class>(static_cast<std::size_t>(m.cols())));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = static_cast<long>(m(i, j));
  return out;
}

}  // namespace

void LatticeInstance::validate() const {
  if (rank < 1) throw Error(ErrorCode::InvalidArgument, "lattice rank must be >= 1");
  if (static_cast<std::size_t>(generators.cols()) != rank)
    throw Error(ErrorCode::InvalidArgument, "generator width differs from the rank");
  if (lengths.size() != rank) throw Error(ErrorCode::InvalidArgument, "need one length per basis vector");
  for (const auto& l : lengths)
    if (sgn(l) <= 0) throw Error(ErrorCode::InvalidArgument, "lengths must be strictly positive");
}

Rational LatticeInstance::functional(const IntVector& v) const {
  Rational sum = 0;
  for (std::size_t i = 0; i < rank; ++i) sum += lengths[i] * static_cast<long>(v(static_cast<Eigen::Index>(i)));
  return sum;
}

bool spans_lattice(const IntMatrix& m) {
  BigMatrix a = to_big(m);
  const std::size_t rows = a.size();
  const std::size_t cols = static_cast<std::size_t>(m.cols());
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    // Euclid on column c among rows >= pivot_row.
    while (true) {
      std::size_t best = rows;
      for (std::size_t r = pivot_row; r < rows; ++r)
        if (a[r][c] != 0 && (best == rows || abs(a[r][c]) < abs(a[best][c]))) best = r;
      if (best == rows) return false;  // rank deficient
      std::swap(a[pivot_row], a[best]);
      bool done = true;
      for (std::size_t r = pivot_row + 1; r < rows; ++r) {
        if (a[r][c] == 0) continue;
        mpz_class q = a[r][c] / a[pivot_row][c];
        for (std::size_t k = c; k < cols; ++k) a[r][k] -= q * a[pivot_row][k];
        if (a[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (abs(a[pivot_row][c]) != 1) return false;
    ++pivot_row;
  }
  return true;
}

mpz_class determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
  BigMatrix a = to_big(m);
  const std::size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

PositiveBasis positive_basis(const LatticeInstance& inst, std::size_t step_budget) {
  inst.validate();
  const auto l = static_cast<Eigen::Index>(inst.rank);
  const Eigen::Index r = inst.generators.rows();
  for (Eigen::Index j = 0; j < r; ++j)
    if (sgn(inst.functional(inst.generators.row(j).transpose())) <= 0)
      throw Error(ErrorCode::NonPositiveGenerator,
                  "generator " + std::to_string(j) + " has nonpositive length");
  if (!spans_lattice(inst.generators))
    throw Error(ErrorCode::NotSpanning, "generators do not span the lattice");

  IntMatrix basis = IntMatrix::Identity(l, l);
  IntMatrix coeff = inst.generators;
  std::vector<Rational> lens = inst.lengths;
  std::size_t steps = 0;

  // a_i <- a_i - a_m rewrites every generator with column m += column i.
  auto subtract = [&](Eigen::Index i, Eigen::Index m) {
    if (++steps > step_budget)
      throw Error(ErrorCode::StepBudgetExceeded, "positive basis exceeded the step budget");
    for (Eigen::Index k = 0; k < l; ++k) basis(i, k) = checked_sub(basis(i, k), basis(m, k));
    for (Eigen::Index k = 0; k < r; ++k) coeff(k, m) = checked_add(coeff(k, m), coeff(k, i));
    lens[i] -= lens[m];
  };

  for (Eigen::Index j = 0; j < r; ++j) {
    while (true) {
      std::int64_t t = 0;
      Eigen::Index m = -1;
      for (Eigen::Index k = 0; k < l; ++k)
        if (coeff(j, k) < 0 && -coeff(j, k) > t) {
          t = -coeff(j, k);
          m = k;
        }
      if (m < 0) break;
      // Longest basis vector with a positive coefficient that is longer than a_m.
      Eigen::Index longer = -1, first_positive = -1;
      for (Eigen::Index k = 0; k < l; ++k) {
        if (coeff(j, k) <= 0) continue;
        if (first_positive < 0) first_positive = k;
        if (lens[k] == lens[m])
          throw Error(ErrorCode::DegenerateLengths, "exact length tie between basis vectors " +
                                                        std::to_string(k) + " and " + std::to_string(m));
        if (lens[k] > lens[m] && (longer < 0 || lens[k] > lens[longer])) longer = k;
      }
      if (first_positive < 0)
        throw Error(ErrorCode::NonPositiveGenerator, "generator " + std::to_string(j) + " lost its positive part");
      if (longer >= 0)
        subtract(longer, m);
      else
        subtract(m, first_positive);
    }
  }
  return {basis, coeff, steps};
}

std::vector<PositiveBasis> positive_basis_family(const std::vector<LatticeInstance>& instances,
                                                 std::size_t step_budget) {
  std::vector<PositiveBasis> out;
  for (const auto& inst : instances) {
    auto b = positive_basis(inst, step_budget);
    bool seen = std::any_of(out.begin(), out.end(),
                            [&](const PositiveBasis& o) { return o.change_of_basis == b.change_of_basis; });
    if (!seen) out.push_back(std::move(b));
  }
  return out;
}

bool is_positive_basis(const LatticeInstance& inst, const IntMatrix& u, const IntMatrix& expr) {
  const auto l = static_cast<Eigen::Index>(inst.rank);
  if (u.rows() != l || u.cols() != l || expr.cols() != l || expr.rows() != inst.generators.rows()) return false;
  if (abs(determinant(u)) != 1) return false;
  if ((expr.array() < 0).any()) return false;
  for (Eigen::Index i = 0; i < l; ++i)
    if (sgn(inst.functional(u.row(i).transpose())) <= 0) return false;
  for (Eigen::Index j = 0; j < expr.rows(); ++j)
    for (Eigen::Index k = 0; k < l; ++k) {
      mpz_class sum = 0;
      for (Eigen::Index i = 0; i < l; ++i) sum += mpz_class(static_cast<long>(expr(j, i))) * static_cast<long>(u(i, k));
      if (sum != static_cast<long>(inst.generators(j, k))) return false;
    }
  return true;
}

std::optional<IntMatrix> rank2_witness(const LatticeInstance& inst, std::int64_t bound) {
  inst.validate();
  if (inst.rank != 2) throw Error(ErrorCode::InvalidArgument, "rank2_witness needs rank 2");
  const Eigen::Index r = inst.generators.rows();
  for (std::int64_t shell = 1; shell <= bound; ++shell) {
    for (std::int64_t a = -shell; a <= shell; ++a)
      for (std::int64_t b = -shell; b <= shell; ++b)
        for (std::int64_t c = -shell; c <= shell; ++c)
          for (std::int64_t d = -shell; d <= shell; ++d) {
            if (std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)}) != shell) continue;
            std::int64_t det = a * d - b * c;
            if (det != 1 && det != -1) continue;
            // s = (x, y) = m1 (a, b) + m2 (c, d)  =>  m = s * U^{-1}.
            bool ok = true;
            for (Eigen::Index j = 0; j < r && ok; ++j) {
              std::int64_t x = inst.generators(j, 0), y = inst.generators(j, 1);
              std::int64_t m1 = (x * d - y * c) * det, m2 = (-x * b + y * a) * det;
              ok = m1 >= 0 && m2 >= 0;
            }
            if (!ok) continue;
            IntMatrix u(2, 2);
            u << a, b, c, d;
            if (sgn(inst.functional(u.row(0).transpose())) <= 0 || sgn(inst.functional(u.row(1).transpose())) <= 0)
              continue;
            return u;
          }
  }
  return std::nullopt;
}

}  // namespace mrd
