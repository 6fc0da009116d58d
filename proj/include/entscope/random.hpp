#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace entscope {

/// splitmix64 step; used to derive independent, reproducible substreams
/// from (seed, partition index, restart index) style tuples.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return mix_seed(mix_seed(a) ^ b);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b,
                              std::uint64_t c) {
  return mix_seed(mix_seed(a, b) ^ c);
}

/// Standard complex Gaussian vector (mean 0, unit variance per component).
inline Eigen::VectorXcd gaussian_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v[i] = std::complex<double>(re, im);
  }
  return v;
}

inline Eigen::MatrixXcd gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                                        std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(i, j) = std::complex<double>(re, im);
    }
  }
  return m;
}

/// Haar-distributed unit vector.
inline Eigen::VectorXcd random_unit_vector(Eigen::Index n,
                                           std::mt19937_64& rng) {
  Eigen::VectorXcd v = gaussian_vector(n, rng);
  double nrm = v.norm();
  while (nrm == 0.0) {
    v = gaussian_vector(n, rng);
    nrm = v.norm();
  }
  return v / nrm;
}

/// Haar-distributed unitary: QR of a Ginibre matrix with the R-diagonal
/// phase fix.
inline Eigen::MatrixXcd haar_unitary(Eigen::Index n, std::mt19937_64& rng) {
  Eigen::MatrixXcd g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const std::complex<double> d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : 1.0;
  }
  return q;
}

/// rows x cols matrix with orthonormal columns (rows >= cols), Haar-like.
inline Eigen::MatrixXcd haar_isometry(Eigen::Index rows, Eigen::Index cols,
                                      std::mt19937_64& rng) {
  Eigen::MatrixXcd g = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q =
      qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < cols; ++j) {
    const std::complex<double> d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0) ? d / a : 1.0;
  }
  return q;
}

}  // namespace entscope
