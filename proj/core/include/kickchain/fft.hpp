#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>

namespace kickchain {

/// Unnormalized complex DFT of a fixed length, backed by FFTW.
///
/// forward:  X[j] = sum_s x[s] e^{-2 pi i j s / n}
/// backward: x[s] = sum_j X[j] e^{+2 pi i j s / n}
///
/// Instances own their plans and scratch buffer. A single instance must not be
/// used from two threads at once; separate instances are independent.
class Dft {
 public:
  explicit Dft(std::size_t n);
  ~Dft();
  Dft(Dft&&) noexcept;
  Dft& operator=(Dft&&) noexcept;
  Dft(const Dft&) = delete;
  Dft& operator=(const Dft&) = delete;

  std::size_t size() const noexcept { return n_; }

  void forward(std::span<std::complex<double>> data);
  void backward(std::span<std::complex<double>> data);

 private:
  struct Plans;
  std::size_t n_ = 0;
  std::unique_ptr<Plans> plans_;
};

}  // namespace kickchain
