#include "kickchain/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace kickchain {

namespace {
// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

struct Dft::Plans {
  fftw_complex* buffer = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    if (buffer) fftw_free(buffer);
  }
};

Dft::Dft(std::size_t n) : n_(n), plans_(std::make_unique<Plans>()) {
  if (n == 0) throw std::invalid_argument("DFT length must be positive");
  std::lock_guard lock(planner_mutex());
  plans_->buffer = fftw_alloc_complex(n);
  if (!plans_->buffer) throw std::bad_alloc();
  const int len = static_cast<int>(n);
  plans_->forward = fftw_plan_dft_1d(len, plans_->buffer, plans_->buffer, FFTW_FORWARD, FFTW_ESTIMATE);
  plans_->backward = fftw_plan_dft_1d(len, plans_->buffer, plans_->buffer, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!plans_->forward || !plans_->backward) throw std::runtime_error("FFTW failed to create a plan");
}

Dft::~Dft() = default;
Dft::Dft(Dft&&) noexcept = default;
Dft& Dft::operator=(Dft&&) noexcept = default;

namespace {
void run(fftw_plan plan, fftw_complex* buffer, std::span<std::complex<double>> data) {
  auto* raw = reinterpret_cast<std::complex<double>*>(buffer);
  std::copy(data.begin(), data.end(), raw);
  fftw_execute(plan);
  std::copy(raw, raw + data.size(), data.begin());
}
}  // namespace

void Dft::forward(std::span<std::complex<double>> data) {
  if (data.size() != n_) throw std::invalid_argument("DFT input length mismatch");
  run(plans_->forward, plans_->buffer, data);
}

void Dft::backward(std::span<std::complex<double>> data) {
  if (data.size() != n_) throw std::invalid_argument("DFT input length mismatch");
  run(plans_->backward, plans_->buffer, data);
}

}  // namespace kickchain
