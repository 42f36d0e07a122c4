#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ramanqc {

// In-place complex FFT of fixed length backed by FFTW. Plans are created
// under a process-wide lock, so instances may be built from any thread;
// a single instance must not be shared between threads.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  std::size_t size() const { return buffer_.size(); }

  // Unnormalized forward transform, exp(-i k x) sign convention.
  void forward(std::span<std::complex<double>> data);
  // Inverse transform including the 1/n normalization.
  void inverse(std::span<std::complex<double>> data);

 private:
  std::vector<std::complex<double>> buffer_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

}  // namespace ramanqc
