#include "ramanqc/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "ramanqc/error.hpp"

namespace ramanqc {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }
}  // namespace

Fft::Fft(std::size_t n) : buffer_(n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "Fft: zero length");
  std::lock_guard lock(planner_mutex());
  const int len = static_cast<int>(n);
  forward_plan_ = fftw_plan_dft_1d(len, as_fftw(buffer_.data()), as_fftw(buffer_.data()),
                                   FFTW_FORWARD, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_1d(len, as_fftw(buffer_.data()), as_fftw(buffer_.data()),
                                   FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

void Fft::forward(std::span<std::complex<double>> data) {
  if (data.size() != buffer_.size()) throw Error(ErrorKind::InvalidArgument, "Fft: size mismatch");
  std::copy(data.begin(), data.end(), buffer_.begin());
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  std::copy(buffer_.begin(), buffer_.end(), data.begin());
}

void Fft::inverse(std::span<std::complex<double>> data) {
  if (data.size() != buffer_.size()) throw Error(ErrorKind::InvalidArgument, "Fft: size mismatch");
  std::copy(data.begin(), data.end(), buffer_.begin());
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  const double scale = 1.0 / static_cast<double>(buffer_.size());
  std::transform(buffer_.begin(), buffer_.end(), data.begin(),
                 [scale](std::complex<double> v) { return v * scale; });
}

}  // namespace ramanqc
