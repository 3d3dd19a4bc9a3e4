#include "fft.hpp"

#include <mutex>

#include <fftw3.h>

namespace tracelab::detail {

namespace {
std::mutex plan_mutex;
}

void dft(std::vector<cplx>& in, std::vector<cplx>& out, int sign) {
  int n = static_cast<int>(in.size());
  out.resize(in.size());
  if (n == 0) return;
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                            reinterpret_cast<fftw_complex*>(out.data()),
                            sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(plan_mutex);
  fftw_destroy_plan(plan);
}

}  // namespace tracelab::detail
