#include "radnls/spectral.hpp"

#include "radnls/errors.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

namespace radnls::spectral {

namespace {

struct FftwBuffer {
  double* data = nullptr;
  explicit FftwBuffer(std::size_t n) : data(fftw_alloc_real(n)) {
    if (data == nullptr) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
};

enum class Kind { sine, cosine };

// Planning is not thread-safe in FFTW; execution with the new-array interface is.
class PlanCache {
public:
  fftw_plan get(Kind kind, int size) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(kind, size);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    FftwBuffer a(static_cast<std::size_t>(size));
    FftwBuffer b(static_cast<std::size_t>(size));
    const fftw_r2r_kind k = kind == Kind::sine ? FFTW_RODFT00 : FFTW_REDFT00;
    fftw_plan plan = fftw_plan_r2r_1d(size, a.data, b.data, k, FFTW_ESTIMATE);
    if (plan == nullptr) throw Error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

private:
  std::mutex mutex_;
  std::map<std::pair<Kind, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw ConfigError("transform input and output lengths differ");
  if (a < 3) throw ConfigError("transform length must be at least 3");
}

} // namespace

void sine_sum(std::span<const double> in, std::span<double> out) {
  check_sizes(in.size(), out.size());
  const std::size_t n = in.size();
  const std::size_t len = n - 1;
  FftwBuffer x(len), y(len);
  for (std::size_t m = 1; m < n; ++m) x.data[m - 1] = in[m];
  fftw_execute_r2r(cache().get(Kind::sine, static_cast<int>(len)), x.data, y.data);
  out[0] = 0.0;
  for (std::size_t j = 1; j < n; ++j) out[j] = 0.5 * y.data[j - 1];
}

void cosine_sum(std::span<const double> in, std::span<double> out) {
  check_sizes(in.size(), out.size());
  const std::size_t n = in.size();
  const std::size_t len = n + 1;
  FftwBuffer x(len), y(len);
  x.data[0] = 0.0;
  for (std::size_t j = 1; j < n; ++j) x.data[j] = in[j];
  x.data[n] = 0.0;
  fftw_execute_r2r(cache().get(Kind::cosine, static_cast<int>(len)), x.data, y.data);
  for (std::size_t m = 0; m < n; ++m) out[m] = 0.5 * y.data[m];
}

namespace {

template <class Op>
void complex_apply(std::span<const cplx> in, std::span<cplx> out, Op op) {
  check_sizes(in.size(), out.size());
  const std::size_t n = in.size();
  std::vector<double> re(n), im(n), tre(n), tim(n);
  for (std::size_t j = 0; j < n; ++j) {
    re[j] = in[j].real();
    im[j] = in[j].imag();
  }
  op(std::span<const double>(re), std::span<double>(tre));
  op(std::span<const double>(im), std::span<double>(tim));
  for (std::size_t j = 0; j < n; ++j) out[j] = cplx(tre[j], tim[j]);
}

} // namespace

void sine_sum(std::span<const cplx> in, std::span<cplx> out) {
  complex_apply(in, out, [](std::span<const double> a, std::span<double> b) { sine_sum(a, b); });
}

void cosine_sum(std::span<const cplx> in, std::span<cplx> out) {
  complex_apply(in, out, [](std::span<const double> a, std::span<double> b) { cosine_sum(a, b); });
}

} // namespace radnls::spectral
