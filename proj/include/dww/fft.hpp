#pragma once

#include <complex>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <fftw3.h>

namespace dww::detail {

// Cached FFTW plans, one pair per transform size. The FFTW planner is not
// thread-safe, so plan creation is serialized; execution goes through the
// new-array interface, which is safe to call concurrently on distinct
// buffers. Plans are created with FFTW_UNALIGNED so that plain std::vector
// storage can be passed to the execute calls.
class FftPlans {
public:
    static const FftPlans& get(int n) {
        static std::mutex mutex;
        static std::unordered_map<int, std::unique_ptr<FftPlans>> registry;
        std::lock_guard<std::mutex> lock(mutex);
        auto& slot = registry[n];
        if (!slot) slot.reset(new FftPlans(n));
        return *slot;
    }

    // Unnormalized real-to-halfcomplex DFT: out[k] = sum_j in[j] e^{-2 pi i k j / n},
    // k = 0..n/2. The input array is preserved.
    void forward(const double* in, std::complex<double>* out) const {
        fftw_execute_dft_r2c(r2c_, const_cast<double*>(in),
                             reinterpret_cast<fftw_complex*>(out));
    }

    // Unnormalized halfcomplex-to-real inverse. FFTW may overwrite the input
    // buffer, so callers must pass scratch storage.
    void backward(std::complex<double>* in, double* out) const {
        fftw_execute_dft_c2r(c2r_, reinterpret_cast<fftw_complex*>(in), out);
    }

    FftPlans(const FftPlans&) = delete;
    FftPlans& operator=(const FftPlans&) = delete;

    ~FftPlans() {
        if (r2c_) fftw_destroy_plan(r2c_);
        if (c2r_) fftw_destroy_plan(c2r_);
    }

private:
    explicit FftPlans(int n) {
        std::vector<double> real(static_cast<std::size_t>(n));
        std::vector<std::complex<double>> cplx(static_cast<std::size_t>(n / 2 + 1));
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        r2c_ = fftw_plan_dft_r2c_1d(n, real.data(),
                                    reinterpret_cast<fftw_complex*>(cplx.data()), flags);
        c2r_ = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(cplx.data()),
                                    real.data(), flags);
        if (!r2c_ || !c2r_) throw std::runtime_error("FftPlans: planner failed");
    }

    fftw_plan r2c_ = nullptr;
    fftw_plan c2r_ = nullptr;
};

}  // namespace dww::detail
