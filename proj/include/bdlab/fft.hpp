#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bdlab::detail {

// Iterative radix-2 Cooley-Tukey on complex doubles.
inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const double pi = 3.14159265358979323846;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = 2.0 * pi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
        const std::complex<double> wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse) {
        const double inv = 1.0 / static_cast<double>(n);
        for (auto& z : a) z *= inv;
    }
}

// Full linear convolution, out[k] = sum_j a[j] b[k-j], length |a|+|b|-1.
inline std::vector<double> convolve_direct(const std::vector<double>& a,
                                           const std::vector<double>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double aj = a[j];
        if (aj == 0.0) continue;
        for (std::size_t k = 0; k < b.size(); ++k) out[j + k] += aj * b[k];
    }
    return out;
}

inline std::vector<double> convolve_fft(const std::vector<double>& a,
                                        const std::vector<double>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t need = a.size() + b.size() - 1;
    std::size_t n = 1;
    while (n < need) n <<= 1;
    std::vector<std::complex<double>> fa(n), fb(n);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i];
    fft_inplace(fa, false);
    fft_inplace(fb, false);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    fft_inplace(fa, true);
    std::vector<double> out(need);
    for (std::size_t i = 0; i < need; ++i) out[i] = fa[i].real();
    return out;
}

// Cost switch between the two routes; both compute the same sum.
inline std::vector<double> convolve(const std::vector<double>& a,
                                    const std::vector<double>& b) {
    const double direct_cost = static_cast<double>(a.size()) * static_cast<double>(b.size());
    if (direct_cost < 4.0e6) return convolve_direct(a, b);
    return convolve_fft(a, b);
}

// Reusable plan for repeated convolutions against a fixed kernel row.
class ConvolutionPlan {
  public:
    ConvolutionPlan(std::vector<double> kernel_row, std::size_t signal_len)
        : row_(std::move(kernel_row)), signal_len_(signal_len) {
        const std::size_t need = row_.size() + signal_len_ - 1;
        direct_ = static_cast<double>(row_.size()) * static_cast<double>(signal_len_) < 4.0e6;
        if (!direct_) {
            nfft_ = 1;
            while (nfft_ < need) nfft_ <<= 1;
            row_fft_.assign(nfft_, {0.0, 0.0});
            for (std::size_t i = 0; i < row_.size(); ++i) row_fft_[i] = row_[i];
            fft_inplace(row_fft_, false);
        }
    }

    std::size_t signal_length() const { return signal_len_; }

    std::vector<double> apply(const std::vector<double>& signal) const {
        if (direct_) return convolve_direct(signal, row_);
        std::vector<std::complex<double>> fa(nfft_, {0.0, 0.0});
        for (std::size_t i = 0; i < signal.size(); ++i) fa[i] = signal[i];
        fft_inplace(fa, false);
        for (std::size_t i = 0; i < nfft_; ++i) fa[i] *= row_fft_[i];
        fft_inplace(fa, true);
        std::vector<double> out(signal.size() + row_.size() - 1);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = fa[i].real();
        return out;
    }

  private:
    std::vector<double> row_;
    std::size_t signal_len_ = 0;
    bool direct_ = true;
    std::size_t nfft_ = 0;
    std::vector<std::complex<double>> row_fft_;
};

}  // namespace bdlab::detail
