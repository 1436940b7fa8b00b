#ifndef HNLS_FFT_HPP
#define HNLS_FFT_HPP

#include <vector>

#include "hnls/types.hpp"

namespace hnls::fft {

// Unnormalized DFT (FFTW sign conventions): forward uses e^{-i 2 pi j m / N}.
void forward(std::vector<cplx>& data);
void backward(std::vector<cplx>& data);  // unnormalized inverse

// Wavenumbers 2 pi j / period in FFTW bin order (0..N/2-1, -N/2..-1).
std::vector<double> wavenumbers(std::size_t n, double period);

// Periodic spectral view of a GridFunction on [a, b] whose last sample
// duplicates the first (endpoints included): the transform acts on the
// leading n-1 samples.
struct PeriodicSpectrum {
    std::vector<cplx> modes;      // hat f(k_j) = h * DFT, continuous scaling
    std::vector<double> k;        // matching wavenumbers
    double a = 0.0, b = 1.0;
    std::size_t n_grid = 0;       // original sample count (with endpoint)

    static PeriodicSpectrum analyze(const GridFunction& f);
    GridFunction synthesize() const;  // back to samples, endpoint restored
};

}  // namespace hnls::fft

#endif
