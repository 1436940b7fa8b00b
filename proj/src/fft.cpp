#include "hnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace hnls::fft {

namespace {

std::mutex plan_mutex;

fftw_plan get_plan(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<cplx> probe(n);
    fftw_plan plan = fftw_plan_dft_1d(
        int(n), reinterpret_cast<fftw_complex*>(probe.data()),
        reinterpret_cast<fftw_complex*>(probe.data()), sign,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(key, plan);
    return plan;
}

void execute(std::vector<cplx>& data, int sign) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_plan plan = get_plan(data.size(), sign);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(data.data()),
                     reinterpret_cast<fftw_complex*>(data.data()));
}

}  // namespace

void forward(std::vector<cplx>& data) { execute(data, FFTW_FORWARD); }
void backward(std::vector<cplx>& data) { execute(data, FFTW_BACKWARD); }

std::vector<double> wavenumbers(std::size_t n, double period) {
    std::vector<double> k(n);
    const double dk = 2.0 * pi / period;
    for (std::size_t j = 0; j < n; ++j) {
        const long jj = 2 * long(j) < long(n) ? long(j) : long(j) - long(n);
        k[j] = dk * double(jj);
    }
    return k;
}

PeriodicSpectrum PeriodicSpectrum::analyze(const GridFunction& f) {
    f.validate("PeriodicSpectrum");
    PeriodicSpectrum s;
    s.a = f.a;
    s.b = f.b;
    s.n_grid = f.n();
    const std::size_t N = f.n() - 1;
    s.modes.assign(f.values.begin(), f.values.begin() + N);
    forward(s.modes);
    const double h = f.h();
    // e^{-i k a} phase so modes approximate integral f e^{-ikx} dx on [a,b]
    s.k = wavenumbers(N, f.b - f.a);
    for (std::size_t j = 0; j < N; ++j)
        s.modes[j] *= h * std::exp(cplx(0.0, -s.k[j] * f.a));
    return s;
}

GridFunction PeriodicSpectrum::synthesize() const {
    const std::size_t N = modes.size();
    std::vector<cplx> buf(N);
    const double h = (b - a) / double(N);
    for (std::size_t j = 0; j < N; ++j)
        buf[j] = modes[j] * std::exp(cplx(0.0, k[j] * a)) / (h * double(N));
    backward(buf);
    GridFunction g(a, b, n_grid, GridKind::Spatial);
    for (std::size_t j = 0; j < N; ++j) g.values[j] = buf[j];
    g.values[N] = buf[0];
    return g;
}

}  // namespace hnls::fft
