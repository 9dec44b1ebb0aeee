#include "chainent/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace chainent {

namespace {

// FFTW planning is not thread-safe; execution on fresh arrays is.
std::mutex& plan_mutex()
{
    static std::mutex m;
    return m;
}

fftw_plan dct1_plan(int n)
{
    static std::map<int, fftw_plan> plans;
    std::lock_guard lock(plan_mutex());
    auto it = plans.find(n);
    if (it != plans.end()) return it->second;
    std::vector<double> in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
    fftw_plan p = fftw_plan_r2r_1d(n, in.data(), out.data(), FFTW_REDFT00,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::runtime_error("fftw: cannot plan DCT-I of length " + std::to_string(n));
    plans.emplace(n, p);
    return p;
}

// out_j = x_0 + (-1)^j x_{n-1} + 2 sum_{i=1}^{n-2} x_i cos(pi i j / (n-1))
void dct1(std::vector<double>& in, std::vector<double>& out)
{
    fftw_plan p = dct1_plan(static_cast<int>(in.size()));
    fftw_execute_r2r(p, in.data(), out.data());
}

void check_modes(std::span<const double> a, int L)
{
    if (static_cast<int>(a.size()) != L / 2 + 1)
        throw std::invalid_argument("mode array must have L/2 + 1 entries");
}

}  // namespace

std::vector<double> cosine_table(int L)
{
    std::vector<double> c(static_cast<std::size_t>(L));
    for (int j = 0; j < L; ++j) c[j] = std::cos(2.0 * std::numbers::pi * j / L);
    return c;
}

void mode_to_lattice_direct(std::span<const double> a, int L, std::span<double> out,
                            std::span<const double> table)
{
    check_modes(a, L);
    const int N = L / 2 + 1;
    std::vector<double> owned;
    if (table.empty()) table = owned = cosine_table(L);
    for (std::size_t l = 0; l < out.size(); ++l) {
        double acc = a[0] + ((l % 2 == 0) ? a[N - 1] : -a[N - 1]);
        long long idx = 0;
        const long long step = static_cast<long long>(l % static_cast<std::size_t>(L));
        for (int m = 1; m < N - 1; ++m) {
            idx += step;
            if (idx >= L) idx -= L;
            acc += 2.0 * a[m] * table[static_cast<std::size_t>(idx)];
        }
        out[l] = acc;
    }
}

void mode_to_lattice_fft(std::span<const double> a, int L, std::span<double> out)
{
    check_modes(a, L);
    const int N = L / 2 + 1;
    std::vector<double> in(a.begin(), a.end()), res(static_cast<std::size_t>(N));
    dct1(in, res);
    for (std::size_t l = 0; l < out.size(); ++l) {
        // The transform is L-periodic and even in l.
        std::size_t r = l % static_cast<std::size_t>(L);
        if (r >= static_cast<std::size_t>(N)) r = static_cast<std::size_t>(L) - r;
        out[l] = res[r];
    }
}

void mode_to_lattice(std::span<const double> a, int L, std::span<double> out,
                     std::span<const double> table)
{
    if (L >= kFftThreshold)
        mode_to_lattice_fft(a, L, out);
    else
        mode_to_lattice_direct(a, L, out, table);
}

void lattice_to_mode_direct(std::span<const double> d, int L, std::span<double> out,
                            std::span<const double> table)
{
    check_modes(out, L);
    std::vector<double> owned;
    if (table.empty()) table = owned = cosine_table(L);
    for (std::size_t m = 0; m < out.size(); ++m) {
        double acc = 0.0;
        long long idx = 0;
        for (std::size_t l = 0; l < d.size(); ++l) {
            acc += d[l] * table[static_cast<std::size_t>(idx)];
            idx += static_cast<long long>(m);
            if (idx >= L) idx -= L;
        }
        out[m] = acc;
    }
}

void lattice_to_mode_fft(std::span<const double> d, int L, std::span<double> out)
{
    check_modes(out, L);
    const int N = L / 2 + 1;
    if (static_cast<int>(d.size()) > N - 1) {
        lattice_to_mode_direct(d, L, out);
        return;
    }
    std::vector<double> in(static_cast<std::size_t>(N), 0.0), res(static_cast<std::size_t>(N));
    if (!d.empty()) in[0] = d[0];
    for (std::size_t l = 1; l < d.size(); ++l) in[l] = 0.5 * d[l];
    dct1(in, res);
    std::copy(res.begin(), res.end(), out.begin());
}

void lattice_to_mode(std::span<const double> d, int L, std::span<double> out,
                     std::span<const double> table)
{
    if (L >= kFftThreshold)
        lattice_to_mode_fft(d, L, out);
    else
        lattice_to_mode_direct(d, L, out, table);
}

}  // namespace chainent
