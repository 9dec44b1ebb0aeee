#pragma once

#include <span>
#include <vector>

namespace chainent {

// Cosine sums between the reduced mode grid m = 0..N-1 (N = L/2 + 1,
// k_m = 2 pi m / L) and lattice separations l.
//
// mode_to_lattice: out[l] = sum_m 2 delta_bar_m a_m cos(k_m l)
// lattice_to_mode: out[m] = sum_l d_l cos(k_m l)
//
// The weight 2 delta_bar_m folds the +-k pairs of the full Brillouin zone onto
// the reduced grid, so mode_to_lattice(a)[l] / L equals the full-zone average
// (1/L) sum_k a(k) e^{ikl} for even a.

inline constexpr int kFftThreshold = 1 << 16;

/// `table` may be empty or a precomputed cosine_table(L).
void mode_to_lattice_direct(std::span<const double> a, int L, std::span<double> out,
                            std::span<const double> table = {});
void mode_to_lattice_fft(std::span<const double> a, int L, std::span<double> out);
/// Direct summation below kFftThreshold, FFT (DCT-I) above.
void mode_to_lattice(std::span<const double> a, int L, std::span<double> out,
                     std::span<const double> table = {});

void lattice_to_mode_direct(std::span<const double> d, int L, std::span<double> out,
                            std::span<const double> table = {});
void lattice_to_mode_fft(std::span<const double> d, int L, std::span<double> out);
void lattice_to_mode(std::span<const double> d, int L, std::span<double> out,
                     std::span<const double> table = {});

/// cos(2 pi j / L) for j = 0..L-1; indexing by (m*l) mod L avoids argument
/// growth in direct sums.
std::vector<double> cosine_table(int L);

}  // namespace chainent
