#pragma once

#include "invlab/grid.hpp"

namespace invlab::spectral {

/// Forward DFT normalised so that a constant field c maps to c(0,0) = c.
/// Throws NonFiniteError naming the first bad node.
Spectrum forward(const Field& f);

/// Inverse DFT. Rejects spectra that are not Hermitian-symmetric (relative
/// defect above 1e-9), since those would synthesise complex nodal values.
Field inverse(const Spectrum& s);

/// Inverse DFT reading only the k2 >= 0 half; the caller guarantees Hermitian
/// symmetry (e.g. the spectrum came from forward() through symmetric operators).
Field inverse_unchecked(const Spectrum& s);

/// Spectral derivatives; the Nyquist mode of the differentiated direction is
/// zeroed.
Spectrum ddx1(const Spectrum& s);
Spectrum ddx2(const Spectrum& s);

/// Multiplication by -|κ|^2.
Spectrum laplacian(const Spectrum& s);

/// Solves Δψ = ω in the zero-mean gauge. ω must have zero mean (1e-10).
Spectrum poisson_solve(const Spectrum& omega);

/// Solves -∂x2 ψ = θ with ψ(k1, 0) = 0. Every k1 column of θ must have a
/// vanishing k2 = 0 coefficient (1e-10). The k2 Nyquist row of the result is
/// zero.
Spectrum antideriv_x2(const Spectrum& theta);

/// Two-thirds rule: zero every coefficient with |k1| > nx/3 or |k2| > ny/3.
Spectrum dealias(const Spectrum& s);
void dealias_in_place(Spectrum& s);

/// Largest |c(k1, 0)| over k1; the obstruction to antideriv_x2.
double x2_mean_defect(const Spectrum& s);

}  // namespace invlab::spectral
