#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "scrollmat/image.hpp"
#include "scrollmat/segmentation.hpp"
#include "scrollmat/types.hpp"

namespace scrollmat {

// Unnormalized forward DFT of a patch, DC at index (0,0), row-major.
struct ComplexSpectrum {
    int width = 0;
    int height = 0;
    std::vector<std::complex<double>> values;

    std::complex<double> at(int u, int v) const {
        return values[static_cast<std::size_t>(v) * width + u];
    }
    std::complex<double>& at(int u, int v) {
        return values[static_cast<std::size_t>(v) * width + u];
    }
};

// log(1 + |F|) of a center-shifted spectrum; DC sits at (floor(w/2), floor(h/2)).
struct LogSpectrum {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
};

// One descriptor of one sample patch, tagged with its origin.
struct FeatureVector {
    FeatureKind kind = FeatureKind::grid_mean;
    std::vector<double> values;
    std::string fragment_id;
    int sample_index = 0;
    Material label = Material::parchment;
    ImageSet set = ImageSet::color;
};

struct SpectralConfig {
    int grid_n = 7;
    int ring_count = 6;
    int bin_count = 19;
    int patch = 256;
};

// F(u,v) = sum_xy f(x,y) * exp(-2*pi*i*(u*x/W + v*y/H)). Power-of-two sides
// go through a radix-2 FFT; other sizes fall back to the direct transform.
ComplexSpectrum dft2(const SaturationMatrix& m);

LogSpectrum log_spectrum(const ComplexSpectrum& s);

// Split the spectrum into n x n contiguous cells (cell sizes as equal as
// possible, larger cells first) and take the mean or population standard
// deviation of each, row-major. Length n^2.
FeatureVector grid_features(const LogSpectrum& ls, int n, CellStat stat);

// Mean or population sd over concentric rings around the shifted DC bin.
// Ring j gathers bins with radius in [j*R/rings, (j+1)*R/rings) where
// R = min(W,H)/2; bins beyond R (the corners) belong to no ring.
FeatureVector ring_features(const LogSpectrum& ls, int rings, CellStat stat);

// Histogram of phase angles over `bins` equal slices of [0, 2*pi), each bin
// weighted by log(1 + |F|) and the total normalized to one.
FeatureVector weighted_bin_features(const ComplexSpectrum& s, int bins = 19);

// All five descriptors of one patch, tagged with the patch's identity.
// Order: grid_mean, grid_sd, ring_mean, ring_sd, weighted_bin.
std::array<FeatureVector, 5> featurize_patch(const SamplePatch& p, const SpectralConfig& cfg);

} // namespace scrollmat
