// Python bindings: numpy-array views of the core operations. Arrays follow
// numpy conventions (row-major, image shape (H, W, 3), matrix shape (H, W)).
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <scrollmat/classify.hpp>
#include <scrollmat/errors.hpp>
#include <scrollmat/image.hpp>
#include <scrollmat/inpaint.hpp>
#include <scrollmat/segmentation.hpp>
#include <scrollmat/spectral.hpp>
#include <scrollmat/synth.hpp>
#include <scrollmat/types.hpp>

namespace py = pybind11;
using namespace scrollmat;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using BoolArray = py::array_t<bool, py::array::c_style | py::array::forcecast>;
using ByteArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

SaturationMatrix matrix_from(const DoubleArray& a) {
    if (a.ndim() != 2) fail("invalid_argument", "expected a 2-d float array");
    SaturationMatrix m;
    m.height = static_cast<int>(a.shape(0));
    m.width = static_cast<int>(a.shape(1));
    m.values.assign(a.data(), a.data() + a.size());
    return m;
}

py::array_t<double> matrix_to(const SaturationMatrix& m) {
    py::array_t<double> out({m.height, m.width});
    std::copy(m.values.begin(), m.values.end(), out.mutable_data());
    return out;
}

py::array_t<double> log_to(const LogSpectrum& ls) {
    py::array_t<double> out({ls.height, ls.width});
    std::copy(ls.values.begin(), ls.values.end(), out.mutable_data());
    return out;
}

LogSpectrum log_from(const DoubleArray& a) {
    if (a.ndim() != 2) fail("invalid_argument", "expected a 2-d float array");
    LogSpectrum ls;
    ls.height = static_cast<int>(a.shape(0));
    ls.width = static_cast<int>(a.shape(1));
    ls.values.assign(a.data(), a.data() + a.size());
    return ls;
}

BinaryMask mask_from(const BoolArray& a, MaskKind kind) {
    if (a.ndim() != 2) fail("invalid_argument", "expected a 2-d bool array");
    const int h = static_cast<int>(a.shape(0));
    const int w = static_cast<int>(a.shape(1));
    BinaryMask m(w, h, kind);
    const bool* data = a.data();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) m.set(x, y, data[static_cast<std::size_t>(y) * w + x]);
    }
    return m;
}

py::array_t<bool> mask_to(const BinaryMask& m) {
    py::array_t<bool> out({m.height(), m.width()});
    bool* data = out.mutable_data();
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            data[static_cast<std::size_t>(y) * m.width() + x] = m.at(x, y);
        }
    }
    return out;
}

Raster raster_from(const ByteArray& a) {
    if (a.ndim() != 3 || a.shape(2) != 3) {
        fail("invalid_argument", "expected an (H, W, 3) uint8 array");
    }
    const int h = static_cast<int>(a.shape(0));
    const int w = static_cast<int>(a.shape(1));
    Raster r(w, h);
    const std::uint8_t* data = a.data();
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t base = (static_cast<std::size_t>(y) * w + x) * 3;
            r.at(x, y) = {data[base], data[base + 1], data[base + 2]};
        }
    }
    return r;
}

py::array_t<std::uint8_t> raster_to(const Raster& r) {
    py::array_t<std::uint8_t> out({r.height(), r.width(), 3});
    std::uint8_t* data = out.mutable_data();
    for (int y = 0; y < r.height(); ++y) {
        for (int x = 0; x < r.width(); ++x) {
            const Rgb p = r.at(x, y);
            const std::size_t base = (static_cast<std::size_t>(y) * r.width() + x) * 3;
            data[base] = p.r;
            data[base + 1] = p.g;
            data[base + 2] = p.b;
        }
    }
    return out;
}

py::array_t<std::complex<double>> spectrum_to(const ComplexSpectrum& s) {
    py::array_t<std::complex<double>> out({s.height, s.width});
    std::copy(s.values.begin(), s.values.end(), out.mutable_data());
    return out;
}

CellStat parse_stat(const std::string& name) {
    if (name == "mean") return CellStat::mean;
    if (name == "sd") return CellStat::sd;
    fail("invalid_argument", "stat must be \"mean\" or \"sd\", got \"" + name + "\"");
}

py::array_t<double> values_to(const std::vector<double>& v) {
    py::array_t<double> out(static_cast<py::ssize_t>(v.size()));
    std::copy(v.begin(), v.end(), out.mutable_data());
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Writing-surface classification core: spectral texture features "
              "over manuscript fragment images.";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            const std::string text = e.kind() + ": " + e.what();
            if (e.kind() == "invalid_argument" || e.kind() == "dimension_mismatch") {
                PyErr_SetString(PyExc_ValueError, text.c_str());
            } else {
                PyErr_SetString(PyExc_RuntimeError, text.c_str());
            }
        }
    });

    m.def("saturation",
          [](int r, int g, int b) {
              if (r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255) {
                  fail("invalid_argument", "channel values must lie in [0, 255]");
              }
              return saturation(Rgb{static_cast<std::uint8_t>(r), static_cast<std::uint8_t>(g),
                                    static_cast<std::uint8_t>(b)});
          },
          py::arg("r"), py::arg("g"), py::arg("b"),
          "Hexcone saturation (max - min) / max of one RGB triple; 0 for black.");

    m.def("to_saturation",
          [](const ByteArray& image) { return matrix_to(to_saturation(raster_from(image))); },
          py::arg("image"), "Per-pixel saturation of an (H, W, 3) uint8 image.");

    m.def("dilate_mask",
          [](const BoolArray& mask) {
              return mask_to(dilate_mask(mask_from(mask, MaskKind::text)));
          },
          py::arg("mask"), "One round of 3x3 dilation of a boolean mask.");

    m.def("largest_inscribed_rectangle",
          [](const BoolArray& mask) {
              const Rect r = largest_inscribed_rectangle(mask_from(mask, MaskKind::fragment));
              return py::make_tuple(r.x, r.y, r.w, r.h);
          },
          py::arg("mask"),
          "Largest all-true axis-aligned rectangle as (x, y, w, h).");

    m.def("sample_positions",
          [](int x, int y, int w, int h, int per_side, int patch) {
              std::vector<std::pair<int, int>> out;
              for (const Point& p : sample_positions(Rect{x, y, w, h}, per_side, patch)) {
                  out.emplace_back(p.x, p.y);
              }
              return out;
          },
          py::arg("x"), py::arg("y"), py::arg("w"), py::arg("h"), py::arg("per_side") = 5,
          py::arg("patch") = 256,
          "Row-major top-left corners of a per_side x per_side patch grid.");

    m.def("dft2", [](const DoubleArray& a) { return spectrum_to(dft2(matrix_from(a))); },
          py::arg("values"),
          "Unnormalized 2-d DFT; matches numpy.fft.fft2 on the same array.");

    m.def("log_spectrum",
          [](const DoubleArray& a) { return log_to(log_spectrum(dft2(matrix_from(a)))); },
          py::arg("values"),
          "log(1 + |F|) of the center-shifted spectrum of a 2-d array.");

    m.def("grid_features",
          [](const DoubleArray& ls, int n, const std::string& stat) {
              return values_to(grid_features(log_from(ls), n, parse_stat(stat)).values);
          },
          py::arg("log_spectrum"), py::arg("n") = 7, py::arg("stat") = "mean",
          "Per-cell mean or sd over an n x n split of a log spectrum.");

    m.def("ring_features",
          [](const DoubleArray& ls, int rings, const std::string& stat) {
              return values_to(ring_features(log_from(ls), rings, parse_stat(stat)).values);
          },
          py::arg("log_spectrum"), py::arg("rings") = 6, py::arg("stat") = "mean",
          "Per-ring mean or sd over concentric rings around the DC bin.");

    m.def("weighted_bin_features",
          [](const DoubleArray& patch, int bins) {
              return values_to(weighted_bin_features(dft2(matrix_from(patch)), bins).values);
          },
          py::arg("patch"), py::arg("bins") = 19,
          "Magnitude-weighted phase histogram of a patch, normalized to one.");

    m.def("featurize",
          [](const DoubleArray& patch, int grid_n, int rings, int bins) {
              SamplePatch sample;
              sample.values = matrix_from(patch);
              const SpectralConfig cfg{grid_n, rings, bins,
                                       static_cast<int>(sample.values.width)};
              py::dict out;
              for (FeatureVector& fv : featurize_patch(sample, cfg)) {
                  out[py::str(to_string(fv.kind))] = values_to(fv.values);
              }
              return out;
          },
          py::arg("patch"), py::arg("grid_n") = 7, py::arg("rings") = 6, py::arg("bins") = 19,
          "All five descriptors of one square patch, keyed by kind name.");

    m.def("f1_score", &f1_score, py::arg("precision"), py::arg("recall"),
          "Balanced F1; 0 when both terms are 0.");

    m.def("fill_regions",
          [](const ByteArray& image, const BoolArray& fill, int patch_size, int workers) {
              Raster target = raster_from(image);
              BinaryMask fill_mask = mask_from(fill, MaskKind::fill);
              BinaryMask source(fill_mask.width(), fill_mask.height(), MaskKind::fragment);
              for (int y = 0; y < source.height(); ++y) {
                  for (int x = 0; x < source.width(); ++x) {
                      source.set(x, y, !fill_mask.at(x, y));
                  }
              }
              const FillJob job{std::move(target), std::move(fill_mask), std::move(source),
                                patch_size, workers};
              return raster_to(fill_regions(job));
          },
          py::arg("image"), py::arg("fill"), py::arg("patch_size") = 9, py::arg("workers") = 1,
          "Exemplar-fill the true pixels of `fill`; the rest is source material.");

    m.def("generate",
          [](const std::string& kind, int size, std::uint64_t seed, int stripe_period,
             double noise_scale, double hole_fraction, double text_coverage) {
              SynthSpec spec;
              spec.kind = parse_synth_kind(kind);
              spec.size = size;
              spec.seed = seed;
              spec.stripe_period = stripe_period;
              spec.noise_scale = noise_scale;
              spec.hole_fraction = hole_fraction;
              spec.text_coverage = text_coverage;
              const SynthResult result = generate(spec);
              py::dict out;
              out["image"] = raster_to(result.image);
              out["fragment_mask"] = mask_to(result.fragment_mask);
              out["text_mask"] = mask_to(result.text_mask);
              out["ground_truth"] = raster_to(result.ground_truth);
              return out;
          },
          py::arg("kind"), py::arg("size") = 640, py::arg("seed") = 1,
          py::arg("stripe_period") = 16, py::arg("noise_scale") = 24.0,
          py::arg("hole_fraction") = 0.0, py::arg("text_coverage") = 0.0,
          "Deterministic synthetic fragment: image, masks and ground truth.");
}
