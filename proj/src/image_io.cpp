#include "scrollmat/image_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "scrollmat/errors.hpp"

namespace scrollmat {

Raster load_image(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        fail("decode", "image file does not exist: " + path.string());
    }
    cv::Mat bgr;
    try {
        bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
    } catch (const cv::Exception& e) {
        fail("decode", "cannot decode " + path.string() + ": " + e.what());
    }
    if (bgr.empty()) {
        fail("decode", "cannot decode " + path.string() +
                           ": unreadable file or unsupported format");
    }
    Raster out(bgr.cols, bgr.rows, Rgb{}, path.stem().string());
    for (int y = 0; y < bgr.rows; ++y) {
        const auto* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < bgr.cols; ++x) {
            out.at(x, y) = Rgb{row[x][2], row[x][1], row[x][0]};
        }
    }
    return out;
}

BinaryMask load_mask(const std::filesystem::path& path, MaskKind kind) {
    if (!std::filesystem::exists(path)) {
        fail("decode", "mask file does not exist: " + path.string());
    }
    cv::Mat gray;
    try {
        gray = cv::imread(path.string(), cv::IMREAD_GRAYSCALE);
    } catch (const cv::Exception& e) {
        fail("decode", "cannot decode " + path.string() + ": " + e.what());
    }
    if (gray.empty()) {
        fail("decode", "cannot decode " + path.string() +
                           ": unreadable file or unsupported format");
    }
    BinaryMask out(gray.cols, gray.rows, kind);
    for (int y = 0; y < gray.rows; ++y) {
        const auto* row = gray.ptr<std::uint8_t>(y);
        for (int x = 0; x < gray.cols; ++x) {
            if (row[x] != 0) out.set(x, y, true);
        }
    }
    return out;
}

void save_image(const Raster& r, const std::filesystem::path& path) {
    cv::Mat bgr(r.height(), r.width(), CV_8UC3);
    for (int y = 0; y < r.height(); ++y) {
        auto* row = bgr.ptr<cv::Vec3b>(y);
        for (int x = 0; x < r.width(); ++x) {
            const Rgb p = r.at(x, y);
            row[x] = cv::Vec3b(p.b, p.g, p.r);
        }
    }
    if (!cv::imwrite(path.string(), bgr)) {
        fail("io", "cannot write image " + path.string());
    }
}

void save_mask(const BinaryMask& m, const std::filesystem::path& path) {
    cv::Mat gray(m.height(), m.width(), CV_8UC1);
    for (int y = 0; y < m.height(); ++y) {
        auto* row = gray.ptr<std::uint8_t>(y);
        for (int x = 0; x < m.width(); ++x) {
            row[x] = m.at(x, y) ? 255 : 0;
        }
    }
    if (!cv::imwrite(path.string(), gray)) {
        fail("io", "cannot write mask " + path.string());
    }
}

} // namespace scrollmat
