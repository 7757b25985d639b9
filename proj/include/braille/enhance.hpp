#pragma once

#include "braille/image.hpp"

namespace braille {

/// Control points of a piecewise-linear intensity map through
/// (0,0), (r1,s1), (r2,s2), (255,255).
struct PiecewiseParams {
  int r1 = 0;
  int s1 = 0;
  int r2 = 255;
  int s2 = 255;
};

/// Signed Prewitt responses. gx grows with intensity rising to the right,
/// gy with intensity rising downwards.
struct GradientPair {
  Grid<int> gx;
  Grid<int> gy;
};

enum class MorphMode { open, close };

GrayImage contrast_stretch(const GrayImage& img, const PiecewiseParams& p);

/// Maps [low, high] linearly onto [0,255]; values outside saturate.
GrayImage intensity_adjust(const GrayImage& img, int low, int high);

/// Separable Gaussian blur, kernel radius ceil(3 sigma), edge replication.
GrayImage gaussian_smooth(const GrayImage& img, double sigma);

/// Grayscale min / max over a Euclidean disk of the given radius.
GrayImage erode(const GrayImage& img, int radius);
GrayImage dilate(const GrayImage& img, int radius);

GrayImage morph_open(const GrayImage& img, int radius);
GrayImage morph_close(const GrayImage& img, int radius);
GrayImage morph_filter(const GrayImage& img, int radius, MorphMode mode);

GradientPair prewitt_gradients(const GrayImage& img);

double max_gradient_magnitude(const GradientPair& g);

/// Foreground where the gradient magnitude strictly exceeds `threshold`.
BinaryImage edge_map(const GradientPair& g, double threshold);

/// Bounding box of the foreground that is not 8-connected to the image
/// border, grown by `margin` and clamped to the image.
Rect autocrop_content(const BinaryImage& bin, int margin);

}  // namespace braille
