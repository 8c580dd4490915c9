#pragma once

#include "fieldmap/grid.hpp"

#include <cstdint>

namespace fieldmap {

/// SplitMix64: portable 64-bit generator with a documented state update, so
/// identical seeds reproduce bit-identical scenes on every platform.
///   state += 0x9E3779B97F4A7C15
///   z = state; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
///   z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31; return z
struct SplitMix64 {
    uint64_t state = 0;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next();

    /// Uniform double in [0,1): top 53 bits scaled by 2^-53.
    double uniform01();

    /// Approximate standard normal via Irwin-Hall (sum of 12 uniforms minus
    /// 6). Uses only IEEE add/mul, which keeps the stream bit-exact across
    /// platforms; libm-based transforms do not.
    double gaussian();
};

/// Deterministic synthetic scene description.
struct SceneSpec {
    uint64_t rng_seed = 0;
    int width = 256;
    int height = 256;
    int n_parcels = 32;
    int boundary_width = 2;      // pixels
    double noise_sigma = 0.0;    // score units, clamped to [0, 0.5]
    double wheat_fraction = 0.5; // fraction of parcels assigned wheat
    double pixel_size = 10.0;    // map-units

    void validate() const; // throws SpecInvalid
};

struct SceneData {
    LabelRaster truth_labels;        // Voronoi parcels, labels 1..n_parcels
    BinaryMask truth_wheat;          // pixels of wheat parcels
    ProbabilityRaster field_scores;
    ProbabilityRaster boundary_scores;
    ProbabilityRaster wheat_scores;
};

/// Pixels within `width` of a parcel edge. An edge pixel has a 4-neighbor
/// with a different label or sits on the raster border.
BinaryMask boundary_band(const LabelRaster& labels, int width);

/// Generates a scene: parcels are the Voronoi cells of n_parcels distinct
/// seeded sites (integer distance, ties to the lowest site index). Boundary
/// proximity ramps linearly from 1 at an edge pixel to 0 at distance
/// 3 * boundary_width; field scores are 1 - proximity, boundary scores are
/// the complement, wheat scores are 1 on wheat parcels and 0 elsewhere. All
/// three are degraded with clamped Irwin-Hall Gaussian noise of scale
/// noise_sigma. Identical specs produce bit-identical outputs.
SceneData generate(const SceneSpec& spec);

} // namespace fieldmap
